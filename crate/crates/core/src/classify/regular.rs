use std::sync::Arc;

use serde::Serialize;

use super::{Verdict, WitnessEntry};
use crate::error::{Error, Result};
use crate::finmod::{annihilator, FiniteModule};
use crate::sets;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityElements {
    /// `a` with `a − a² ∈ ann(E)`.
    pub weak_idempotents: Vec<usize>,
    /// `a` with `aE = a²E`.
    pub e_vn_regular: Vec<usize>,
}

pub fn module_regularity_elements(e: &Arc<FiniteModule>) -> RegularityElements {
    let r = e.ring();
    let ann = annihilator(e, &sets::full(e.order()));
    RegularityElements {
        weak_idempotents: r.elements().filter(|&a| ann.contains(r.sub(a, r.mul(a, a)))).collect(),
        e_vn_regular: r.elements().filter(|&a| e.scaled(a) == e.scaled(r.mul(a, a))).collect(),
    }
}

/// Every `e` admits `a` with `Ae = aE = a²E`.
pub fn is_vn_regular_module(e: &Arc<FiniteModule>) -> Verdict {
    let r = e.ring();
    let scaled: Vec<_> = r.elements().map(|a| e.scaled(a)).collect();
    let mut witness = Vec::new();
    for x in e.elements() {
        let ae = e.cyclic_set(x);
        let found = r.elements().find(|&a| scaled[a] == ae && scaled[r.mul(a, a)] == ae);
        match found {
            Some(a) => witness.push(WitnessEntry {
                subject: e.name(x).to_string(),
                annihilator: None,
                ideal: None,
                scalar: Some(r.name(a).to_string()),
            }),
            None => return Verdict::fails(e.name(x), format!("no a with aE = a²E = A·{}", e.name(x))),
        }
    }
    Verdict::holds(witness)
}

/// Every `e` admits a weak idempotent `a` with `ann(e)E = aE`.
pub fn is_baer_module(e: &Arc<FiniteModule>) -> Verdict {
    let r = e.ring();
    let weak = module_regularity_elements(e).weak_idempotents;
    let whole = sets::full(e.order());
    let mut witness = Vec::new();
    for x in e.elements() {
        let ann = annihilator(e, &sets::from_iter(e.order(), [x]));
        let target = e.ideal_times(ann.elements(), &whole);
        match weak.iter().find(|&&a| e.scaled(a) == target) {
            Some(&a) => witness.push(WitnessEntry {
                subject: e.name(x).to_string(),
                annihilator: Some(ann),
                ideal: None,
                scalar: Some(r.name(a).to_string()),
            }),
            None => {
                return Verdict::fails(
                    e.name(x),
                    format!(
                        "ann({}) = {ann} gives ann(e)E = {{{}}}, not aE for any weak idempotent a",
                        e.name(x),
                        e.names_of(&target).join(", ")
                    ),
                )
            }
        }
    }
    Verdict::holds(witness)
}

/// Both readings of "prime module": the zero submodule is prime, and
/// `ann(V) = ann(E)` for every nonzero submodule (checked on cyclic ones, which
/// suffices because `ann(V)` is the meet of `ann(v)` over `v ∈ V`).
pub fn prime_module_characterizations(e: &Arc<FiniteModule>) -> Result<(bool, bool)> {
    if e.is_zero() {
        return Err(Error::Degenerate("prime module test on the zero module".into()));
    }
    let zero = crate::finmod::Submodule::zero(e);
    let by_zero = crate::finmod::is_prime_submodule(&zero);
    let ann_e = annihilator(e, &sets::full(e.order()));
    let by_ann = e
        .nonzero()
        .all(|x| annihilator(e, &sets::from_iter(e.order(), [x])) == ann_e);
    Ok((by_zero, by_ann))
}

pub fn is_prime_module(e: &Arc<FiniteModule>) -> Result<Verdict> {
    let (by_zero, by_ann) = prime_module_characterizations(e)?;
    assert_eq!(
        by_zero,
        by_ann,
        "the two prime-module characterizations disagree on {}",
        e.descriptor()
    );
    if by_ann {
        return Ok(Verdict::holds(Vec::new()));
    }
    let ann_e = annihilator(e, &sets::full(e.order()));
    let x = e
        .nonzero()
        .find(|&x| annihilator(e, &sets::from_iter(e.order(), [x])) != ann_e)
        .expect("a failing element exists");
    let ann_x = annihilator(e, &sets::from_iter(e.order(), [x]));
    Ok(Verdict::fails(
        e.name(x),
        format!("ann(A·{}) = {ann_x} differs from ann(E) = {ann_e}", e.name(x)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_module;
    use crate::finmod::construct_module;

    fn build(text: &str) -> Arc<FiniteModule> {
        construct_module(&parse_module(text).unwrap()).unwrap()
    }

    const EX1: &str = "(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))";

    #[test]
    fn weak_idempotents() {
        let r = module_regularity_elements(&build(EX1));
        assert_eq!(r.weak_idempotents, vec![0, 1, 4, 5]);
        let r = module_regularity_elements(&build("(self (Z 6))"));
        assert_eq!(r.weak_idempotents, vec![0, 1, 3, 4]);
        assert!(r.e_vn_regular.contains(&1));
    }

    #[test]
    fn vn_regular_examples() {
        assert!(is_vn_regular_module(&build("(cyclic (Z 4) (ideal 2))")).holds);
        assert!(!is_vn_regular_module(&build(EX1)).holds);
        assert!(!is_vn_regular_module(&build("(free (Z 2) 2)")).holds);
    }

    #[test]
    fn baer_examples() {
        assert!(!is_baer_module(&build(EX1)).holds);
        assert!(is_baer_module(&build("(free (Z 2) 2)")).holds);
        assert!(is_baer_module(&build("(self (Z 6))")).holds);
    }

    #[test]
    fn prime_module_examples() {
        assert!(is_prime_module(&build("(free (Z 2) 2)")).unwrap().holds);
        assert!(!is_prime_module(&build(EX1)).unwrap().holds);
        assert!(is_prime_module(&build("(cyclic (Z 4) (ideal 2))")).unwrap().holds);
        let zero = build("(quot (self (Z 4)) (sub {1}))");
        assert!(matches!(is_prime_module(&zero), Err(Error::Degenerate(_))));
    }
}

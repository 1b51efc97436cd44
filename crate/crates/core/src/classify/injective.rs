use std::sync::Arc;

use serde::Serialize;

use super::Verdict;
use crate::error::Result;
use crate::finmod::{annihilator, enumerate_homs, FiniteModule, Submodule};
use crate::finring::{classify_ideal, enumerate_ideals, FiniteRing, Ideal, DEFAULT_IDEAL_CAP};
use crate::sets;

/// Injectivity over the module's own ring by the Baer criterion: every hom
/// `I → E` from an ideal must be `i ↦ i·x` for some `x ∈ E`.
pub fn is_injective_baer_criterion(e: &Arc<FiniteModule>) -> Result<Verdict> {
    let ring = e.ring();
    let self_mod = FiniteModule::self_module(ring);
    for ideal in enumerate_ideals(ring, DEFAULT_IDEAL_CAP)? {
        let as_module = FiniteModule::submodule_module(
            &Submodule::try_from_set(&self_mod, ideal.elements().clone()).expect("ideal is a submodule"),
        );
        let (_, embed) = as_module.sub_parent().expect("built from a submodule");
        let embed = embed.to_vec();
        for hom in enumerate_homs(&as_module, e)? {
            let extends = e
                .elements()
                .any(|x| embed.iter().enumerate().all(|(k, &i)| hom.apply(k) == e.act(i, x)));
            if !extends {
                let gens = Submodule::whole(&as_module).generating_set();
                let rule: Vec<String> = gens
                    .iter()
                    .map(|&g| format!("{} ↦ {}", ring.name(embed[g]), e.name(hom.apply(g))))
                    .collect();
                return Ok(Verdict::fails(
                    format!("{ideal}: {}", rule.join(", ")),
                    format!(
                        "the hom {} from the ideal {ideal} has no extension to {}",
                        rule.join(", "),
                        ring.descriptor()
                    ),
                ));
            }
        }
    }
    Ok(Verdict::holds(Vec::new()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedPrime {
    pub prime: Ideal,
    /// A nonzero element whose annihilator is `prime`.
    pub witness: String,
    #[serde(skip)]
    pub witness_index: usize,
}

/// `Ass_A(E)`, ordered by size and then by element list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssSet {
    pub primes: Vec<AssociatedPrime>,
}

impl AssSet {
    pub fn ideals(&self) -> Vec<&Ideal> {
        self.primes.iter().map(|p| &p.prime).collect()
    }
}

pub fn ass(e: &Arc<FiniteModule>) -> AssSet {
    let ring = e.ring();
    let mut primes: Vec<AssociatedPrime> = Vec::new();
    for x in e.nonzero() {
        let ann = annihilator(e, &sets::from_iter(e.order(), [x]));
        if primes.iter().any(|p| p.prime == ann) {
            continue;
        }
        if classify_ideal(ring, &ann).is_prime {
            primes.push(AssociatedPrime {
                prime: ann,
                witness: e.name(x).to_string(),
                witness_index: x,
            });
        }
    }
    primes.sort_by(|a, b| {
        a.prime
            .len()
            .cmp(&b.prime.len())
            .then_with(|| a.prime.members().cmp(&b.prime.members()))
    });
    AssSet { primes }
}

/// `Ass(A)`, the associated primes of `A` over itself.
pub fn ass_ring(ring: &Arc<FiniteRing>) -> AssSet {
    ass(&FiniteModule::self_module(ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_module;
    use crate::finmod::construct_module;

    fn build(text: &str) -> Arc<FiniteModule> {
        construct_module(&parse_module(text).unwrap()).unwrap()
    }

    #[test]
    fn baer_criterion_examples() {
        assert!(is_injective_baer_criterion(&build("(self (Z 4))")).unwrap().holds);
        let v = is_injective_baer_criterion(&build("(cyclic (Z 4) (ideal 2))")).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.unwrap().subject, "{0, 2}: 2 ↦ 1");
        assert!(is_injective_baer_criterion(&build("(self (Z 2))")).unwrap().holds);
    }

    #[test]
    fn associated_primes() {
        let a = ass_ring(&FiniteRing::integers_mod(12).unwrap());
        let rows: Vec<(Vec<usize>, &str)> = a
            .primes
            .iter()
            .map(|p| (p.prime.members(), p.witness.as_str()))
            .collect();
        assert_eq!(rows, vec![(vec![0, 3, 6, 9], "4"), (vec![0, 2, 4, 6, 8, 10], "6")]);
        let a = ass(&build("(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))"));
        assert_eq!(
            a.ideals().iter().map(|i| i.members()).collect::<Vec<_>>(),
            vec![vec![0, 2, 4, 6]]
        );
        let a = ass(&build("(free (Z 2) 2)"));
        assert_eq!(
            a.ideals().iter().map(|i| i.members()).collect::<Vec<_>>(),
            vec![vec![0]]
        );
    }
}

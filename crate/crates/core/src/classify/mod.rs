//! Module-level classifiers, centred on the annihilator multiplication decision.

mod injective;
mod regular;

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::finmod::{annihilator, enumerate_submodules, FiniteModule, Submodule};
use crate::finring::Ideal;
use crate::sets::{self, ElemSet};

pub use injective::{ass, ass_ring, is_injective_baer_criterion, AssSet, AssociatedPrime};
pub use regular::{
    is_baer_module, is_prime_module, is_vn_regular_module, module_regularity_elements, prime_module_characterizations,
    RegularityElements,
};

/// One row of a witness map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    /// The element (or first element) the row speaks for.
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<Ideal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Ideal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub subject: String,
    pub explanation: String,
    /// For annihilator multiplication: the candidate set `C` of annihilators `ann(IE)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<Ideal>>,
}

/// Outcome of a classifier: a witness when it holds, a checkable counterexample when not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub(crate) fn holds(witness: Vec<WitnessEntry>) -> Self {
        Verdict {
            holds: true,
            witness: Some(witness),
            counterexample: None,
        }
    }

    pub(crate) fn fails(subject: impl Into<String>, explanation: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            witness: None,
            counterexample: Some(Counterexample {
                subject: subject.into(),
                explanation: explanation.into(),
                candidates: None,
            }),
        }
    }
}

fn sort_sets(v: &mut [ElemSet]) {
    v.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| sets::members(a).cmp(&sets::members(b)))
    });
}

/// `ann(aE)` for every ring element `a`.
pub(crate) fn scaled_annihilators(e: &Arc<FiniteModule>) -> Vec<ElemSet> {
    e.ring()
        .elements()
        .map(|a| annihilator(e, &e.scaled(a)).elements().clone())
        .collect()
}

/// The set `C` of all `ann(IE)`: the values `ann(aE)` closed under intersection,
/// since `ann((Σ Aa_i)E) = ∩ ann(a_i E)`. Largest first.
pub fn annihilator_candidates(e: &Arc<FiniteModule>) -> Vec<Ideal> {
    candidate_sets(&scaled_annihilators(e))
        .into_iter()
        .rev()
        .map(|s| Ideal::from_set(e.ring(), s))
        .collect()
}

fn candidate_sets(scaled: &[ElemSet]) -> Vec<ElemSet> {
    let mut c: Vec<ElemSet> = Vec::new();
    for s in scaled {
        if !c.contains(s) {
            c.push(s.clone());
        }
    }
    let mut cursor = 0;
    while cursor < c.len() {
        for j in 0..cursor {
            let meet = sets::intersect(&c[cursor], &c[j]);
            if !c.contains(&meet) {
                c.push(meet);
            }
        }
        cursor += 1;
    }
    sort_sets(&mut c);
    c
}

/// Decides whether every `ann(e)` equals some `ann(IE)`.
///
/// The witness map has one row per distinct annihilator `J`, giving the largest
/// `I` with `ann(IE) = J`, namely `{a : J ⊆ ann(aE)}`. The one exception is
/// `J = A`, reported with the zero ideal (any `I ⊆ ann(E)` works there).
pub fn is_annihilator_multiplication(e: &Arc<FiniteModule>) -> Verdict {
    let ring = e.ring();
    let scaled = scaled_annihilators(e);
    let c = candidate_sets(&scaled);
    let mut seen: Vec<ElemSet> = Vec::new();
    let mut witness = Vec::new();
    for x in e.elements() {
        let ann = annihilator(e, &sets::from_iter(e.order(), [x]));
        if seen.contains(ann.elements()) {
            continue;
        }
        if !c.contains(ann.elements()) {
            let candidates: Vec<Ideal> = c.iter().rev().map(|s| Ideal::from_set(ring, s.clone())).collect();
            let names: Vec<String> = candidates.iter().map(|i| i.to_string()).collect();
            return Verdict {
                holds: false,
                witness: None,
                counterexample: Some(Counterexample {
                    subject: e.name(x).to_string(),
                    explanation: format!(
                        "ann({}) = {} is not ann(IE) for any ideal I; the candidates are {}",
                        e.name(x),
                        ann,
                        names.join(", ")
                    ),
                    candidates: Some(candidates),
                }),
            };
        }
        seen.push(ann.elements().clone());
        let ideal = if ann.len() == ring.order() {
            Ideal::zero(ring)
        } else {
            let set = sets::from_iter(
                ring.order(),
                ring.elements().filter(|&a| ann.elements().is_subset(&scaled[a])),
            );
            Ideal::from_set(ring, set)
        };
        debug_assert_eq!(
            annihilator(e, &e.ideal_times_module(ideal.elements())).elements(),
            ann.elements()
        );
        witness.push(WitnessEntry {
            subject: e.name(x).to_string(),
            annihilator: Some(ann),
            ideal: Some(ideal),
            scalar: None,
        });
    }
    Verdict::holds(witness)
}

/// Decides whether `V = (V :_A E)E` for every submodule `V`.
pub fn is_multiplication(e: &Arc<FiniteModule>) -> Result<Verdict> {
    let subs = enumerate_submodules(e)?;
    Ok(is_multiplication_over(e, &subs))
}

pub(crate) fn is_multiplication_over(e: &Arc<FiniteModule>, subs: &[Submodule]) -> Verdict {
    let whole = sets::full(e.order());
    for v in subs {
        let colon = colon_module(e, v);
        let product = e.ideal_times(&colon, &whole);
        if &product != v.elements() {
            let colon = Ideal::from_set(e.ring(), colon);
            return Verdict::fails(
                v.to_string(),
                format!(
                    "(V:E) = {colon} and (V:E)E = {{{}}} differs from V",
                    e.names_of(&product).join(", ")
                ),
            );
        }
    }
    Verdict::holds(Vec::new())
}

fn colon_module(e: &FiniteModule, v: &Submodule) -> ElemSet {
    let r = e.ring();
    sets::from_iter(
        r.order(),
        r.elements().filter(|&a| e.elements().all(|x| v.contains(e.act(a, x)))),
    )
}

/// Decides whether `V = ann_E(ann(V))` for every submodule `V`.
pub fn is_comultiplication(e: &Arc<FiniteModule>) -> Result<Verdict> {
    let subs = enumerate_submodules(e)?;
    Ok(is_comultiplication_over(e, &subs))
}

pub(crate) fn is_comultiplication_over(e: &Arc<FiniteModule>, subs: &[Submodule]) -> Verdict {
    for v in subs {
        let ann = annihilator(e, v.elements());
        let scalars = ann.members();
        let back = sets::from_iter(
            e.order(),
            e.elements().filter(|&x| scalars.iter().all(|&a| e.act(a, x) == 0)),
        );
        if &back != v.elements() {
            return Verdict::fails(
                v.to_string(),
                format!(
                    "ann(V) = {ann} and ann_E(ann(V)) = {{{}}} differs from V",
                    e.names_of(&back).join(", ")
                ),
            );
        }
    }
    Verdict::holds(Vec::new())
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
    const LOCAL: &str = "(polyquot (Z 2) [x y] {x^2 xy y^2})";

    #[test]
    fn ex1_witness_table() {
        let v = is_annihilator_multiplication(&build(EX1));
        assert!(v.holds);
        let rows: Vec<(Vec<usize>, Vec<usize>)> = v
            .witness
            .unwrap()
            .iter()
            .map(|w| {
                (
                    w.annihilator.as_ref().unwrap().members(),
                    w.ideal.as_ref().unwrap().members(),
                )
            })
            .collect();
        assert!(rows.contains(&(vec![0, 4], (0..8).collect())));
        assert!(rows.contains(&(vec![0, 2, 4, 6], vec![0, 2, 4, 6])));
        assert!(rows.contains(&((0..8).collect(), vec![0])));
        assert_eq!(rows.len(), 3);
    }

    #[test]
    fn tvon_module_fails() {
        let e = build(&format!("(dsum (self {LOCAL}) (cyclic {LOCAL} (ideal x)))"));
        let v = is_annihilator_multiplication(&e);
        assert!(!v.holds);
        let c = v.counterexample.unwrap();
        assert_eq!(c.subject, "<0,1>");
        let cands: Vec<Vec<String>> = c.candidates.unwrap().iter().map(|i| i.element_names()).collect();
        assert_eq!(
            cands,
            vec![
                vec!["0", "1", "x", "1+x", "y", "1+y", "x+y", "1+x+y"],
                vec!["0", "x", "y", "x+y"],
                vec!["0"]
            ]
        );
    }

    #[test]
    fn simple_module_holds() {
        assert!(is_annihilator_multiplication(&build("(cyclic (Z 4) (ideal 2))")).holds);
    }

    #[test]
    fn multiplication_examples() {
        let v = is_multiplication(&build(EX1)).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.unwrap().subject, "{<0,0>, <1,0>}");
        assert!(is_multiplication(&build("(self (Z 12))")).unwrap().holds);
        assert!(!is_multiplication(&build("(free (Z 2) 2)")).unwrap().holds);
    }

    #[test]
    fn comultiplication_examples() {
        assert!(is_comultiplication(&build("(self (Z 4))")).unwrap().holds);
        assert!(!is_comultiplication(&build("(free (Z 2) 2)")).unwrap().holds);
        assert!(!is_comultiplication(&build(EX1)).unwrap().holds);
    }
}

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::corpus::{generate_instances, Corpus, Instance, InstanceBudget};
use super::properties::{canonical_cases, enumerated_cases, HomCase};
use crate::classify::{is_annihilator_multiplication, is_multiplication_over};
use crate::error::{Error, Result};
use crate::finmod::{annihilator, is_classical_one_absorbing, is_classical_prime, Submodule};
use crate::finring::{classify_ideal, classify_ring, enumerate_ideals, DEFAULT_IDEAL_CAP};
use crate::sets;

/// A converse or dropped-hypothesis variant of a property.
#[derive(Debug, Clone, Copy)]
pub struct SearchVariant {
    pub id: &'static str,
    pub statement: &'static str,
}

pub fn search_variants() -> Vec<SearchVariant> {
    vec![
        SearchVariant {
            id: "AM-MULT",
            statement: "annihilator multiplication ⇒ multiplication",
        },
        SearchVariant {
            id: "C1ABS-CPRIME",
            statement: "zero submodule classical 1-absorbing prime ⇒ classical prime",
        },
        SearchVariant {
            id: "PRIME-MAXIMAL-VN",
            statement: "over a vn-regular ring, prime ideals are maximal",
        },
        SearchVariant {
            id: "PDSUM-NEC",
            statement: "annihilator multiplication summands ⇒ annihilator multiplication direct sum, annihilators unrestricted",
        },
        SearchVariant {
            id: "PHOM-NOPRIME",
            statement: "surjection with ann(E) = ann(E') and E annihilator multiplication ⇒ E' annihilator multiplication, kernel unrestricted",
        },
        SearchVariant {
            id: "PHOM-NOANN",
            statement: "injection into an annihilator multiplication module ⇒ annihilator multiplication source, annihilators unrestricted",
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Violation {
    pub instance: String,
    /// `|A|·|E|`, or `|A|` for ring-level variants.
    pub carrier: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchResult {
    pub variant: String,
    pub statement: String,
    pub examined: usize,
    /// Smallest carrier among the violations found (first in corpus order on ties).
    pub minimal: Option<Violation>,
    pub violations: Vec<Violation>,
}

type Probe<'a> = dyn Fn(&Instance) -> Option<String> + Sync + 'a;

fn violation(inst: &Instance, detail: String) -> Violation {
    Violation {
        instance: inst.descriptor.to_string(),
        carrier: inst.carrier(),
        detail,
    }
}

fn am_not_mult(inst: &Instance) -> Option<String> {
    let subs = inst.submodules()?;
    let mult = is_multiplication_over(&inst.module, subs);
    (inst.ann_mult().holds && !mult.holds).then(|| {
        format!(
            "annihilator multiplication but V = {} is not (V:E)E",
            mult.counterexample.map_or_else(String::new, |c| c.subject)
        )
    })
}

fn one_abs_not_prime(inst: &Instance) -> Option<String> {
    let zero = Submodule::zero(&inst.module);
    (is_classical_one_absorbing(&zero) && !is_classical_prime(&zero))
        .then(|| "zero submodule is classical 1-absorbing prime but not classical prime".to_string())
}

fn dsum_necessity(inst: &Instance) -> Option<String> {
    let parts = inst.module.summands()?;
    if !matches!(inst.descriptor, crate::dsl::ast::ModuleExpr::DSum(_)) {
        return None;
    }
    let all_parts = parts.iter().all(|p| is_annihilator_multiplication(p).holds);
    (all_parts && !inst.ann_mult().holds).then(|| {
        let anns: Vec<String> = parts
            .iter()
            .map(|p| annihilator(p, &sets::full(p.order())).to_string())
            .collect();
        format!(
            "summands are annihilator multiplication with annihilators [{}], the sum fails at {}",
            anns.join(", "),
            inst.ann_mult()
                .counterexample
                .as_ref()
                .map_or("?", |c| c.subject.as_str())
        )
    })
}

fn hom_variant(inst: &Instance, corpus: &Corpus, pick: fn(&HomCase) -> bool) -> Option<String> {
    let mut cases = canonical_cases(inst, inst.submodules()?);
    cases.extend(enumerated_cases(inst, corpus).unwrap_or_default());
    cases.into_iter().find(|(_, c)| pick(c)).map(|(label, _)| label)
}

fn drops_prime(c: &HomCase) -> bool {
    c.surjective && c.ann_equal && !c.kernel_prime && c.source_am && !c.target_am
}

fn drops_ann(c: &HomCase) -> bool {
    c.injective && !c.ann_equal && c.target_am && !c.source_am
}

fn prime_not_maximal(corpus: &Corpus) -> (usize, Vec<Violation>) {
    let vn: Vec<_> = corpus.rings.iter().filter(|r| classify_ring(r).is_vn_regular).collect();
    let violations = vn
        .iter()
        .filter_map(|r| {
            let ideals = enumerate_ideals(r, DEFAULT_IDEAL_CAP).ok()?;
            let bad = ideals.iter().find(|i| {
                let c = classify_ideal(r, i);
                c.is_prime && !c.is_maximal
            })?;
            Some(Violation {
                instance: r.descriptor().to_string(),
                carrier: r.order(),
                detail: format!("{bad} is prime but not maximal"),
            })
        })
        .collect();
    (vn.len(), violations)
}

/// Searches the corpus for instances violating a variant. Returns every violation
/// in corpus order and the one with the smallest carrier; minimality is relative
/// to the corpus.
pub fn search_counterexample(variant: &str, budget: &InstanceBudget) -> Result<SearchResult> {
    let corpus = generate_instances(budget)?;
    search_in(variant, &corpus)
}

pub(crate) fn search_in(variant: &str, corpus: &Corpus) -> Result<SearchResult> {
    let v = search_variants()
        .into_iter()
        .find(|v| v.id.eq_ignore_ascii_case(variant))
        .ok_or_else(|| Error::UnknownProperty(variant.to_string()))?;
    let (examined, violations) = if v.id == "PRIME-MAXIMAL-VN" {
        prime_not_maximal(corpus)
    } else {
        let test: Box<Probe> = match v.id {
            "AM-MULT" => Box::new(am_not_mult),
            "C1ABS-CPRIME" => Box::new(one_abs_not_prime),
            "PDSUM-NEC" => Box::new(dsum_necessity),
            "PHOM-NOPRIME" => Box::new(|i: &Instance| hom_variant(i, corpus, drops_prime)),
            "PHOM-NOANN" => Box::new(|i: &Instance| hom_variant(i, corpus, drops_ann)),
            _ => unreachable!("variant list and dispatch agree"),
        };
        let found: Vec<Option<Violation>> = corpus
            .instances
            .par_iter()
            .map(|inst| test(inst).map(|d| violation(inst, d)))
            .collect();
        (corpus.instances.len(), found.into_iter().flatten().collect())
    };
    let minimal = violations
        .iter()
        .enumerate()
        .min_by_key(|(k, w)| (w.carrier, *k))
        .map(|(_, w)| w.clone());
    Ok(SearchResult {
        variant: v.id.to_string(),
        statement: v.statement.to_string(),
        examined,
        minimal,
        violations,
    })
}

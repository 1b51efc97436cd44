//! Executable properties over a generated corpus, with non-vacuity accounting and
//! counterexample search.

mod corpus;
mod properties;
mod search;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dsl::ast::ModuleExpr;
use crate::error::{Error, Result};
use crate::finring::FiniteRing;
use properties::{Ctx, Eval, InstanceFn, RingFn};

pub use corpus::{generate_instances, golden_descriptors, tvon_witness_module, Corpus, Instance, InstanceBudget};
pub use search::{search_counterexample, search_variants, SearchResult, SearchVariant, Violation};

#[derive(Clone, Copy)]
enum Runner {
    Instances(InstanceFn),
    Rings(RingFn),
}

/// A registered property.
#[derive(Clone, Copy)]
pub struct PropertyDef {
    pub id: &'static str,
    pub statement: &'static str,
    /// How far a pass on the corpus reaches.
    pub evidence: &'static str,
    pub min_hypothesis_met: usize,
    runner: Runner,
}

impl std::fmt::Debug for PropertyDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PropertyDef").field("id", &self.id).finish()
    }
}

const EXHAUSTIVE: &str = "exhaustive on each corpus instance";

pub fn registry() -> Vec<PropertyDef> {
    use properties::*;
    let def = |id, statement, evidence, min, runner| PropertyDef {
        id,
        statement,
        evidence,
        min_hypothesis_met: min,
        runner,
    };
    vec![
        def(
            "P1",
            "multiplication, vn-regular, Baer, torsion-free and simple modules are annihilator multiplication",
            EXHAUSTIVE,
            10,
            Runner::Instances(p1),
        ),
        def(
            "P2",
            "in an annihilator multiplication module every ann(V) is ann(IE), with I the sum of the generators' witnesses",
            EXHAUSTIVE,
            1,
            Runner::Instances(p2),
        ),
        def(
            "PDIR",
            "E_1 × ... × E_n over A_1 × ... × A_n is annihilator multiplication iff every factor is",
            EXHAUSTIVE,
            10,
            Runner::Instances(pdir),
        ),
        def(
            "PLOC",
            "localizations of an annihilator multiplication module are annihilator multiplication",
            "every saturated single-element set and prime complement",
            1,
            Runner::Instances(ploc),
        ),
        def(
            "PHOM",
            "with ann(E) = ann(E'), injections pull the property back and surjections with prime kernel push it forward",
            "canonical maps plus enumerated maps to up to three same-ring partners",
            1,
            Runner::Instances(phom),
        ),
        def(
            "PSUB",
            "quotients by prime V with ann(V) = (V:E), submodules with ann(V) = ann(E), and pure essential submodules inherit the property",
            EXHAUSTIVE,
            10,
            Runner::Instances(psub),
        ),
        def(
            "PDSUM",
            "a direct sum of summands with equal annihilators is annihilator multiplication iff every summand is",
            EXHAUSTIVE,
            1,
            Runner::Instances(pdsum),
        ),
        def(
            "P1ABS",
            "if ann(E) is 1-absorbing prime, each nonzero ann(V) is ann(E) or prime, and all ann(V) form a chain",
            EXHAUSTIVE,
            1,
            Runner::Instances(p1abs),
        ),
        def(
            "PCLASS",
            "when zero is classical 1-absorbing prime, each e with ann(e) ≠ ann(E) satisfies abe = 0 ⇒ ae = 0 or be = 0",
            EXHAUSTIVE,
            1,
            Runner::Instances(pclass),
        ),
        def(
            "PPOL",
            "for Armendariz E, the polynomial annihilator identities hold and E is annihilator multiplication iff E[X] is",
            "verified up to the degree bound",
            1,
            Runner::Instances(ppol),
        ),
        def(
            "PTOR",
            "torsion-free iff annihilator multiplication, faithful and over a field",
            EXHAUSTIVE,
            1,
            Runner::Instances(ptor),
        ),
        def(
            "PMULT",
            "a comultiplication module is multiplication iff annihilator multiplication",
            EXHAUSTIVE,
            1,
            Runner::Instances(pmult),
        ),
        def(
            "PINJ",
            "second annihilator multiplication modules are prime, injective over A/ann(E), and their nonzero pure and second submodules coincide",
            EXHAUSTIVE,
            1,
            Runner::Instances(pinj),
        ),
        def(
            "PVON",
            "principal ideal vn-regular iff product of fields, and then A ⊕ A/I is annihilator multiplication for every I",
            "exact on corpus rings; faithful-module clause is bounded evidence",
            1,
            Runner::Rings(pvon),
        ),
        def(
            "PASS",
            "annihilator multiplication: faithful gives Ass(E) ⊆ Ass(A), non-torsion gives Ass(E) = Ass(A)",
            EXHAUSTIVE,
            10,
            Runner::Instances(pass),
        ),
    ]
}

pub fn lookup(id: &str) -> Result<PropertyDef> {
    registry()
        .into_iter()
        .find(|p| p.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownProperty(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureRecord {
    /// Replayable construction of the instance (or ring).
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyReport {
    pub property_id: String,
    pub statement: String,
    pub evidence: String,
    pub instances_tried: usize,
    pub hypothesis_met: usize,
    pub failures: Vec<FailureRecord>,
    pub skipped_degenerate: usize,
    pub skipped_cap: usize,
    /// Instances outside the hypothesis whose conclusion fails too.
    pub necessity_witnesses: Vec<FailureRecord>,
    pub min_hypothesis_met: usize,
    pub gate_passed: bool,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.gate_passed
    }
}

fn record(instance: &str, details: Vec<String>) -> Vec<FailureRecord> {
    details
        .into_iter()
        .map(|detail| FailureRecord {
            instance: instance.to_string(),
            detail,
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub degree_bound: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            degree_bound: crate::polymod::DEFAULT_DEGREE_BOUND,
        }
    }
}

fn evaluate(def: &PropertyDef, corpus: &Corpus, opts: RunOptions) -> Vec<(String, Eval)> {
    let ctx = Ctx {
        corpus,
        degree_bound: opts.degree_bound,
    };
    match def.runner {
        Runner::Instances(f) => corpus
            .instances
            .par_iter()
            .map(|inst| {
                let eval = if inst.module.is_zero() {
                    Eval {
                        degenerate: true,
                        ..Eval::default()
                    }
                } else {
                    f(inst, &ctx)
                };
                (inst.descriptor.to_string(), eval)
            })
            .collect(),
        Runner::Rings(f) => corpus
            .rings
            .par_iter()
            .map(|r: &Arc<FiniteRing>| (r.descriptor().to_string(), f(r, &ctx)))
            .collect(),
    }
}

/// Runs one property over the corpus. Instances are evaluated in parallel and
/// aggregated in corpus order.
pub fn run_property(property_id: &str, corpus: &Corpus, opts: RunOptions) -> Result<PropertyReport> {
    let def = lookup(property_id)?;
    let start = Instant::now();
    let evals = evaluate(&def, corpus, opts);
    let mut report = PropertyReport {
        property_id: def.id.to_string(),
        statement: def.statement.to_string(),
        evidence: if def.id == "PPOL" {
            format!("verified up to degree {}", opts.degree_bound)
        } else {
            def.evidence.to_string()
        },
        instances_tried: evals.len(),
        hypothesis_met: 0,
        failures: Vec::new(),
        skipped_degenerate: 0,
        skipped_cap: 0,
        necessity_witnesses: Vec::new(),
        min_hypothesis_met: def.min_hypothesis_met,
        gate_passed: false,
        elapsed_ms: 0,
    };
    for (descriptor, eval) in evals {
        report.hypothesis_met += usize::from(eval.hypothesis_met);
        report.skipped_degenerate += usize::from(eval.degenerate);
        report.skipped_cap += usize::from(eval.cap);
        report.failures.extend(record(&descriptor, eval.failures));
        report.necessity_witnesses.extend(record(&descriptor, eval.necessity));
    }
    report.gate_passed = report.hypothesis_met >= def.min_hypothesis_met;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Every registered property (or only `only`), in registry order.
pub fn run_suite(corpus: &Corpus, only: Option<&str>, opts: RunOptions) -> Result<Vec<PropertyReport>> {
    let ids: Vec<&'static str> = match only {
        Some(id) => vec![lookup(id)?.id],
        None => registry().iter().map(|p| p.id).collect(),
    };
    ids.into_iter().map(|id| run_property(id, corpus, opts)).collect()
}

/// Re-evaluates one property on a single instance rebuilt from its descriptor,
/// with `corpus` supplying hom partners where the property needs them.
pub fn replay(property_id: &str, descriptor: &ModuleExpr, corpus: &Corpus, opts: RunOptions) -> Result<ReplayOutcome> {
    let def = lookup(property_id)?;
    let ctx = Ctx {
        corpus,
        degree_bound: opts.degree_bound,
    };
    let eval = match def.runner {
        Runner::Instances(f) => f(&Instance::from_descriptor(descriptor)?, &ctx),
        Runner::Rings(f) => f(crate::finmod::construct_module(descriptor)?.ring(), &ctx),
    };
    Ok(ReplayOutcome {
        hypothesis_met: eval.hypothesis_met,
        failures: eval.failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub hypothesis_met: bool,
    pub failures: Vec<String>,
}

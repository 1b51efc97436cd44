//! Command implementations behind the CLI. Each returns a [`Report`] and a status
//! the binary turns into an exit code.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use crate::classify::{
    ass, ass_ring, is_annihilator_multiplication, is_baer_module, is_comultiplication_over,
    is_injective_baer_criterion, is_multiplication_over, is_prime_module, is_vn_regular_module, Verdict,
};
use crate::dsl::ast::{ModuleExpr, MultExpr, Statement, Target};
use crate::dsl::{parse_program, Bindings};
use crate::error::{Error, Result};
use crate::finmod::{classify_module_basic, construct_module, enumerate_submodules, torsion_set, FiniteModule};
use crate::finring::{
    baer_kist_witnesses, classify_ideal, classify_ring, construct_ring, enumerate_ideals, field_decompose,
    special_elements, FiniteRing, DEFAULT_IDEAL_CAP,
};
use crate::localize::{localize_module, saturate};
use crate::propcheck::{
    generate_instances, run_suite, search_counterexample, Corpus, Instance, InstanceBudget, PropertyReport, RunOptions,
};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Passed,
    /// A result was cut short by a cap; the report says where.
    Partial,
    /// A property failed or a non-vacuity gate tripped.
    Failed,
}

impl Status {
    /// 0 all pass, 1 failures, 3 cap exceeded. Usage and parse errors (2) never
    /// reach a status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Passed => 0,
            Status::Failed => 1,
            Status::Partial => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

/// Exit code for an error that stopped a command: 3 for caps, 2 otherwise.
pub fn error_exit_code(err: &Error) -> i32 {
    if err.is_cap() {
        3
    } else {
        2
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Runs a capped computation, recording the cap instead of failing.
fn capped<T>(partial: &mut Vec<String>, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() => {
            partial.push(e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn finish(
    command: &str,
    inputs: Vec<String>,
    results: Value,
    status: Status,
    timings: BTreeMap<String, u64>,
) -> Outcome {
    let mut report = Report::new(command, inputs, results);
    report.timings = timings;
    if let Err(msg) = report.validate() {
        panic!("emitted {command} report violates the schema: {msg}");
    }
    Outcome { report, status }
}

fn total(start: Instant) -> BTreeMap<String, u64> {
    BTreeMap::from([("total_ms".to_string(), elapsed_ms(start))])
}

/// Every module classifier on one module. Submodule-lattice classifiers report
/// `null` past the caps, with `partial` naming the cap.
pub fn cmd_classify_module(e: &Arc<FiniteModule>) -> Result<Outcome> {
    let start = Instant::now();
    if e.is_zero() {
        return Err(Error::Degenerate(format!("{} is the zero module", e.descriptor())));
    }
    let mut partial = Vec::new();
    let am = is_annihilator_multiplication(e);
    let subs = capped(&mut partial, enumerate_submodules(e))?;
    let mult = subs.as_ref().map(|s| is_multiplication_over(e, s));
    let comult = subs.as_ref().map(|s| is_comultiplication_over(e, s));
    let baer = is_baer_module(e);
    let vn = is_vn_regular_module(e);
    let prime = is_prime_module(e)?;
    let injective = capped(&mut partial, is_injective_baer_criterion(e))?;
    let basic = classify_module_basic(e);

    let mut counterexample = BTreeMap::new();
    let named: [(&str, Option<&Verdict>); 7] = [
        ("ann_mult", Some(&am)),
        ("multiplication", mult.as_ref()),
        ("comultiplication", comult.as_ref()),
        ("baer", Some(&baer)),
        ("vn_regular", Some(&vn)),
        ("prime_module", Some(&prime)),
        ("injective", injective.as_ref()),
    ];
    for (name, v) in named {
        if let Some(c) = v.and_then(|v| v.counterexample.as_ref()) {
            counterexample.insert(name, c);
        }
    }
    let results = json!({
        "kind": "module",
        "descriptor": e.descriptor().to_string(),
        "order": e.order(),
        "ring_order": e.ring().order(),
        "ann_mult": am.holds,
        "multiplication": mult.as_ref().map(|v| v.holds),
        "comultiplication": comult.as_ref().map(|v| v.holds),
        "baer": baer.holds,
        "vn_regular": vn.holds,
        "prime_module": prime.holds,
        "injective": injective.as_ref().map(|v| v.holds),
        "torsion_free": basic.torsion_free,
        "faithful": basic.faithful,
        "simple": basic.simple,
        "submodule_count": subs.as_ref().map(|s| s.len()),
        "torsion": to_value(&torsion_set(e)),
        "ass": to_value(&ass(e).primes),
        "witness": to_value(&am.witness),
        "counterexample": to_value(&counterexample),
        "partial": partial,
    });
    let status = if partial.is_empty() {
        Status::Passed
    } else {
        Status::Partial
    };
    Ok(finish(
        "classify",
        vec![e.descriptor().to_string()],
        results,
        status,
        total(start),
    ))
}

/// Ring flags, special elements, the ideal lattice with per-ideal flags, Baer-Kist
/// witnesses, the field decomposition when reduced, and `Ass(A)`.
pub fn cmd_classify_ring(ring: &Arc<FiniteRing>) -> Result<Outcome> {
    let start = Instant::now();
    let mut partial = Vec::new();
    let names = |v: &[usize]| -> Vec<String> { v.iter().map(|&a| ring.name(a).to_string()).collect() };
    let special = special_elements(ring);
    let ideals = capped(&mut partial, enumerate_ideals(ring, DEFAULT_IDEAL_CAP))?.map(|ideals| {
        ideals
            .iter()
            .map(|i| {
                json!({
                    "ideal": to_value(i),
                    "generators": i.generator_names(),
                    "flags": to_value(&classify_ideal(ring, i)),
                })
            })
            .collect::<Vec<_>>()
    });
    let baer_kist = match baer_kist_witnesses(ring) {
        Ok(pairs) => json!({
            "holds": true,
            "witnesses": pairs
                .iter()
                .map(|&(a, b)| json!({"element": ring.name(a), "idempotent": ring.name(b)}))
                .collect::<Vec<_>>(),
        }),
        Err(a) => json!({"holds": false, "element": ring.name(a)}),
    };
    let field_decomposition = match field_decompose(ring) {
        Ok(d) => json!({
            "idempotents": names(&d.idempotents),
            "factors": d.factors.iter().map(|f| f.descriptor().to_string()).collect::<Vec<_>>(),
        }),
        Err(Error::NotSemisimple(_)) => Value::Null,
        Err(e) => return Err(e),
    };
    let results = json!({
        "kind": "ring",
        "descriptor": ring.descriptor().to_string(),
        "order": ring.order(),
        "flags": to_value(&classify_ring(ring)),
        "special_elements": {
            "units": names(&special.units),
            "idempotents": names(&special.idempotents),
            "nilpotents": names(&special.nilpotents),
        },
        "ideals": ideals,
        "baer_kist": baer_kist,
        "field_decomposition": field_decomposition,
        "ass": to_value(&ass_ring(ring).primes),
        "partial": partial,
    });
    let status = if partial.is_empty() {
        Status::Passed
    } else {
        Status::Partial
    };
    Ok(finish(
        "classify",
        vec![ring.descriptor().to_string()],
        results,
        status,
        total(start),
    ))
}

/// `cmd_classify` on a parsed, reference-free target.
pub fn cmd_classify(target: &Target) -> Result<Outcome> {
    match target {
        Target::Ring(r) => cmd_classify_ring(&construct_ring(r)?),
        Target::Module(m) => cmd_classify_module(&construct_module(m)?),
    }
}

fn properties_value(reports: &[PropertyReport]) -> (Value, BTreeMap<String, u64>) {
    let timings = reports.iter().map(|r| (r.property_id.clone(), r.elapsed_ms)).collect();
    (to_value(&reports), timings)
}

/// Runs every property (or `only`) over the generated corpus. Fails when a
/// property has failures or misses its non-vacuity gate.
pub fn cmd_suite(budget: &InstanceBudget, only: Option<&str>, opts: RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let corpus = generate_instances(budget)?;
    let corpus_ms = elapsed_ms(start);
    let reports = run_suite(&corpus, only, opts)?;
    let passed = reports.iter().all(PropertyReport::passed);
    let (properties, mut timings) = properties_value(&reports);
    timings.insert("corpus_ms".into(), corpus_ms);
    timings.insert("total_ms".into(), elapsed_ms(start));
    let results = json!({
        "budget": to_value(budget),
        "corpus_size": corpus.instances.len(),
        "duplicate_draws": corpus.duplicate_draws,
        "degree_bound": opts.degree_bound,
        "properties": properties,
        "passed": passed,
    });
    let status = if passed { Status::Passed } else { Status::Failed };
    Ok(finish("suite", Vec::new(), results, status, timings))
}

/// Every property on a single module. Non-vacuity gates do not apply to one
/// instance, so only failures count.
pub fn cmd_check(expr: &ModuleExpr, opts: RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let inst = Instance::from_descriptor(expr)?;
    let corpus = Corpus {
        budget: InstanceBudget::default(),
        rings: vec![inst.module.ring().clone()],
        instances: vec![inst],
        duplicate_draws: 0,
    };
    let reports = run_suite(&corpus, None, opts)?;
    let passed = reports.iter().all(|r| r.failures.is_empty());
    let (properties, mut timings) = properties_value(&reports);
    timings.insert("total_ms".into(), elapsed_ms(start));
    let results = json!({
        "degree_bound": opts.degree_bound,
        "properties": properties,
        "passed": passed,
    });
    let status = if passed { Status::Passed } else { Status::Failed };
    Ok(finish("check", vec![expr.to_string()], results, status, timings))
}

/// `T⁻¹E` for `T` the multiplicative closure of the given elements, with the
/// annihilator multiplication verdict on both sides.
pub fn cmd_localize(expr: &ModuleExpr, mult: &MultExpr) -> Result<Outcome> {
    let start = Instant::now();
    let e = construct_module(expr)?;
    let ring = construct_ring(&mult.ring)?;
    if !ring.same_as(e.ring()) {
        return Err(Error::RingMismatch(
            e.ring().descriptor().to_string(),
            ring.descriptor().to_string(),
        ));
    }
    let gens = ring.parse_elements(&mult.gens)?;
    let t = saturate(e.ring(), &gens);
    let loc = localize_module(&e, &t)?;
    let ring_loc = crate::localize::localize_ring(e.ring(), &t)?;
    let after = loc
        .module_image
        .as_ref()
        .filter(|m| !m.is_zero())
        .map(|m| is_annihilator_multiplication(m).holds);
    let results = json!({
        "multiplicative_set": t.members().iter().map(|&a| ring.name(a)).collect::<Vec<_>>(),
        "ring_kernel": ring_loc.kernel,
        "ring_image_order": ring_loc.image_order,
        "module_kernel": loc.kernel,
        "module_image_order": loc.image_order,
        "is_trivial": loc.is_trivial,
        "ann_mult_before": is_annihilator_multiplication(&e).holds,
        "ann_mult_after": after,
    });
    Ok(finish(
        "loc",
        vec![expr.to_string(), mult.to_string()],
        results,
        Status::Passed,
        total(start),
    ))
}

/// Counterexample search for a converse or dropped-hypothesis variant. A search
/// that finds something has done its job, so the status is always a pass.
pub fn cmd_search(variant: &str, budget: &InstanceBudget) -> Result<Outcome> {
    let start = Instant::now();
    let result = search_counterexample(variant, budget)?;
    Ok(finish(
        "search",
        Vec::new(),
        to_value(&result),
        Status::Passed,
        total(start),
    ))
}

/// Executes a DSL program: definitions bind names, every command statement
/// contributes one nested report. The status is the worst among them.
pub fn cmd_run(text: &str, opts: RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let program = parse_program(text)?;
    let mut bindings = Bindings::default();
    let mut nested = Vec::new();
    let mut status = Status::Passed;
    for statement in &program.statements {
        let outcome = match statement {
            Statement::Ring { name, expr } => {
                bindings.bind_ring(&name.name, expr)?;
                continue;
            }
            Statement::Module { name, expr } => {
                bindings.bind_module(&name.name, expr)?;
                continue;
            }
            Statement::Classify(t) => cmd_classify(&bindings.expand_target(t)?)?,
            Statement::Check(m) => cmd_check(&bindings.expand_module(m)?, opts)?,
            Statement::Localize(m, t) => cmd_localize(&bindings.expand_module(m)?, &bindings.expand_mult(t)?)?,
            Statement::Suite => cmd_suite(&InstanceBudget::default(), None, opts)?,
        };
        status = status.max(outcome.status);
        nested.push(outcome.report);
    }
    let inputs = nested.iter().flat_map(|r| r.inputs.clone()).collect();
    let results = Value::Array(nested.iter().map(to_value).collect());
    Ok(finish("run", inputs, results, status, total(start)))
}

/// Parses and classifies a single ring or module expression.
pub fn cmd_classify_text(text: &str) -> Result<Outcome> {
    cmd_classify(&crate::dsl::parse_target(text)?)
}

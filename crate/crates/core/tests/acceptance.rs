//! The ten acceptance criteria, each printed as one PASS or FAIL line. Runs
//! without the libtest harness so the lines always reach the output.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use annmod::classify::{is_annihilator_multiplication, is_injective_baer_criterion, is_prime_module};
use annmod::commands::{cmd_classify_text, cmd_suite};
use annmod::dsl::parse_module;
use annmod::error::Error;
use annmod::finmod::{classify_submodule, FiniteModule, Submodule};
use annmod::finring::{
    baer_kist_witnesses, classify_ring, enumerate_ideals, field_decompose, ideal_generate, DEFAULT_IDEAL_CAP,
};
use annmod::localize::{localize_ring, saturate};
use annmod::polymod::check_lempol;
use annmod::propcheck::{
    generate_instances, replay, run_property, tvon_witness_module, Corpus, InstanceBudget, RunOptions,
};
use common::*;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion<'a> = dyn Fn() -> Outcome + 'a;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn names_of(v: &Value) -> BTreeSet<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

fn strs(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn golden_instance() -> Outcome {
    let start = Instant::now();
    let out = cmd_classify_text(EX1).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    let r = &out.report.results;
    ensure(r["ann_mult"] == true, || "not annihilator multiplication".into())?;
    for flag in ["multiplication", "vn_regular", "baer", "torsion_free", "simple"] {
        ensure(r[flag] == false, || format!("{flag} is {}", r[flag]))?;
    }
    let rows: BTreeSet<(BTreeSet<String>, BTreeSet<String>)> = r["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| (names_of(&w["annihilator"]), names_of(&w["ideal"])))
        .collect();
    let all = ["0", "1", "2", "3", "4", "5", "6", "7"];
    let expected = BTreeSet::from([
        (strs(&["0", "4"]), strs(&all)),
        (strs(&["0", "2", "4", "6"]), strs(&["0", "2", "4", "6"])),
        (strs(&all), strs(&["0"])),
    ]);
    ensure(rows == expected, || format!("witness map {rows:?}"))?;
    Ok(format!("witness map 4Z8↦Z8, 2Z8↦2Z8, Z8↦0 in {:.2?}", start.elapsed()))
}

fn oracle_equivalence(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let small: Vec<_> = corpus
        .instances
        .iter()
        .filter(|i| i.module.ring().order() <= 16 && i.module.order() <= 16)
        .collect();
    ensure(small.len() >= 200, || {
        format!("only {} instances in range", small.len())
    })?;
    let disagree: Vec<String> = small
        .iter()
        .filter(|i| is_annihilator_multiplication(&i.module).holds != ann_mult(&i.module))
        .map(|i| i.descriptor.to_string())
        .collect();
    within(start, Duration::from_secs(60))?;
    ensure(disagree.is_empty(), || format!("disagreements on {disagree:?}"))?;
    Ok(format!(
        "{} of {} instances agree in {:.2?}",
        small.len(),
        small.len(),
        start.elapsed()
    ))
}

fn counterexample_factory() -> Outcome {
    let a = ring(LOCAL);
    let x = ideal_generate(&a, &[a.parse_element("x").unwrap()]);
    let e = tvon_witness_module(&a, &x).map_err(|e| e.to_string())?;
    let v = is_annihilator_multiplication(&e);
    ensure(!v.holds, || "A ⊕ A/(x) passed".into())?;
    let c = v.counterexample.unwrap();
    ensure(c.subject == "<0,1>", || format!("counterexample element {}", c.subject))?;
    let got: BTreeSet<Vec<String>> = c.candidates.unwrap().iter().map(|i| i.element_names()).collect();
    let maximal = ideal_generate(&a, &[a.parse_element("x").unwrap(), a.parse_element("y").unwrap()]);
    let want: BTreeSet<Vec<String>> = [
        a.elements().map(|r| a.name(r).to_string()).collect(),
        maximal.element_names(),
        vec!["0".into()],
    ]
    .into_iter()
    .collect();
    ensure(got == want, || format!("candidates {got:?}"))?;
    Ok("(0, 1̄) with C = {A, (x,y), 0}".into())
}

fn full_suite() -> Outcome {
    let start = Instant::now();
    let out = cmd_suite(&InstanceBudget::default(), None, RunOptions::default()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(600))?;
    let r = &out.report.results;
    let size = r["corpus_size"].as_u64().unwrap();
    ensure(size >= 200, || format!("corpus of {size}"))?;
    let props = r["properties"].as_array().unwrap();
    ensure(props.len() == 15, || format!("{} properties", props.len()))?;
    let mut bad = Vec::new();
    for p in props {
        let failures = p["failures"].as_array().unwrap().len();
        if failures > 0 || p["gate_passed"] != true {
            bad.push(format!(
                "{} ({failures} failures, {} hits)",
                p["property_id"], p["hypothesis_met"]
            ));
        }
    }
    ensure(bad.is_empty() && r["passed"] == true, || {
        format!("failing: {}", bad.join(", "))
    })?;
    Ok(format!(
        "{size} instances, 15 properties, 0 failures, all gates in {:.2?}",
        start.elapsed()
    ))
}

fn tvon_split(corpus: &Corpus) -> Outcome {
    let mut product_rings = 0;
    for r in &corpus.rings {
        let flags = classify_ring(r);
        let ii = flags.is_principal_ideal_ring && flags.is_vn_regular;
        let iii = match field_decompose(r) {
            Ok(d) => d.reconstructs(r) && d.factors.iter().all(|f| classify_ring(f).is_field),
            Err(Error::NotSemisimple(_)) => false,
            Err(e) => return Err(e.to_string()),
        };
        ensure(ii == iii, || format!("(ii) {ii} but (iii) {iii} on {}", r.descriptor()))?;
        if iii {
            product_rings += 1;
            for i in enumerate_ideals(r, DEFAULT_IDEAL_CAP).map_err(|e| e.to_string())? {
                let e = tvon_witness_module(r, &i).map_err(|e| e.to_string())?;
                ensure(is_annihilator_multiplication(&e).holds, || {
                    format!("{} is not annihilator multiplication", e.descriptor())
                })?;
            }
        }
    }
    let z6 = ring("(Z 6)");
    let w = baer_kist_witnesses(&z6).map_err(|a| format!("Z6 fails Baer-Kist at {a}"))?;
    ensure(w.contains(&(2, 3)) && z6.mul(3, 3) == 3, || {
        format!("Z6 witnesses {w:?}")
    })?;
    ensure(!classify_ring(&ring("(Z 4)")).is_baer_kist, || {
        "Z4 classified Baer-Kist".into()
    })?;
    Ok(format!(
        "(ii)⇔(iii) on {} rings, A⊕A/I on {product_rings} products of fields, Z6 ann(2) = 3Z6, Z4 not Baer",
        corpus.rings.len()
    ))
}

fn associated_primes_check(corpus: &Corpus) -> Outcome {
    let z12 = ring("(Z 12)");
    let got: BTreeSet<Vec<String>> = annmod::classify::ass_ring(&z12)
        .primes
        .iter()
        .map(|p| p.prime.element_names())
        .collect();
    let want: BTreeSet<Vec<String>> = [vec!["0", "2", "4", "6", "8", "10"], vec!["0", "3", "6", "9"]]
        .iter()
        .map(|v| v.iter().map(|s| s.to_string()).collect())
        .collect();
    ensure(got == want, || format!("Ass(Z12) = {got:?}"))?;
    let report = run_property("PASS", corpus, RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.failures.is_empty(), || format!("{:?}", report.failures))?;
    let square = parse_module("(free (Z 12) 2)").unwrap();
    let rep = replay("PASS", &square, corpus, RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(rep.hypothesis_met && rep.failures.is_empty(), || {
        format!("Z12⊕Z12: {rep:?}")
    })?;
    let mut checked = 0;
    for inst in &corpus.instances {
        let e = &inst.module;
        let non_torsion = (0..e.order()).any(|x| ann_of(e, x) == Set::from([0]));
        if non_torsion && inst.ann_mult().holds {
            let own = associated_primes(&FiniteModule::self_module(e.ring()));
            ensure(associated_primes(e) == own, || {
                format!("Ass differs on {}", inst.descriptor)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "Ass(Z12) = {{2Z12, 3Z12}}; Ass(E) = Ass(A) on {checked} instances, PASS hits {}",
        report.hypothesis_met
    ))
}

fn localization(corpus: &Corpus) -> Outcome {
    let z12 = ring("(Z 12)");
    let t = saturate(&z12, &[4]);
    ensure(t.members() == vec![1, 4], || format!("T = {:?}", t.members()))?;
    let loc = localize_ring(&z12, &t).map_err(|e| e.to_string())?;
    ensure(loc.image_order == 3, || format!("order {}", loc.image_order))?;
    ensure(loc.kernel == ["0", "3", "6", "9"], || {
        format!("kernel {:?}", loc.kernel)
    })?;
    let (order, kernel) = fractions(&z12, &Set::from([1, 4]));
    ensure(order == 3 && kernel == Set::from([0, 3, 6, 9]), || {
        "fraction oracle disagrees".into()
    })?;
    let report = run_property("PLOC", corpus, RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.failures.is_empty(), || format!("{:?}", report.failures))?;
    Ok(format!(
        "Z12 at {{1,4}} has order 3, kernel {{0,3,6,9}}; PLOC 0 failures over {} localized instances ({} without a proper localization)",
        report.hypothesis_met, report.skipped_degenerate
    ))
}

fn polynomial_lemma(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    for text in ["(self (Z 4))", "(free (Z 2) 2)"] {
        let e = module(text);
        let rep = check_lempol(&e, 2).map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("{text}: {rep:?}"))?;
        ensure(lempol(&e, 2), || format!("oracle rejects {text}"))?;
    }
    let non_armendariz = "(self (polyquot (Z 2) [x y] {x^2 y^2}))";
    ensure(
        matches!(
            check_lempol(&module(non_armendariz), 2),
            Err(Error::HypothesisFailed(_))
        ),
        || "non-Armendariz module was not rejected".into(),
    )?;
    let expr = parse_module(non_armendariz).unwrap();
    let rep = replay("PPOL", &expr, corpus, RunOptions { degree_bound: 2 }).map_err(|e| e.to_string())?;
    ensure(!rep.hypothesis_met && rep.failures.is_empty(), || {
        format!("gate on {non_armendariz}: {rep:?}")
    })?;
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "both identities at D = 2 on Z4 and F2², non-Armendariz excluded, {:.2?}",
        start.elapsed()
    ))
}

fn cross_checks(corpus: &Corpus) -> Outcome {
    ensure(
        is_injective_baer_criterion(&module("(self (Z 4))"))
            .map_err(|e| e.to_string())?
            .holds,
        || "Z4 over Z4 not injective".into(),
    )?;
    let z2 = module("(cyclic (Z 4) (ideal 2))");
    let v = is_injective_baer_criterion(&z2).map_err(|e| e.to_string())?;
    ensure(!v.holds, || "Z2 over Z4 injective".into())?;
    let subject = v.counterexample.unwrap().subject;
    ensure(subject == "{0, 2}: 2 ↦ 1", || format!("non-extending hom {subject}"))?;
    let second = classify_submodule(&Submodule::whole(&z2))
        .map_err(|e| e.to_string())?
        .is_second;
    ensure(second == Some(true), || "Z2 over Z4 not second".into())?;
    ensure(is_annihilator_multiplication(&z2).holds, || {
        "Z2 over Z4 not annihilator multiplication".into()
    })?;
    ensure(is_prime_module(&z2).map_err(|e| e.to_string())?.holds, || {
        "Z2 over Z4 not prime".into()
    })?;
    let over_z2 = FiniteModule::over_faithful_quotient(&z2).map_err(|e| e.to_string())?;
    ensure(over_z2.ring().order() == 2, || "A/ann(E) is not Z2".into())?;
    ensure(
        is_injective_baer_criterion(&over_z2).map_err(|e| e.to_string())?.holds,
        || "Z2 not injective over Z2".into(),
    )?;
    let rep = replay("PINJ", z2.descriptor(), corpus, RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(rep.hypothesis_met && rep.failures.is_empty(), || {
        format!("PINJ on Z2: {rep:?}")
    })?;
    Ok("Z4/Z4 injective; Z2/Z4 fails at 2Z4 → Z2, 2 ↦ 1̄; second ⇒ prime ⇒ injective over Z2".into())
}

fn determinism() -> Outcome {
    let budget = InstanceBudget {
        max_instances: 50,
        random_seed: 7,
        ..InstanceBudget::default()
    };
    let run = || {
        cmd_suite(&budget, None, RunOptions::default())
            .map(|o| o.report.to_json_without_timings())
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("seed 7, 50 draws: {} identical bytes", a.len()))
}

fn main() {
    let corpus = generate_instances(&InstanceBudget::default()).expect("default corpus");
    let criteria: Vec<(&str, Box<Criterion>)> = vec![
        ("golden instance", Box::new(golden_instance)),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("counterexample factory", Box::new(counterexample_factory)),
        ("full proposition suite", Box::new(full_suite)),
        ("von Neumann regular split", Box::new(|| tvon_split(&corpus))),
        ("associated primes", Box::new(|| associated_primes_check(&corpus))),
        ("localization", Box::new(|| localization(&corpus))),
        ("polynomial lemma", Box::new(|| polynomial_lemma(&corpus))),
        ("classification cross-checks", Box::new(|| cross_checks(&corpus))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

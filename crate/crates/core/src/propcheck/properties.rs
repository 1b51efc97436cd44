//! One evaluator per registered property. Each looks at a single instance (or a
//! single ring, for PVON) and reports whether the hypothesis applied and what, if
//! anything, contradicted the conclusion.

use std::sync::Arc;

use super::corpus::{tvon_witness_module, Corpus, Instance};
use crate::classify::{
    ass, ass_ring, is_annihilator_multiplication, is_baer_module, is_comultiplication_over,
    is_injective_baer_criterion, is_multiplication_over, is_prime_module, is_vn_regular_module, scaled_annihilators,
};
use crate::finmod::{
    annihilator, classify_module_basic, enumerate_homs_capped, is_classical_one_absorbing, is_classical_prime,
    is_essential, is_prime_submodule, is_pure_with, is_second, torsion_set, FiniteModule, ModuleHom, Submodule,
};
use crate::finring::{
    classify_ideal, classify_ring, enumerate_ideals, field_decompose, generate_set, FiniteRing, Ideal,
    DEFAULT_IDEAL_CAP,
};
use crate::localize::{localize_module, prime_complement, saturate, MultiplicativeSet};
use crate::polymod::{check_lempol, is_armendariz_upto, polynomial_module_check};
use crate::sets::{self, ElemSet};

/// Per-instance outcome.
#[derive(Debug, Default, Clone)]
pub(crate) struct Eval {
    pub hypothesis_met: bool,
    pub failures: Vec<String>,
    pub degenerate: bool,
    pub cap: bool,
    /// Instances outside the hypothesis where the conclusion also fails.
    pub necessity: Vec<String>,
}

impl Eval {
    fn cap() -> Self {
        Eval {
            cap: true,
            ..Eval::default()
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }
}

pub(crate) struct Ctx<'a> {
    pub corpus: &'a Corpus,
    pub degree_bound: usize,
}

fn am(e: &Arc<FiniteModule>) -> bool {
    is_annihilator_multiplication(e).holds
}

fn ann_all(e: &Arc<FiniteModule>) -> Ideal {
    annihilator(e, &sets::full(e.order()))
}

fn sub_module(v: &Submodule) -> Arc<FiniteModule> {
    FiniteModule::submodule_module(v)
}

fn colon(v: &Submodule) -> ElemSet {
    let e = v.module();
    let r = e.ring();
    sets::from_iter(
        r.order(),
        r.elements().filter(|&a| e.elements().all(|x| v.contains(e.act(a, x)))),
    )
}

pub(crate) fn p1(inst: &Instance, _: &Ctx) -> Eval {
    let e = &inst.module;
    let basic = classify_module_basic(e);
    let mut reasons = Vec::new();
    let subs = inst.submodules();
    if let Some(subs) = subs {
        if is_multiplication_over(e, subs).holds {
            reasons.push("multiplication");
        }
    }
    if is_vn_regular_module(e).holds {
        reasons.push("vn-regular");
    }
    if is_baer_module(e).holds {
        reasons.push("Baer");
    }
    if basic.torsion_free {
        reasons.push("torsion-free");
    }
    if basic.simple {
        reasons.push("simple");
    }
    if reasons.is_empty() {
        return if subs.is_none() { Eval::cap() } else { Eval::default() };
    }
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    let v = inst.ann_mult();
    out.check(v.holds, || {
        format!(
            "{} but not annihilator multiplication at {}",
            reasons.join(", "),
            v.counterexample.as_ref().map_or("?", |c| c.subject.as_str())
        )
    });
    out
}

/// The largest `I` with `ann(IE) = J`, or the zero ideal when `J = A`.
fn largest_witness(e: &Arc<FiniteModule>, scaled: &[ElemSet], j: &ElemSet) -> Vec<usize> {
    let r = e.ring();
    if j.count_ones(..) == r.order() {
        return Vec::new();
    }
    r.elements().filter(|&a| j.is_subset(&scaled[a])).collect()
}

pub(crate) fn p2(inst: &Instance, _: &Ctx) -> Eval {
    if !inst.ann_mult().holds {
        return Eval::default();
    }
    let Some(subs) = inst.submodules() else {
        return Eval::cap();
    };
    let e = &inst.module;
    let r = e.ring();
    let scaled = scaled_annihilators(e);
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    for v in subs {
        // I = Σ I_i over a generating set, as in the finitely generated case
        let mut members = Vec::new();
        for g in v.generating_set() {
            let j = annihilator(e, &sets::from_iter(e.order(), [g]));
            members.extend(largest_witness(e, &scaled, j.elements()));
        }
        let i = generate_set(r, &members);
        let lhs = annihilator(e, v.elements());
        let rhs = annihilator(e, &e.ideal_times_module(&i));
        out.check(lhs == rhs, || {
            format!(
                "V = {v}: ann(V) = {lhs} but ann(IE) = {rhs} for I = {{{}}}",
                r.names_of(&i).join(", ")
            )
        });
    }
    out
}

pub(crate) fn pdir(inst: &Instance, _: &Ctx) -> Eval {
    if !matches!(inst.descriptor, crate::dsl::ast::ModuleExpr::Prod(_)) {
        return Eval::default();
    }
    let parts = inst.module.summands().expect("product has factors");
    let whole = inst.ann_mult().holds;
    let each: Vec<bool> = parts.iter().map(am).collect();
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    out.check(whole == each.iter().all(|&b| b), || {
        format!("product is annihilator multiplication: {whole}; factors: {each:?}")
    });
    out
}

/// Multiplicative sets worth inverting: saturations of single elements and
/// complements of primes, skipping those made only of units.
pub(crate) fn multiplicative_sets(ring: &Arc<FiniteRing>) -> Vec<MultiplicativeSet> {
    let mut out: Vec<MultiplicativeSet> = Vec::new();
    let mut push = |t: MultiplicativeSet| {
        let trivial = t.members().iter().all(|&s| ring.is_unit(s));
        if !trivial && !out.iter().any(|u| u.elements() == t.elements()) {
            out.push(t);
        }
    };
    for a in ring.elements() {
        push(saturate(ring, &[a]));
    }
    for p in enumerate_ideals(ring, DEFAULT_IDEAL_CAP).unwrap_or_default() {
        if let Some(t) = prime_complement(&p) {
            push(t);
        }
    }
    out
}

pub(crate) fn ploc(inst: &Instance, _: &Ctx) -> Eval {
    if !inst.ann_mult().holds {
        return Eval::default();
    }
    let e = &inst.module;
    let mut out = Eval::default();
    for t in multiplicative_sets(e.ring()) {
        let loc = match localize_module(e, &t) {
            Ok(l) => l,
            Err(err) if err.is_cap() => return Eval::cap(),
            Err(err) => panic!("localization failed on {}: {err}", inst.descriptor),
        };
        let Some(image) = loc.module_image.filter(|m| !m.is_zero()) else {
            continue;
        };
        out.hypothesis_met = true;
        let v = is_annihilator_multiplication(&image);
        out.check(v.holds, || {
            format!(
                "T = {{{}}}: localization fails at {}",
                t.members()
                    .iter()
                    .map(|&s| e.ring().name(s))
                    .collect::<Vec<_>>()
                    .join(", "),
                v.counterexample.as_ref().map_or("?", |c| c.subject.as_str())
            )
        });
    }
    if !out.hypothesis_met {
        out.degenerate = true;
    }
    out
}

const HOM_PARTNERS: usize = 3;
const HOM_SPACE_CAP: usize = 4096;

fn hom_partners<'a>(inst: &Instance, corpus: &'a Corpus) -> Vec<&'a Instance> {
    corpus
        .instances
        .iter()
        .filter(|other| {
            !std::ptr::eq(*other, inst) && other.module.ring().same_as(inst.module.ring()) && other.module.order() <= 16
        })
        .take(HOM_PARTNERS)
        .collect()
}

pub(crate) struct HomCase {
    pub source_am: bool,
    pub target_am: bool,
    pub ann_equal: bool,
    pub injective: bool,
    pub surjective: bool,
    pub kernel_prime: bool,
}

fn hom_case(h: &ModuleHom, source_am: bool, target_am: bool) -> HomCase {
    HomCase {
        source_am,
        target_am,
        ann_equal: ann_all(h.source()) == ann_all(h.target()),
        injective: h.is_injective(),
        surjective: h.is_surjective(),
        kernel_prime: is_prime_submodule(&h.kernel()),
    }
}

/// Applies both parts of the hom statement to one map.
fn judge_hom(c: &HomCase, out: &mut Eval, what: impl Fn() -> String) {
    if c.injective && c.ann_equal && c.target_am {
        out.hypothesis_met = true;
        out.check(c.source_am, || {
            format!(
                "injective {}: target is annihilator multiplication, source is not",
                what()
            )
        });
    }
    if c.surjective && c.ann_equal && c.kernel_prime && c.source_am {
        out.hypothesis_met = true;
        out.check(c.target_am, || {
            format!(
                "surjective {} with prime kernel: target is not annihilator multiplication",
                what()
            )
        });
    }
}

/// Canonical maps: inclusions of submodules and projections onto quotients.
pub(crate) fn canonical_cases(inst: &Instance, subs: &[Submodule]) -> Vec<(String, HomCase)> {
    let e_am = inst.ann_mult().holds;
    let mut out = Vec::new();
    for v in subs.iter().filter(|v| !v.is_zero() && v.is_proper()) {
        let sm = sub_module(v);
        let inc = ModuleHom::inclusion(&sm).expect("built from a submodule");
        out.push((format!("inclusion of {v}"), hom_case(&inc, am(&sm), e_am)));
        let q = FiniteModule::quotient(v);
        let proj = ModuleHom::projection(&q).expect("built as a quotient");
        out.push((format!("projection onto E/{v}"), hom_case(&proj, e_am, am(&q))));
    }
    out
}

pub(crate) fn enumerated_cases(inst: &Instance, corpus: &Corpus) -> Option<Vec<(String, HomCase)>> {
    let e = &inst.module;
    let e_am = inst.ann_mult().holds;
    let mut out = Vec::new();
    for other in hom_partners(inst, corpus) {
        let o_am = other.ann_mult().holds;
        let homs = enumerate_homs_capped(e, &other.module, HOM_SPACE_CAP).ok()?;
        for h in homs {
            let label = format!("map to {} with table {:?}", other.descriptor, h.table());
            out.push((label, hom_case(&h, e_am, o_am)));
        }
    }
    Some(out)
}

pub(crate) fn phom(inst: &Instance, ctx: &Ctx) -> Eval {
    let Some(subs) = inst.submodules() else {
        return Eval::cap();
    };
    let mut cases = canonical_cases(inst, subs);
    let enumerated = enumerated_cases(inst, ctx.corpus);
    let capped = enumerated.is_none();
    cases.extend(enumerated.unwrap_or_default());
    let mut out = Eval::default();
    for (label, c) in &cases {
        judge_hom(c, &mut out, || label.clone());
    }
    out.cap = capped && !out.hypothesis_met;
    out
}

pub(crate) fn psub(inst: &Instance, _: &Ctx) -> Eval {
    if !inst.ann_mult().holds {
        return Eval::default();
    }
    let Some(subs) = inst.submodules() else {
        return Eval::cap();
    };
    let e = &inst.module;
    let ann_e = ann_all(e);
    let ideals = enumerate_ideals(e.ring(), DEFAULT_IDEAL_CAP).expect("small ring");
    let mut out = Eval::default();
    for v in subs {
        let ann_v = annihilator(e, v.elements());
        let same_ann = ann_v == ann_e;
        if v.is_proper() && is_prime_submodule(v) && ann_v.elements() == &colon(v) {
            out.hypothesis_met = true;
            let q = FiniteModule::quotient(v);
            out.check(am(&q), || {
                format!("E/V for prime V = {v} is not annihilator multiplication")
            });
        }
        if v.is_zero() {
            continue;
        }
        let pure_essential = is_pure_with(v, &ideals) && is_essential(v);
        if same_ann || pure_essential {
            out.hypothesis_met = true;
            out.check(!pure_essential || same_ann, || {
                format!("V = {v} is pure and essential but ann(V) = {ann_v} differs from ann(E) = {ann_e}")
            });
            out.check(am(&sub_module(v)), || {
                format!("submodule V = {v} is not annihilator multiplication")
            });
        }
    }
    out
}

fn dsum_parts(inst: &Instance) -> Option<&[Arc<FiniteModule>]> {
    use crate::dsl::ast::ModuleExpr;
    match &inst.descriptor {
        ModuleExpr::DSum(parts) if parts.len() >= 2 => inst.module.summands(),
        ModuleExpr::Free { rank, .. } if *rank >= 2 => inst.module.summands(),
        _ => None,
    }
}

pub(crate) fn pdsum(inst: &Instance, _: &Ctx) -> Eval {
    let Some(parts) = dsum_parts(inst) else {
        return Eval::default();
    };
    let anns: Vec<Ideal> = parts.iter().map(ann_all).collect();
    let equal = anns.iter().all(|a| a == &anns[0]);
    let whole = inst.ann_mult().holds;
    let each: Vec<bool> = parts.iter().map(am).collect();
    let agree = whole == each.iter().all(|&b| b);
    let mut out = Eval::default();
    let detail = || {
        let anns: Vec<String> = anns.iter().map(|a| a.to_string()).collect();
        format!(
            "summand annihilators [{}], summands {each:?}, sum {whole}",
            anns.join(", ")
        )
    };
    if equal {
        out.hypothesis_met = true;
        out.check(agree, detail);
    } else if !agree {
        out.necessity.push(detail());
    }
    out
}

fn totally_ordered(sets: &[ElemSet]) -> bool {
    sets.iter()
        .all(|a| sets.iter().all(|b| a.is_subset(b) || b.is_subset(a)))
}

pub(crate) fn p1abs(inst: &Instance, _: &Ctx) -> Eval {
    let e = &inst.module;
    let ann_e = ann_all(e);
    if !inst.ann_mult().holds || !classify_ideal(e.ring(), &ann_e).is_one_absorbing_prime {
        return Eval::default();
    }
    let Some(subs) = inst.submodules() else {
        return Eval::cap();
    };
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    let mut anns = Vec::new();
    for v in subs {
        let a = annihilator(e, v.elements());
        if !v.is_zero() {
            let c = classify_ideal(e.ring(), &a);
            out.check(a == ann_e || c.is_prime, || {
                format!("ann({v}) = {a} is neither ann(E) nor prime")
            });
            out.check(c.is_one_absorbing_prime, || {
                format!("ann({v}) = {a} is not 1-absorbing prime")
            });
        }
        anns.push(a.elements().clone());
    }
    out.check(totally_ordered(&anns), || {
        "submodule annihilators are not totally ordered".into()
    });
    out
}

/// Nonunits `a, b` with `abe = 0` while `ae ≠ 0` and `be ≠ 0`.
fn classical_break(e: &Arc<FiniteModule>, x: usize) -> Option<(usize, usize)> {
    let r = e.ring();
    let nonunits: Vec<usize> = r.elements().filter(|&a| !r.is_unit(a)).collect();
    for &a in &nonunits {
        for &b in &nonunits {
            if e.act(r.mul(a, b), x) == 0 && e.act(a, x) != 0 && e.act(b, x) != 0 {
                return Some((a, b));
            }
        }
    }
    None
}

/// The stated hypothesis (`ann(e) ≠ ann(E)` for every `e`) can never hold for a
/// nonzero finite annihilator multiplication module, so the property is checked
/// in the pointwise form its argument establishes: when zero is classical
/// 1-absorbing prime, every `e` with `ann(e) ≠ ann(E)` obeys the classical prime
/// condition. The literal statement is checked too, on the instances (none are
/// expected) that satisfy it.
pub(crate) fn pclass(inst: &Instance, _: &Ctx) -> Eval {
    let e = &inst.module;
    if !inst.ann_mult().holds {
        return Eval::default();
    }
    let zero = Submodule::zero(e);
    let one_abs = is_classical_one_absorbing(&zero);
    let classical = is_classical_prime(&zero);
    let ann_e = ann_all(e);
    let off: Vec<usize> = e
        .nonzero()
        .filter(|&x| annihilator(e, &sets::from_iter(e.order(), [x])) != ann_e)
        .collect();
    let mut out = Eval::default();
    let name = |a: usize| e.ring().name(a).to_string();
    if off.len() == e.order() - 1 {
        out.hypothesis_met = true;
        out.check(one_abs == classical, || "literal statement fails".into());
    }
    if one_abs && !off.is_empty() {
        out.hypothesis_met = true;
        for &x in &off {
            if let Some((a, b)) = classical_break(e, x) {
                out.failures.push(format!(
                    "e = {}: {}·{}·e = 0 with both single products nonzero",
                    e.name(x),
                    name(a),
                    name(b)
                ));
            }
        }
    }
    if one_abs && !classical {
        let x = e
            .nonzero()
            .find(|&x| classical_break(e, x).is_some())
            .expect("a classical prime failure has a witness");
        let (a, b) = classical_break(e, x).unwrap();
        out.necessity.push(format!(
            "zero is classical 1-absorbing prime but not classical prime: {}·{}·{} = 0, ann({}) = ann(E) = {ann_e}",
            name(a),
            name(b),
            e.name(x),
            e.name(x)
        ));
    }
    if classical {
        out.check(one_abs, || {
            "zero is classical prime but not classical 1-absorbing prime".into()
        });
    }
    out
}

pub(crate) fn ppol(inst: &Instance, ctx: &Ctx) -> Eval {
    let e = &inst.module;
    let d = ctx.degree_bound;
    let arm = match is_armendariz_upto(e, d) {
        Ok(v) => v,
        Err(err) if err.is_cap() => return Eval::cap(),
        Err(err) => panic!("Armendariz check failed on {}: {err}", inst.descriptor),
    };
    if !arm.holds {
        return Eval::default();
    }
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    match check_lempol(e, d) {
        Ok(rep) => {
            for f in rep.failures_i.iter().chain(&rep.failures_ii) {
                out.failures
                    .push(format!("polynomial annihilator identity fails at {f}"));
            }
        }
        Err(err) if err.is_cap() => return Eval::cap(),
        Err(err) => panic!("polynomial identities failed on {}: {err}", inst.descriptor),
    }
    let poly = polynomial_module_check(e, d).expect("cap already checked");
    let am_e = inst.ann_mult().holds;
    out.check(am_e == poly.counterexample.is_none(), || {
        format!(
            "E annihilator multiplication: {am_e}; E[X] within degree {d}: {}",
            poly.counterexample
                .as_ref()
                .map_or("no counterexample".into(), |c| c.subject.clone())
        )
    });
    out
}

pub(crate) fn ptor(inst: &Instance, _: &Ctx) -> Eval {
    let e = &inst.module;
    let basic = classify_module_basic(e);
    let domain = classify_ring(e.ring()).is_domain;
    let am_e = inst.ann_mult().holds;
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    out.check(basic.torsion_free == (am_e && basic.faithful && domain), || {
        format!(
            "torsion-free {} but annihilator multiplication {am_e}, faithful {}, domain {domain}",
            basic.torsion_free, basic.faithful
        )
    });
    out
}

pub(crate) fn pmult(inst: &Instance, _: &Ctx) -> Eval {
    let Some(subs) = inst.submodules() else {
        return Eval::cap();
    };
    let e = &inst.module;
    if !is_comultiplication_over(e, subs).holds {
        return Eval::default();
    }
    let mult = is_multiplication_over(e, subs).holds;
    let am_e = inst.ann_mult().holds;
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    out.check(mult == am_e, || {
        format!("comultiplication module: multiplication {mult}, annihilator multiplication {am_e}")
    });
    out
}

pub(crate) fn pinj(inst: &Instance, _: &Ctx) -> Eval {
    let e = &inst.module;
    if !inst.ann_mult().holds || !is_second(&Submodule::whole(e)) {
        return Eval::default();
    }
    let Some(subs) = inst.submodules() else {
        return Eval::cap();
    };
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    let prime = is_prime_module(e).expect("second modules are nonzero");
    out.check(prime.holds, || {
        "second and annihilator multiplication but not a prime module".into()
    });
    for v in subs.iter().filter(|v| !v.is_zero()) {
        out.check(am(&sub_module(v)), || {
            format!("submodule {v} is not annihilator multiplication")
        });
    }
    let run = |m: &Arc<FiniteModule>| is_injective_baer_criterion(m);
    match FiniteModule::over_faithful_quotient(e).and_then(|f| run(&f)) {
        Ok(v) => out.check(v.holds, || {
            format!(
                "not injective over A/ann(E): {}",
                v.counterexample.as_ref().map_or("?", |c| c.subject.as_str())
            )
        }),
        Err(err) if err.is_cap() => return Eval::cap(),
        Err(err) => panic!("Baer criterion failed on {}: {err}", inst.descriptor),
    }
    if classify_module_basic(e).faithful {
        match run(e) {
            Ok(v) => out.check(v.holds, || "faithful but not injective over A".into()),
            Err(err) if err.is_cap() => return Eval::cap(),
            Err(err) => panic!("Baer criterion failed on {}: {err}", inst.descriptor),
        }
    }
    let ideals = enumerate_ideals(e.ring(), DEFAULT_IDEAL_CAP).expect("small ring");
    let pure: Vec<&Submodule> = subs
        .iter()
        .filter(|v| !v.is_zero() && is_pure_with(v, &ideals))
        .collect();
    let second: Vec<&Submodule> = subs.iter().filter(|v| is_second(v)).collect();
    out.check(pure == second, || {
        let show = |s: &[&Submodule]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        format!("nonzero pure [{}] differ from second [{}]", show(&pure), show(&second))
    });
    out
}

/// Ring-level: (ii) ⇔ (iii) exactly, (iii) ⇒ (i) on every `A ⊕ A/I`, and the
/// corpus's faithful modules as bounded evidence for (i).
pub(crate) fn pvon(ring: &Arc<FiniteRing>, ctx: &Ctx) -> Eval {
    let cls = classify_ring(ring);
    let pir_vn = cls.is_principal_ideal_ring && cls.is_vn_regular;
    let fields = field_decompose(ring).is_ok();
    let mut out = Eval::default();
    out.check(pir_vn == fields, || {
        format!("principal ideal and vn-regular: {pir_vn}; product of fields: {fields}")
    });
    if !fields {
        return out;
    }
    out.hypothesis_met = true;
    out.check(cls.is_reduced, || "product of fields is not reduced".into());
    let ideals = match enumerate_ideals(ring, DEFAULT_IDEAL_CAP) {
        Ok(i) => i,
        Err(_) => return Eval::cap(),
    };
    for i in &ideals {
        let w = tvon_witness_module(ring, i).expect("witness module builds");
        out.check(am(&w), || format!("A ⊕ A/{i} is not annihilator multiplication"));
    }
    for inst in ctx.corpus.instances.iter().filter(|x| x.module.ring().same_as(ring)) {
        if classify_module_basic(&inst.module).faithful {
            out.check(inst.ann_mult().holds, || {
                format!("faithful {} is not annihilator multiplication", inst.descriptor)
            });
        }
    }
    out
}

pub(crate) fn pass(inst: &Instance, _: &Ctx) -> Eval {
    let e = &inst.module;
    if !inst.ann_mult().holds {
        return Eval::default();
    }
    let faithful = classify_module_basic(e).faithful;
    let non_torsion = torsion_set(e).is_non_torsion;
    if !faithful && !non_torsion {
        return Eval::default();
    }
    let mut out = Eval {
        hypothesis_met: true,
        ..Eval::default()
    };
    let of_e: Vec<Vec<usize>> = ass(e).ideals().iter().map(|i| i.members()).collect();
    let of_a: Vec<Vec<usize>> = ass_ring(e.ring()).ideals().iter().map(|i| i.members()).collect();
    let show = |v: &[Vec<usize>]| format!("{v:?}");
    if faithful {
        out.check(of_e.iter().all(|p| of_a.contains(p)), || {
            format!("Ass(E) = {} is not inside Ass(A) = {}", show(&of_e), show(&of_a))
        });
    }
    if non_torsion {
        out.check(of_e == of_a, || {
            format!("Ass(E) = {} differs from Ass(A) = {}", show(&of_e), show(&of_a))
        });
    }
    out
}

pub(crate) type InstanceFn = fn(&Instance, &Ctx) -> Eval;
pub(crate) type RingFn = fn(&Arc<FiniteRing>, &Ctx) -> Eval;

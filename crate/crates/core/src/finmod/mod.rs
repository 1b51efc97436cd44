//! Finite unital modules over finite rings, held as addition and action tables.

mod hom;
mod submodule;

use std::fmt;
use std::sync::Arc;

pub use hom::{enumerate_homs, enumerate_homs_capped, ModuleHom, DEFAULT_HOM_CAP};
pub use submodule::{
    annihilator, classify_module_basic, classify_submodule, enumerate_submodules, enumerate_submodules_capped,
    residual_ideal, residual_submodule, spec_enumerate, submodule_generate, torsion_set, BasicFlags, Submodule,
    SubmoduleClassification, TorsionInfo, DEFAULT_SUBMODULE_CARRIER_CAP, DEFAULT_SUBMODULE_COUNT_CAP,
};
pub(crate) use submodule::{
    is_classical_one_absorbing, is_classical_prime, is_essential, is_prime_submodule, is_pure_with, is_second,
};

use crate::dsl::ast::ModuleExpr;
use crate::error::{Error, Result};
use crate::finring::{construct_ring, ideal_generate, FiniteRing, Ideal};
use crate::sets::{self, ElemSet};

/// Largest carrier a module constructor will tabulate.
pub const MAX_MODULE_ORDER: usize = 1024;

#[derive(Debug, Clone)]
enum ModuleKind {
    /// R/I; `proj` sends a ring element to its coset.
    Cyclic {
        proj: Vec<u32>,
    },
    /// Componentwise tuples: direct sums, free modules, modules over product rings.
    Tuple(Vec<Arc<FiniteModule>>),
    Quotient {
        parent: Arc<FiniteModule>,
        proj: Vec<u32>,
    },
    Sub {
        parent: Arc<FiniteModule>,
        embed: Vec<usize>,
    },
    /// Same carrier and action, scalars taken from a quotient of the parent's ring.
    Restricted {
        parent: Arc<FiniteModule>,
    },
}

/// A finite unital module. Element `0` is always the zero of the module.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<u32>,
    act: Vec<u32>,
    neg: Vec<u32>,
    names: Vec<String>,
    kind: ModuleKind,
    descriptor: ModuleExpr,
}

fn check_order(order: Option<usize>) -> Result<usize> {
    order
        .filter(|&o| o <= MAX_MODULE_ORDER)
        .ok_or_else(|| Error::cap("module order", MAX_MODULE_ORDER, order.unwrap_or(usize::MAX)))
}

impl FiniteModule {
    fn from_tables(
        ring: Arc<FiniteRing>,
        order: usize,
        add: Vec<u32>,
        act: Vec<u32>,
        names: Vec<String>,
        kind: ModuleKind,
        descriptor: ModuleExpr,
    ) -> Arc<Self> {
        let neg = (0..order)
            .map(|a| (0..order).find(|&b| add[a * order + b] == 0).expect("additive inverse") as u32)
            .collect();
        Arc::new(FiniteModule {
            ring,
            order,
            add,
            act,
            neg,
            names,
            kind,
            descriptor,
        })
    }

    /// The cyclic module R/I.
    pub fn cyclic(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Arc<Self>> {
        let descriptor = ModuleExpr::Cyclic {
            ring: ring.descriptor().clone(),
            ideal: ideal.generator_names(),
        };
        Ok(Self::cyclic_with(ring, ideal, descriptor))
    }

    /// R as a module over itself.
    pub fn self_module(ring: &Arc<FiniteRing>) -> Arc<Self> {
        Self::cyclic_with(ring, &Ideal::zero(ring), ModuleExpr::SelfMod(ring.descriptor().clone()))
    }

    fn cyclic_with(ring: &Arc<FiniteRing>, ideal: &Ideal, descriptor: ModuleExpr) -> Arc<Self> {
        let (proj, reps) = crate::finring::cosets_of(ring, ideal);
        let order = reps.len();
        let mut add = vec![0u32; order * order];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * order + j] = proj[ring.add(a, b)];
            }
        }
        let mut act = vec![0u32; ring.order() * order];
        for r in ring.elements() {
            for (i, &a) in reps.iter().enumerate() {
                act[r * order + i] = proj[ring.mul(r, a)];
            }
        }
        let names = reps.iter().map(|&r| ring.name(r).to_string()).collect();
        Self::from_tables(
            ring.clone(),
            order,
            add,
            act,
            names,
            ModuleKind::Cyclic { proj },
            descriptor,
        )
    }

    fn tuple(
        ring: Arc<FiniteRing>,
        parts: &[Arc<FiniteModule>],
        scalar: impl Fn(usize, usize) -> usize,
        descriptor: ModuleExpr,
    ) -> Result<Arc<Self>> {
        let order = check_order(parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.order)))?;
        let split = |mut i: usize| -> Vec<usize> {
            let mut c = vec![0; parts.len()];
            for (k, p) in parts.iter().enumerate().rev() {
                c[k] = i % p.order;
                i /= p.order;
            }
            c
        };
        let join = |c: &[usize]| c.iter().zip(parts).fold(0, |acc, (&x, p)| acc * p.order + x);
        let comps: Vec<Vec<usize>> = (0..order).map(split).collect();
        let mut add = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.add(comps[a][k], comps[b][k]))
                    .collect();
                add[a * order + b] = join(&s) as u32;
            }
        }
        let mut act = vec![0u32; ring.order() * order];
        let mut s = vec![0usize; parts.len()];
        for r in ring.elements() {
            let scalars: Vec<usize> = (0..parts.len()).map(|k| scalar(r, k)).collect();
            for x in 0..order {
                for (k, p) in parts.iter().enumerate() {
                    s[k] = p.act(scalars[k], comps[x][k]);
                }
                act[r * order + x] = join(&s) as u32;
            }
        }
        let names = comps
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().zip(parts).map(|(&x, p)| p.names[x].as_str()).collect();
                format!("<{}>", parts.join(","))
            })
            .collect();
        Ok(Self::from_tables(
            ring,
            order,
            add,
            act,
            names,
            ModuleKind::Tuple(parts.to_vec()),
            descriptor,
        ))
    }

    /// External direct sum of modules over one ring.
    pub fn direct_sum(parts: &[Arc<FiniteModule>]) -> Result<Arc<Self>> {
        assert!(!parts.is_empty(), "direct sum of no modules");
        let ring = parts[0].ring.clone();
        if let Some(p) = parts.iter().find(|p| !p.ring.same_as(&ring)) {
            return Err(Error::RingMismatch(
                ring.descriptor().to_string(),
                p.ring.descriptor().to_string(),
            ));
        }
        let descriptor = ModuleExpr::DSum(parts.iter().map(|p| p.descriptor.clone()).collect());
        Self::tuple(ring, parts, |r, _| r, descriptor)
    }

    /// The free module R^n.
    pub fn free(ring: &Arc<FiniteRing>, rank: usize) -> Result<Arc<Self>> {
        assert!(rank >= 1, "free module of rank zero");
        let parts = vec![Self::self_module(ring); rank];
        let descriptor = ModuleExpr::Free {
            ring: ring.descriptor().clone(),
            rank,
        };
        Self::tuple(ring.clone(), &parts, |r, _| r, descriptor)
    }

    /// E_1 × ... × E_n over A_1 × ... × A_n, each factor acting on its own component.
    pub fn product(parts: &[Arc<FiniteModule>]) -> Result<Arc<Self>> {
        assert!(!parts.is_empty(), "product of no modules");
        let rings: Vec<Arc<FiniteRing>> = parts.iter().map(|p| p.ring.clone()).collect();
        let ring = FiniteRing::product(&rings)?;
        let comps: Vec<Vec<usize>> = ring
            .elements()
            .map(|mut r| {
                let mut c = vec![0; rings.len()];
                for (k, f) in rings.iter().enumerate().rev() {
                    c[k] = r % f.order();
                    r /= f.order();
                }
                c
            })
            .collect();
        let descriptor = ModuleExpr::Prod(parts.iter().map(|p| p.descriptor.clone()).collect());
        Self::tuple(ring, parts, |r, k| comps[r][k], descriptor)
    }

    /// E/V with cosets indexed by least representative.
    pub fn quotient(v: &Submodule) -> Arc<Self> {
        let e = v.module();
        let descriptor = ModuleExpr::Quot {
            module: Box::new(e.descriptor.clone()),
            sub: v.generator_names(),
        };
        Self::quotient_with(e, v.elements(), descriptor)
    }

    pub(crate) fn quotient_with(e: &Arc<FiniteModule>, sub: &ElemSet, descriptor: ModuleExpr) -> Arc<Self> {
        let (proj, reps) = crate::finring::cosets(e.order, sub, |a, b| e.add(a, b));
        let order = reps.len();
        let mut add = vec![0u32; order * order];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * order + j] = proj[e.add(a, b)];
            }
        }
        let mut act = vec![0u32; e.ring.order() * order];
        for r in e.ring.elements() {
            for (i, &a) in reps.iter().enumerate() {
                act[r * order + i] = proj[e.act(r, a)];
            }
        }
        let names = reps.iter().map(|&r| e.names[r].clone()).collect();
        Self::from_tables(
            e.ring.clone(),
            order,
            add,
            act,
            names,
            ModuleKind::Quotient {
                parent: e.clone(),
                proj,
            },
            descriptor,
        )
    }

    /// Same carrier and action, but over a ring `ring` whose element `s` acts as
    /// `lift[s]` acts on `e`. Used for localizations and for E over A/ann(E).
    pub(crate) fn reindexed(
        e: &Arc<FiniteModule>,
        ring: Arc<FiniteRing>,
        lift: &[usize],
        carrier_proj: Option<(&[u32], &[usize])>,
        descriptor: ModuleExpr,
    ) -> Arc<Self> {
        match carrier_proj {
            None => {
                let order = e.order;
                let mut act = vec![0u32; ring.order() * order];
                for s in ring.elements() {
                    for x in 0..order {
                        act[s * order + x] = e.act(lift[s], x) as u32;
                    }
                }
                Self::from_tables(
                    ring,
                    order,
                    e.add.clone(),
                    act,
                    e.names.clone(),
                    ModuleKind::Restricted { parent: e.clone() },
                    descriptor,
                )
            }
            Some((proj, reps)) => {
                let order = reps.len();
                let mut add = vec![0u32; order * order];
                for (i, &a) in reps.iter().enumerate() {
                    for (j, &b) in reps.iter().enumerate() {
                        add[i * order + j] = proj[e.add(a, b)];
                    }
                }
                let mut act = vec![0u32; ring.order() * order];
                for s in ring.elements() {
                    for (i, &a) in reps.iter().enumerate() {
                        act[s * order + i] = proj[e.act(lift[s], a)];
                    }
                }
                let names = reps.iter().map(|&r| e.names[r].clone()).collect();
                Self::from_tables(
                    ring,
                    order,
                    add,
                    act,
                    names,
                    ModuleKind::Quotient {
                        parent: e.clone(),
                        proj: proj.to_vec(),
                    },
                    descriptor,
                )
            }
        }
    }

    /// A submodule regarded as a module in its own right.
    pub fn submodule_module(v: &Submodule) -> Arc<Self> {
        let e = v.module();
        let embed = v.members();
        let mut index = vec![u32::MAX; e.order];
        for (i, &x) in embed.iter().enumerate() {
            index[x] = i as u32;
        }
        let order = embed.len();
        let mut add = vec![0u32; order * order];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                add[i * order + j] = index[e.add(a, b)];
            }
        }
        let mut act = vec![0u32; e.ring.order() * order];
        for r in e.ring.elements() {
            for (i, &a) in embed.iter().enumerate() {
                act[r * order + i] = index[e.act(r, a)];
            }
        }
        let names = embed.iter().map(|&x| e.names[x].clone()).collect();
        let descriptor = ModuleExpr::Sub {
            module: Box::new(e.descriptor.clone()),
            gens: v.generator_names(),
        };
        Self::from_tables(
            e.ring.clone(),
            order,
            add,
            act,
            names,
            ModuleKind::Sub {
                parent: e.clone(),
                embed,
            },
            descriptor,
        )
    }

    /// E viewed over A/ann(E), where it is faithful.
    pub fn over_faithful_quotient(e: &Arc<FiniteModule>) -> Result<Arc<Self>> {
        let ann = annihilator(e, &sets::full(e.order));
        let ring = FiniteRing::quotient(&e.ring, &ann)?;
        let (_, reps) = crate::finring::cosets_of(&e.ring, &ann);
        let descriptor = ModuleExpr::Faithful(Box::new(e.descriptor.clone()));
        Ok(Self::reindexed(e, ring, &reps, None, descriptor))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn nonzero(&self) -> std::ops::Range<usize> {
        1..self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    /// The action `r·e`.
    #[inline]
    pub fn act(&self, r: usize, e: usize) -> usize {
        self.act[r * self.order + e] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names_of(&self, set: &ElemSet) -> Vec<String> {
        set.ones().map(|e| self.names[e].clone()).collect()
    }

    pub fn descriptor(&self) -> &ModuleExpr {
        &self.descriptor
    }

    pub fn same_as(&self, other: &FiniteModule) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.descriptor == other.descriptor)
    }

    /// Summands of a direct sum, free module or product, if this is one.
    pub fn summands(&self) -> Option<&[Arc<FiniteModule>]> {
        match &self.kind {
            ModuleKind::Tuple(parts) => Some(parts),
            _ => None,
        }
    }

    /// The natural projection `E → E/V` when this module was built as a quotient.
    pub fn quotient_parent(&self) -> Option<(&Arc<FiniteModule>, &[u32])> {
        match &self.kind {
            ModuleKind::Quotient { parent, proj } => Some((parent, proj)),
            _ => None,
        }
    }

    /// The inclusion `V → E` when this module was built from a submodule.
    pub fn sub_parent(&self) -> Option<(&Arc<FiniteModule>, &[usize])> {
        match &self.kind {
            ModuleKind::Sub { parent, embed } => Some((parent, embed)),
            _ => None,
        }
    }

    /// `aS = {a·s : s ∈ S}`.
    pub fn scale_set(&self, a: usize, s: &ElemSet) -> ElemSet {
        sets::from_iter(self.order, s.ones().map(|x| self.act(a, x)))
    }

    /// `aE`.
    pub fn scaled(&self, a: usize) -> ElemSet {
        sets::from_iter(self.order, self.elements().map(|x| self.act(a, x)))
    }

    /// Cyclic submodule `Ae`.
    pub fn cyclic_set(&self, e: usize) -> ElemSet {
        sets::from_iter(self.order, self.ring.elements().map(|r| self.act(r, e)))
    }

    /// Submodule generated by `gens`.
    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut span = sets::from_iter(self.order, [0]);
        for g in gens {
            if span.contains(g) {
                continue;
            }
            span = sets::join_subgroups(&span, &self.cyclic_set(g), |x, y| self.add(x, y));
        }
        span
    }

    /// `I·S`, the submodule generated by products `a·s` with `a ∈ I`, `s ∈ S`.
    pub fn ideal_times(&self, ideal: &ElemSet, s: &ElemSet) -> ElemSet {
        let products: Vec<usize> = ideal
            .ones()
            .flat_map(|a| s.ones().map(move |x| self.act(a, x)))
            .collect();
        self.span(products)
    }

    /// `IE`.
    pub fn ideal_times_module(&self, ideal: &ElemSet) -> ElemSet {
        self.ideal_times(ideal, &sets::full(self.order))
    }

    /// Reads an element in this module's canonical notation.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        let invalid = || Error::InvalidElement {
            text: text.to_string(),
            structure: self.descriptor.to_string(),
        };
        match &self.kind {
            ModuleKind::Cyclic { proj } => Ok(proj[self.ring.parse_element(text)?] as usize),
            ModuleKind::Tuple(parts) => {
                let texts = crate::finring::split_tuple(text).ok_or_else(invalid)?;
                if texts.len() != parts.len() {
                    return Err(invalid());
                }
                let mut idx = 0;
                for (t, p) in texts.iter().zip(parts) {
                    idx = idx * p.order + p.parse_element(t)?;
                }
                Ok(idx)
            }
            ModuleKind::Quotient { parent, proj } => Ok(proj[parent.parse_element(text)?] as usize),
            ModuleKind::Sub { parent, embed } => {
                let x = parent.parse_element(text)?;
                embed.iter().position(|&y| y == x).ok_or_else(invalid)
            }
            ModuleKind::Restricted { parent } => parent.parse_element(text),
        }
    }

    pub(crate) fn parse_elements(&self, texts: &[String]) -> Result<Vec<usize>> {
        texts.iter().map(|t| self.parse_element(t)).collect()
    }

    /// Exhaustive check of the module axioms; `Err` names the first violation.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let r = &self.ring;
        for x in self.elements() {
            if self.add(x, 0) != x {
                return Err(format!("{} + 0 != {}", self.names[x], self.names[x]));
            }
            if self.act(r.one(), x) != x {
                return Err(format!("1·{} != {}", self.names[x], self.names[x]));
            }
            for y in self.elements() {
                if self.add(x, y) != self.add(y, x) {
                    return Err(format!("addition not commutative at {x},{y}"));
                }
                for z in self.elements() {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(format!("addition not associative at {x},{y},{z}"));
                    }
                }
            }
        }
        for a in r.elements() {
            for x in self.elements() {
                for y in self.elements() {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return Err(format!("a(e+f) != ae+af at {a},{x},{y}"));
                    }
                }
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return Err(format!("(a+b)e != ae+be at {a},{b},{x}"));
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(format!("(ab)e != a(be) at {a},{b},{x}"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor)
    }
}

/// Builds the module described by a resolved expression.
pub fn construct_module(expr: &ModuleExpr) -> Result<Arc<FiniteModule>> {
    match expr {
        ModuleExpr::SelfMod(r) => Ok(FiniteModule::self_module(&construct_ring(r)?)),
        ModuleExpr::Cyclic { ring, ideal } => {
            let r = construct_ring(ring)?;
            let gens = r.parse_elements(ideal)?;
            FiniteModule::cyclic(&r, &ideal_generate(&r, &gens))
        }
        ModuleExpr::Free { ring, rank } => FiniteModule::free(&construct_ring(ring)?, *rank),
        ModuleExpr::DSum(parts) => {
            let parts = parts.iter().map(construct_module).collect::<Result<Vec<_>>>()?;
            FiniteModule::direct_sum(&parts)
        }
        ModuleExpr::Prod(parts) => {
            let parts = parts.iter().map(construct_module).collect::<Result<Vec<_>>>()?;
            FiniteModule::product(&parts)
        }
        ModuleExpr::Quot { module, sub } => {
            let e = construct_module(module)?;
            let gens = e.parse_elements(sub)?;
            Ok(FiniteModule::quotient(&submodule_generate(&e, &gens)))
        }
        ModuleExpr::Sub { module, gens } => {
            let e = construct_module(module)?;
            let gens = e.parse_elements(gens)?;
            Ok(FiniteModule::submodule_module(&submodule_generate(&e, &gens)))
        }
        ModuleExpr::Loc { module, mult } => {
            let e = construct_module(module)?;
            let ring = construct_ring(&mult.ring)?;
            if !ring.same_as(e.ring()) {
                return Err(Error::RingMismatch(
                    e.ring().descriptor().to_string(),
                    ring.descriptor().to_string(),
                ));
            }
            let gens = ring.parse_elements(&mult.gens)?;
            let t = crate::localize::saturate(&ring, &gens);
            let loc = crate::localize::localize_module(&e, &t)?;
            loc.module_image
                .ok_or_else(|| Error::Degenerate(format!("{expr} is the zero module over the zero ring")))
        }
        ModuleExpr::Faithful(m) => FiniteModule::over_faithful_quotient(&construct_module(m)?),
        ModuleExpr::Ref(id) => Err(Error::Resolution {
            name: id.name.clone(),
            line: id.pos.line,
            column: id.pos.column,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_module;

    fn build(text: &str) -> Arc<FiniteModule> {
        construct_module(&parse_module(text).unwrap()).unwrap()
    }

    #[test]
    fn z2_z4_over_z8() {
        let e = build("(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))");
        assert_eq!(e.order(), 8);
        assert_eq!(e.ring().order(), 8);
        e.verify_axioms().unwrap();
        let x = e.parse_element("<1,3>").unwrap();
        assert_eq!(e.name(x), "<1,3>");
        assert_eq!(e.name(e.act(2, x)), "<0,2>");
    }

    #[test]
    fn self_and_quotient() {
        let z12 = build("(self (Z 12))");
        assert_eq!(z12.order(), 12);
        let q = build("(quot (self (Z 4)) (sub {2}))");
        assert_eq!(q.order(), 2);
        q.verify_axioms().unwrap();
        assert_eq!(q.parse_element("3").unwrap(), 1);
    }

    #[test]
    fn mismatched_rings_rejected() {
        let err = construct_module(&parse_module("(dsum (self (Z 4)) (self (Z 8)))").unwrap()).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(..)));
    }

    #[test]
    fn free_product_sub_faithful() {
        let f = build("(free (Z 2) 2)");
        assert_eq!(f.order(), 4);
        f.verify_axioms().unwrap();
        let p = build("(prod (self (Z 2)) (self (Z 3)))");
        assert_eq!((p.order(), p.ring().order()), (6, 6));
        p.verify_axioms().unwrap();
        let s = build("(sub (self (Z 12)) {4 6})");
        assert_eq!(s.order(), 6);
        s.verify_axioms().unwrap();
        let g = build("(faithful (dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4))))");
        assert_eq!((g.order(), g.ring().order()), (8, 4));
        g.verify_axioms().unwrap();
    }

    #[test]
    fn polynomial_modules() {
        let e = build(
            "(dsum (self (polyquot (Z 2) [x y] {x^2 xy y^2})) \
             (cyclic (polyquot (Z 2) [x y] {x^2 xy y^2}) (ideal x)))",
        );
        assert_eq!(e.order(), 32);
        e.verify_axioms().unwrap();
        assert_eq!(e.parse_element("<0,1>").unwrap(), 1);
    }
}

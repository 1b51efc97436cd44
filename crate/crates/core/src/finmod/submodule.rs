use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::FiniteModule;
use crate::error::{Error, Result};
use crate::finring::{enumerate_ideals, Ideal, DEFAULT_IDEAL_CAP};
use crate::sets::{self, ElemSet};

/// Default cap on module carrier size for exhaustive submodule enumeration.
pub const DEFAULT_SUBMODULE_CARRIER_CAP: usize = 64;

/// Default cap on the number of submodules an enumeration may produce.
pub const DEFAULT_SUBMODULE_COUNT_CAP: usize = 4096;

/// A submodule, identified by its element set.
#[derive(Debug, Clone)]
pub struct Submodule {
    module: Arc<FiniteModule>,
    elements: ElemSet,
    generators: Option<Vec<usize>>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.module.same_as(&other.module)
    }
}

impl Eq for Submodule {}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

fn is_submodule(e: &FiniteModule, s: &ElemSet) -> bool {
    s.contains(0)
        && s.ones()
            .all(|x| s.ones().all(|y| s.contains(e.add(x, y))) && e.ring().elements().all(|r| s.contains(e.act(r, x))))
}

impl Submodule {
    pub(crate) fn from_set(module: &Arc<FiniteModule>, elements: ElemSet) -> Self {
        debug_assert!(is_submodule(module, &elements));
        Submodule {
            module: module.clone(),
            elements,
            generators: None,
        }
    }

    pub fn try_from_set(module: &Arc<FiniteModule>, elements: ElemSet) -> Option<Self> {
        is_submodule(module, &elements).then(|| Self::from_set(module, elements))
    }

    pub fn zero(module: &Arc<FiniteModule>) -> Self {
        Self::from_set(module, sets::from_iter(module.order(), [0]))
    }

    pub fn whole(module: &Arc<FiniteModule>) -> Self {
        Self::from_set(module, sets::full(module.order()))
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn members(&self) -> Vec<usize> {
        sets::members(&self.elements)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.contains(e)
    }

    pub fn len(&self) -> usize {
        self.elements.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.len() < self.module.order()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// The stored generators, or a greedily chosen generating set.
    pub fn generating_set(&self) -> Vec<usize> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        let e = &self.module;
        let mut span = sets::from_iter(e.order(), [0]);
        let mut gens = Vec::new();
        while span != self.elements {
            let best = self
                .elements
                .ones()
                .filter(|&x| !span.contains(x))
                .max_by_key(|&x| e.cyclic_set(x).count_ones(..))
                .expect("span is a proper subset");
            span = sets::join_subgroups(&span, &e.cyclic_set(best), |x, y| e.add(x, y));
            gens.push(best);
        }
        gens
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generating_set()
            .into_iter()
            .map(|x| self.module.name(x).to_string())
            .collect()
    }

    pub fn element_names(&self) -> Vec<String> {
        self.module.names_of(&self.elements)
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.element_names().join(", "))
    }
}

impl Serialize for Submodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.element_names().serialize(s)
    }
}

/// Smallest submodule containing `gens`; the generators are recorded.
pub fn submodule_generate(e: &Arc<FiniteModule>, gens: &[usize]) -> Submodule {
    Submodule {
        module: e.clone(),
        elements: e.span(gens.iter().copied()),
        generators: Some(gens.to_vec()),
    }
}

pub fn enumerate_submodules(e: &Arc<FiniteModule>) -> Result<Vec<Submodule>> {
    enumerate_submodules_capped(e, DEFAULT_SUBMODULE_CARRIER_CAP, DEFAULT_SUBMODULE_COUNT_CAP)
}

/// All submodules, ordered by size and then by element list.
pub fn enumerate_submodules_capped(
    e: &Arc<FiniteModule>,
    carrier_cap: usize,
    count_cap: usize,
) -> Result<Vec<Submodule>> {
    if e.order() > carrier_cap {
        return Err(Error::cap(
            "module order for submodule enumeration",
            carrier_cap,
            e.order(),
        ));
    }
    let mut cyclics: Vec<ElemSet> = Vec::new();
    for x in e.nonzero() {
        let c = e.cyclic_set(x);
        if !cyclics.contains(&c) {
            cyclics.push(c);
        }
    }
    let all = sets::lattice_closure(sets::from_iter(e.order(), [0]), &cyclics, |x, y| e.add(x, y), count_cap)?;
    Ok(all.into_iter().map(|s| Submodule::from_set(e, s)).collect())
}

/// `ann(S) = {a : aS = 0}` for a set of module elements.
pub fn annihilator(e: &Arc<FiniteModule>, s: &ElemSet) -> Ideal {
    let r = e.ring();
    let members: Vec<usize> = s.ones().collect();
    let set = sets::from_iter(
        r.order(),
        r.elements().filter(|&a| members.iter().all(|&x| e.act(a, x) == 0)),
    );
    Ideal::from_set(r, set)
}

/// `(V :_A K) = {a : aK ⊆ V}`.
pub fn residual_ideal(v: &Submodule, k: &Submodule) -> Result<Ideal> {
    if !v.module.same_as(&k.module) {
        return Err(Error::ModuleMismatch(
            v.module.descriptor().to_string(),
            k.module.descriptor().to_string(),
        ));
    }
    let e = &v.module;
    let r = e.ring();
    let members: Vec<usize> = k.elements.ones().collect();
    let set = sets::from_iter(
        r.order(),
        r.elements()
            .filter(|&a| members.iter().all(|&x| v.contains(e.act(a, x)))),
    );
    Ok(Ideal::from_set(r, set))
}

/// `(V :_E J) = {e : Je ⊆ V}`.
pub fn residual_submodule(v: &Submodule, j: &Ideal) -> Result<Submodule> {
    let e = &v.module;
    if !j.ring().same_as(e.ring()) {
        return Err(Error::RingMismatch(
            e.ring().descriptor().to_string(),
            j.ring().descriptor().to_string(),
        ));
    }
    let scalars = j.members();
    let set = sets::from_iter(
        e.order(),
        e.elements()
            .filter(|&x| scalars.iter().all(|&a| v.contains(e.act(a, x)))),
    );
    Ok(Submodule::from_set(e, set))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionInfo {
    pub elements: Vec<String>,
    #[serde(skip)]
    pub indices: Vec<usize>,
    pub is_torsion: bool,
    pub is_non_torsion: bool,
}

/// `T(E) = {e : ann(e) ≠ 0}`.
pub fn torsion_set(e: &Arc<FiniteModule>) -> TorsionInfo {
    let r = e.ring();
    let indices: Vec<usize> = e
        .elements()
        .filter(|&x| r.elements().any(|a| a != 0 && e.act(a, x) == 0))
        .collect();
    TorsionInfo {
        elements: indices.iter().map(|&x| e.name(x).to_string()).collect(),
        is_torsion: indices.len() == e.order(),
        is_non_torsion: indices.len() < e.order(),
        indices,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasicFlags {
    pub faithful: bool,
    /// Vacuously true for the zero module.
    pub torsion_free: bool,
    /// Exactly two submodules.
    pub simple: bool,
}

pub fn classify_module_basic(e: &Arc<FiniteModule>) -> BasicFlags {
    let r = e.ring();
    let faithful = r.elements().all(|a| a == 0 || e.elements().any(|x| e.act(a, x) != 0));
    let torsion_free = e.nonzero().all(|x| r.elements().all(|a| a == 0 || e.act(a, x) != 0));
    let simple = !e.is_zero() && e.nonzero().all(|x| e.cyclic_set(x).count_ones(..) == e.order());
    BasicFlags {
        faithful,
        torsion_free,
        simple,
    }
}

/// Submodule-level flags. `None` marks a quantifier the definition does not cover
/// (an improper submodule for the prime family, the zero submodule for second
/// and essential).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubmoduleClassification {
    pub is_prime: Option<bool>,
    pub is_classical_prime: Option<bool>,
    pub is_classical_one_absorbing_prime: Option<bool>,
    pub is_second: Option<bool>,
    pub is_pure: bool,
    pub is_essential: Option<bool>,
}

pub(crate) fn is_prime_submodule(v: &Submodule) -> bool {
    let e = &v.module;
    let r = e.ring();
    let colon: Vec<bool> = r
        .elements()
        .map(|a| e.elements().all(|x| v.contains(e.act(a, x))))
        .collect();
    v.is_proper()
        && r.elements()
            .all(|a| colon[a] || e.elements().all(|x| !v.contains(e.act(a, x)) || v.contains(x)))
}

pub(crate) fn is_classical_prime(v: &Submodule) -> bool {
    let e = &v.module;
    let r = e.ring();
    v.is_proper()
        && e.elements().filter(|&x| !v.contains(x)).all(|x| {
            r.elements().all(|a| {
                let ax = e.act(a, x);
                v.contains(ax)
                    || r.elements()
                        .all(|b| !v.contains(e.act(b, ax)) || v.contains(e.act(b, x)))
            })
        })
}

pub(crate) fn is_classical_one_absorbing(v: &Submodule) -> bool {
    let e = &v.module;
    let r = e.ring();
    let nonunits: Vec<usize> = r.elements().filter(|&a| !r.is_unit(a)).collect();
    v.is_proper()
        && e.elements().filter(|&x| !v.contains(x)).all(|x| {
            nonunits.iter().all(|&a| {
                nonunits.iter().all(|&b| {
                    let abx = e.act(r.mul(a, b), x);
                    v.contains(abx)
                        || nonunits
                            .iter()
                            .all(|&c| !v.contains(e.act(c, abx)) || v.contains(e.act(c, x)))
                })
            })
        })
}

pub(crate) fn is_second(v: &Submodule) -> bool {
    let e = &v.module;
    !v.is_zero()
        && e.ring().elements().all(|a| {
            let av = e.scale_set(a, &v.elements);
            av.count_ones(..) == 1 || av == v.elements
        })
}

pub(crate) fn is_pure_with(v: &Submodule, ideals: &[Ideal]) -> bool {
    let e = &v.module;
    let whole = sets::full(e.order());
    ideals.iter().all(|i| {
        let ie = e.ideal_times(i.elements(), &whole);
        sets::intersect(&ie, &v.elements) == e.ideal_times(i.elements(), &v.elements)
    })
}

pub(crate) fn is_essential(v: &Submodule) -> bool {
    let e = &v.module;
    !v.is_zero()
        && e.nonzero().all(|x| {
            let c = e.cyclic_set(x);
            c.ones().any(|y| y != 0 && v.contains(y))
        })
}

pub fn classify_submodule(v: &Submodule) -> Result<SubmoduleClassification> {
    let ideals = enumerate_ideals(v.module.ring(), DEFAULT_IDEAL_CAP)?;
    let proper = v.is_proper();
    let nonzero = !v.is_zero();
    Ok(SubmoduleClassification {
        is_prime: proper.then(|| is_prime_submodule(v)),
        is_classical_prime: proper.then(|| is_classical_prime(v)),
        is_classical_one_absorbing_prime: proper.then(|| is_classical_one_absorbing(v)),
        is_second: nonzero.then(|| is_second(v)),
        is_pure: is_pure_with(v, &ideals),
        is_essential: nonzero.then(|| is_essential(v)),
    })
}

/// `Spec(E)`, the prime submodules.
pub fn spec_enumerate(e: &Arc<FiniteModule>) -> Result<Vec<Submodule>> {
    Ok(enumerate_submodules(e)?
        .into_iter()
        .filter(is_prime_submodule)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_module;
    use crate::finmod::construct_module;
    use crate::finring::ideal_generate;

    fn build(text: &str) -> Arc<FiniteModule> {
        construct_module(&parse_module(text).unwrap()).unwrap()
    }

    fn ex1() -> Arc<FiniteModule> {
        build("(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))")
    }

    fn sub(e: &Arc<FiniteModule>, gens: &[&str]) -> Submodule {
        let g: Vec<usize> = gens.iter().map(|t| e.parse_element(t).unwrap()).collect();
        submodule_generate(e, &g)
    }

    #[test]
    fn generate_examples() {
        let e = ex1();
        assert_eq!(
            sub(&e, &["<1,1>"]).element_names(),
            vec!["<0,0>", "<0,2>", "<1,1>", "<1,3>"]
        );
        assert!(sub(&e, &[]).is_zero());
        let z12 = build("(self (Z 12))");
        assert_eq!(sub(&z12, &["4", "6"]).members(), (0..12).step_by(2).collect::<Vec<_>>());
    }

    #[test]
    fn submodule_counts() {
        assert_eq!(enumerate_submodules(&ex1()).unwrap().len(), 8);
        assert_eq!(enumerate_submodules(&build("(self (Z 12))")).unwrap().len(), 6);
        assert_eq!(enumerate_submodules(&build("(free (Z 2) 2)")).unwrap().len(), 5);
        let big = build("(free (Z 12) 2)");
        assert!(enumerate_submodules(&big).unwrap_err().is_cap());
    }

    #[test]
    fn residuals_in_ex1() {
        let e = ex1();
        let v = sub(&e, &["<1,0>"]);
        let whole = Submodule::whole(&e);
        assert_eq!(residual_ideal(&v, &whole).unwrap().members(), vec![0, 4]);
        let x = e.parse_element("<0,1>").unwrap();
        assert_eq!(annihilator(&e, &sets::from_iter(8, [x])).members(), vec![0, 4]);
        assert_eq!(annihilator(&e, &sets::from_iter(8, [0])).len(), 8);
        let r = e.ring().clone();
        let four = ideal_generate(&r, &[4]);
        assert_eq!(residual_submodule(&Submodule::zero(&e), &four).unwrap(), whole);
        let zero_ideal = Ideal::zero(&r);
        assert_eq!(residual_submodule(&v, &zero_ideal).unwrap(), whole);
        let z4 = build("(self (Z 4))");
        let two = ideal_generate(z4.ring(), &[2]);
        assert_eq!(
            residual_submodule(&Submodule::zero(&z4), &two).unwrap().members(),
            vec![0, 2]
        );
        let other = build("(self (Z 8))");
        assert!(matches!(
            residual_ideal(&v, &Submodule::whole(&other)),
            Err(Error::ModuleMismatch(..))
        ));
    }

    #[test]
    fn torsion_examples() {
        let t = torsion_set(&build("(self (Z 12))"));
        assert_eq!(t.indices, vec![0, 2, 3, 4, 6, 8, 9, 10]);
        assert!(t.is_non_torsion && !t.is_torsion);
        let t = torsion_set(&build("(free (Z 2) 2)"));
        assert_eq!(t.indices, vec![0]);
        let t = torsion_set(&ex1());
        assert!(t.is_torsion);
    }

    #[test]
    fn basic_flags() {
        let f = classify_module_basic(&ex1());
        assert_eq!((f.faithful, f.torsion_free, f.simple), (false, false, false));
        let f = classify_module_basic(&build("(free (Z 2) 2)"));
        assert_eq!((f.faithful, f.torsion_free, f.simple), (true, true, false));
        let f = classify_module_basic(&build("(dsum (self (Z 4)) (cyclic (Z 4) (ideal 2)))"));
        assert!(f.faithful && !f.torsion_free);
        assert!(classify_module_basic(&build("(cyclic (Z 4) (ideal 2))")).simple);
    }

    #[test]
    fn submodule_flags() {
        let e = build("(cyclic (polyquot (Z 2) [X] {X^3}) (ideal X^2))");
        let c = classify_submodule(&Submodule::zero(&e)).unwrap();
        assert_eq!(c.is_classical_one_absorbing_prime, Some(true));
        assert_eq!(c.is_classical_prime, Some(false));
        let e = ex1();
        let c = classify_submodule(&sub(&e, &["<1,0>"])).unwrap();
        assert!(c.is_pure);
        assert_eq!(c.is_essential, Some(false));
        let z2 = build("(cyclic (Z 4) (ideal 2))");
        let c = classify_submodule(&Submodule::whole(&z2)).unwrap();
        assert_eq!(c.is_second, Some(true));
        assert_eq!(c.is_prime, None);
    }

    #[test]
    fn prime_spectrum() {
        let z12 = build("(self (Z 12))");
        let spec: Vec<Vec<usize>> = spec_enumerate(&z12).unwrap().iter().map(|v| v.members()).collect();
        assert_eq!(spec, vec![vec![0, 3, 6, 9], (0..12).step_by(2).collect::<Vec<_>>()]);
        let f = build("(free (Z 2) 2)");
        assert_eq!(spec_enumerate(&f).unwrap().len(), 4);
        let simple = build("(cyclic (Z 4) (ideal 2))");
        let spec = spec_enumerate(&simple).unwrap();
        assert_eq!(spec.len(), 1);
        assert!(spec[0].is_zero());
    }
}

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::FiniteRing;
use crate::error::{Error, Result};
use crate::sets::{self, ElemSet};

/// An ideal of a finite ring, identified by its element set.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    elements: ElemSet,
    generators: Option<Vec<usize>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.ring.same_as(&other.ring)
    }
}

impl Eq for Ideal {}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl Ideal {
    /// Wraps an element set already known to be an ideal.
    pub(crate) fn from_set(ring: &Arc<FiniteRing>, elements: ElemSet) -> Self {
        debug_assert!(is_ideal(ring, &elements));
        Ideal {
            ring: ring.clone(),
            elements,
            generators: None,
        }
    }

    /// Checks the ideal axioms before wrapping.
    pub fn try_from_set(ring: &Arc<FiniteRing>, elements: ElemSet) -> Option<Self> {
        is_ideal(ring, &elements).then(|| Ideal {
            ring: ring.clone(),
            elements,
            generators: None,
        })
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Self::from_set(ring, sets::from_iter(ring.order(), [0]))
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Self {
        Self::from_set(ring, sets::full(ring.order()))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn members(&self) -> Vec<usize> {
        sets::members(&self.elements)
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.contains(a)
    }

    pub fn len(&self) -> usize {
        self.elements.count_ones(..)
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    /// The stored generators, or a greedily chosen generating set.
    pub fn generating_set(&self) -> Vec<usize> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        let mut span = sets::from_iter(self.ring.order(), [0]);
        let mut gens = Vec::new();
        while span != self.elements {
            // pick the element whose principal ideal adds the most
            let best = self
                .elements
                .ones()
                .filter(|&a| !span.contains(a))
                .max_by_key(|&a| principal_set(&self.ring, a).count_ones(..))
                .expect("span is a proper subset");
            span = sets::join_subgroups(&span, &principal_set(&self.ring, best), |x, y| self.ring.add(x, y));
            gens.push(best);
        }
        gens
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generating_set()
            .into_iter()
            .map(|a| self.ring.name(a).to_string())
            .collect()
    }

    pub fn element_names(&self) -> Vec<String> {
        self.ring.names_of(&self.elements)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.element_names().join(", "))
    }
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.element_names().serialize(s)
    }
}

fn is_ideal(ring: &FiniteRing, s: &ElemSet) -> bool {
    s.contains(0)
        && s.ones().all(|a| {
            s.ones().all(|b| s.contains(ring.add(a, b))) && ring.elements().all(|r| s.contains(ring.mul(r, a)))
        })
}

pub(crate) fn principal_set(ring: &FiniteRing, a: usize) -> ElemSet {
    sets::from_iter(ring.order(), ring.elements().map(|r| ring.mul(r, a)))
}

/// The principal ideal `aR`.
pub fn principal_ideal(ring: &Arc<FiniteRing>, a: usize) -> Ideal {
    Ideal {
        ring: ring.clone(),
        elements: principal_set(ring, a),
        generators: Some(vec![a]),
    }
}

pub(crate) fn generate_set(ring: &FiniteRing, gens: &[usize]) -> ElemSet {
    let mut span = sets::from_iter(ring.order(), [0]);
    for &g in gens {
        if span.contains(g) {
            continue;
        }
        span = sets::join_subgroups(&span, &principal_set(ring, g), |x, y| ring.add(x, y));
    }
    span
}

/// Smallest ideal containing `gens`; the generators are recorded.
pub fn ideal_generate(ring: &Arc<FiniteRing>, gens: &[usize]) -> Ideal {
    Ideal {
        ring: ring.clone(),
        elements: generate_set(ring, gens),
        generators: Some(gens.to_vec()),
    }
}

/// All ideals of `ring`, ordered by size and then by element list.
pub fn enumerate_ideals(ring: &Arc<FiniteRing>, cap: usize) -> Result<Vec<Ideal>> {
    if ring.order() > cap {
        return Err(Error::cap("ring order for ideal enumeration", cap, ring.order()));
    }
    let mut principal: Vec<ElemSet> = Vec::new();
    for a in ring.elements() {
        let p = principal_set(ring, a);
        if !principal.contains(&p) {
            principal.push(p);
        }
    }
    let all = sets::lattice_closure(
        sets::from_iter(ring.order(), [0]),
        &principal,
        |x, y| ring.add(x, y),
        usize::MAX,
    )?;
    Ok(all.into_iter().map(|s| Ideal::from_set(ring, s)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    /// `(I : J) = {a : aJ ⊆ I}`
    Quotient,
}

/// Exact sum, product, intersection or colon ideal.
pub fn ideal_arith(op: IdealOp, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !i.ring.same_as(&j.ring) {
        return Err(Error::RingMismatch(
            i.ring.descriptor().to_string(),
            j.ring.descriptor().to_string(),
        ));
    }
    let ring = &i.ring;
    let elements = match op {
        IdealOp::Sum => sets::join_subgroups(&i.elements, &j.elements, |x, y| ring.add(x, y)),
        IdealOp::Intersection => sets::intersect(&i.elements, &j.elements),
        IdealOp::Product => {
            let products: Vec<usize> = i
                .elements
                .ones()
                .flat_map(|a| j.elements.ones().map(move |b| ring.mul(a, b)))
                .collect();
            generate_set(ring, &products)
        }
        IdealOp::Quotient => colon_set(ring, &i.elements, &j.elements),
    };
    Ok(Ideal::from_set(ring, elements))
}

/// `{a : a·s ∈ target for every s in source}`.
pub(crate) fn colon_set(ring: &FiniteRing, target: &ElemSet, source: &ElemSet) -> ElemSet {
    let src: Vec<usize> = source.ones().collect();
    sets::from_iter(
        ring.order(),
        ring.elements()
            .filter(|&a| src.iter().all(|&s| target.contains(ring.mul(a, s)))),
    )
}

/// `ann(S) = {a : as = 0 for all s ∈ S}`.
pub fn annihilator_in_ring(ring: &Arc<FiniteRing>, s: &[usize]) -> Ideal {
    let zero = sets::from_iter(ring.order(), [0]);
    let src = sets::from_iter(ring.order(), s.iter().copied());
    Ideal::from_set(ring, colon_set(ring, &zero, &src))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::ast::RingExpr;
    use crate::finring::construct_ring;

    fn z(n: i64) -> Arc<FiniteRing> {
        FiniteRing::integers_mod(n).unwrap()
    }

    fn multiples(n: usize, d: usize) -> Vec<usize> {
        (0..n).step_by(d).collect()
    }

    #[test]
    fn generate_in_z12() {
        let r = z(12);
        assert_eq!(ideal_generate(&r, &[6]).members(), vec![0, 6]);
        assert_eq!(ideal_generate(&r, &[4, 6]).members(), multiples(12, 2));
        assert_eq!(ideal_generate(&z(8), &[]).members(), vec![0]);
    }

    #[test]
    fn maximal_ideal_of_local_ring() {
        let r = construct_ring(&RingExpr::PolyQuot {
            base: Box::new(RingExpr::Zn(2)),
            vars: vec!["x".into(), "y".into()],
            relations: vec!["x^2".into(), "xy".into(), "y^2".into()],
        })
        .unwrap();
        let x = r.parse_element("x").unwrap();
        let y = r.parse_element("y").unwrap();
        let m = ideal_generate(&r, &[x, y]);
        assert_eq!(m.element_names(), vec!["0", "x", "y", "x+y"]);
        assert_eq!(annihilator_in_ring(&r, &[x]), m);
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(enumerate_ideals(&z(12), 64).unwrap().len(), 6);
        assert_eq!(enumerate_ideals(&z(8), 64).unwrap().len(), 4);
        assert_eq!(enumerate_ideals(&z(2), 64).unwrap().len(), 2);
        assert!(enumerate_ideals(&z(70), 64).unwrap_err().is_cap());
    }

    #[test]
    fn arithmetic_in_z12() {
        let r = z(12);
        let two = ideal_generate(&r, &[2]);
        let three = ideal_generate(&r, &[3]);
        let meet = ideal_arith(IdealOp::Intersection, &two, &three).unwrap();
        assert_eq!(meet.members(), multiples(12, 6));
        let sum = ideal_arith(IdealOp::Sum, &two, &three).unwrap();
        assert_eq!(sum, Ideal::whole(&r));
        let colon = ideal_arith(IdealOp::Quotient, &two, &three).unwrap();
        assert_eq!(colon, two);
        let prod = ideal_arith(IdealOp::Product, &two, &three).unwrap();
        assert_eq!(prod.members(), multiples(12, 6));
        let other = Ideal::zero(&z(8));
        assert!(matches!(
            ideal_arith(IdealOp::Sum, &two, &other),
            Err(Error::RingMismatch(..))
        ));
    }

    #[test]
    fn annihilators() {
        let r = z(12);
        assert_eq!(annihilator_in_ring(&r, &[6]).members(), multiples(12, 2));
        assert_eq!(annihilator_in_ring(&z(8), &[1]).members(), vec![0]);
    }

    #[test]
    fn greedy_generators_regenerate() {
        let r = z(12);
        for i in enumerate_ideals(&r, 64).unwrap() {
            let g = i.generating_set();
            assert_eq!(ideal_generate(&r, &g), i);
        }
    }
}

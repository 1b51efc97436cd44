use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::ideal::{colon_set, principal_set, Ideal};
use super::FiniteRing;
use crate::error::{Error, Result};
use crate::sets::{self, ElemSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialElements {
    pub units: Vec<usize>,
    pub idempotents: Vec<usize>,
    pub nilpotents: Vec<usize>,
}

pub fn special_elements(ring: &FiniteRing) -> SpecialElements {
    SpecialElements {
        units: ring.elements().filter(|&a| ring.is_unit(a)).collect(),
        idempotents: ring.elements().filter(|&a| ring.mul(a, a) == a).collect(),
        nilpotents: ring.elements().filter(|&a| is_nilpotent(ring, a)).collect(),
    }
}

fn is_nilpotent(ring: &FiniteRing, a: usize) -> bool {
    let mut x = a;
    for _ in 0..ring.order() {
        if x == 0 {
            return true;
        }
        x = ring.mul(x, a);
    }
    x == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealClassification {
    pub is_prime: bool,
    pub is_maximal: bool,
    pub is_one_absorbing_prime: bool,
    pub is_semiprime: bool,
    pub is_principal: bool,
}

pub fn classify_ideal(ring: &FiniteRing, ideal: &Ideal) -> IdealClassification {
    let is_principal = ring.elements().any(|a| principal_set(ring, a) == *ideal.elements());
    if !ideal.is_proper() {
        return IdealClassification {
            is_prime: false,
            is_maximal: false,
            is_one_absorbing_prime: false,
            is_semiprime: false,
            is_principal,
        };
    }
    let inside = |a: usize| ideal.contains(a);
    let n = ring.order();
    let is_prime = (0..n).all(|a| (0..n).all(|b| !inside(ring.mul(a, b)) || inside(a) || inside(b)));
    // R/I is a field exactly when every a outside I is invertible modulo I
    let is_maximal = (0..n)
        .filter(|&a| !inside(a))
        .all(|a| (0..n).any(|x| inside(ring.sub(ring.mul(a, x), ring.one()))));
    let nonunits: Vec<usize> = (0..n).filter(|&a| !ring.is_unit(a)).collect();
    let is_one_absorbing_prime = nonunits.iter().all(|&a| {
        nonunits.iter().all(|&b| {
            let ab = ring.mul(a, b);
            inside(ab) || nonunits.iter().all(|&c| !inside(ring.mul(ab, c)) || inside(c))
        })
    });
    let is_semiprime = (0..n).all(|a| !inside(ring.mul(a, a)) || inside(a));
    IdealClassification {
        is_prime,
        is_maximal,
        is_one_absorbing_prime,
        is_semiprime,
        is_principal,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingClassification {
    pub is_field: bool,
    pub is_domain: bool,
    pub is_reduced: bool,
    pub is_vn_regular: bool,
    pub is_baer_kist: bool,
    pub is_principal_ideal_ring: bool,
    pub is_local: bool,
}

pub fn classify_ring(ring: &FiniteRing) -> RingClassification {
    let n = ring.order();
    let is_field = (1..n).all(|a| ring.is_unit(a));
    let is_domain = (1..n).all(|a| (1..n).all(|b| ring.mul(a, b) != 0));
    let is_reduced = (1..n).all(|a| !is_nilpotent(ring, a));
    let is_vn_regular = (0..n).all(|a| (0..n).any(|x| ring.mul(ring.mul(a, x), a) == a));
    let is_baer_kist = baer_kist_witnesses(ring).is_ok();
    let nonunits: Vec<usize> = (0..n).filter(|&a| !ring.is_unit(a)).collect();
    let is_local = nonunits
        .iter()
        .all(|&a| nonunits.iter().all(|&b| !ring.is_unit(ring.add(a, b))));
    RingClassification {
        is_field,
        is_domain,
        is_reduced,
        is_vn_regular,
        is_baer_kist,
        is_principal_ideal_ring: is_principal_ideal_ring(ring),
        is_local,
    }
}

/// Every ideal of a finite ring is finitely generated, so it is enough that each
/// two-generated ideal `(a) + (b)` is principal.
fn is_principal_ideal_ring(ring: &FiniteRing) -> bool {
    let principal: Vec<ElemSet> = ring.elements().map(|a| principal_set(ring, a)).collect();
    let lookup: HashSet<&ElemSet> = principal.iter().collect();
    let distinct: Vec<&ElemSet> = lookup.iter().copied().collect();
    distinct.iter().enumerate().all(|(i, p)| {
        distinct[i + 1..].iter().all(|q| {
            let joined = sets::join_subgroups(p, q, |x, y| ring.add(x, y));
            lookup.contains(&joined)
        })
    })
}

/// For each element `a`, an idempotent `b` with `ann(a) = bR`; `Err(a)` names the
/// first element admitting none.
pub fn baer_kist_witnesses(ring: &FiniteRing) -> std::result::Result<Vec<(usize, usize)>, usize> {
    let zero = sets::from_iter(ring.order(), [0]);
    let idempotent_ideals: Vec<(usize, ElemSet)> = ring
        .elements()
        .filter(|&b| ring.mul(b, b) == b)
        .map(|b| (b, principal_set(ring, b)))
        .collect();
    ring.elements()
        .map(|a| {
            let ann = colon_set(ring, &zero, &sets::from_iter(ring.order(), [a]));
            idempotent_ideals
                .iter()
                .find(|(_, s)| *s == ann)
                .map(|(b, _)| (a, *b))
                .ok_or(a)
        })
        .collect()
}

/// A reduced finite ring split into fields along its primitive idempotents.
#[derive(Debug, Clone)]
pub struct FieldDecomposition {
    pub idempotents: Vec<usize>,
    pub factors: Vec<Arc<FiniteRing>>,
    /// `projections[i][a]` is the image of `a` in `factors[i]`.
    pub projections: Vec<Vec<usize>>,
}

impl FieldDecomposition {
    /// Confirms that `a ↦ (π_i(a))_i` is a bijective ring homomorphism onto the
    /// product of the factors.
    pub fn reconstructs(&self, ring: &FiniteRing) -> bool {
        let image = |a: usize| -> Vec<usize> { self.projections.iter().map(|p| p[a]).collect() };
        let images: Vec<Vec<usize>> = ring.elements().map(image).collect();
        let distinct: HashSet<&Vec<usize>> = images.iter().collect();
        let product_order: usize = self.factors.iter().map(|f| f.order()).product();
        if distinct.len() != ring.order() || product_order != ring.order() {
            return false;
        }
        ring.elements().all(|a| {
            ring.elements().all(|b| {
                let s = &images[ring.add(a, b)];
                let m = &images[ring.mul(a, b)];
                self.factors.iter().enumerate().all(|(i, f)| {
                    s[i] == f.add(images[a][i], images[b][i]) && m[i] == f.mul(images[a][i], images[b][i])
                })
            })
        }) && self
            .factors
            .iter()
            .enumerate()
            .all(|(i, f)| images[ring.one()][i] == f.one())
    }
}

pub fn field_decompose(ring: &Arc<FiniteRing>) -> Result<FieldDecomposition> {
    if (1..ring.order()).any(|a| is_nilpotent(ring, a)) {
        return Err(Error::NotSemisimple(ring.descriptor().to_string()));
    }
    let idempotents: Vec<usize> = ring.elements().filter(|&e| e != 0 && ring.mul(e, e) == e).collect();
    // primitive: no nonzero idempotent strictly below
    let primitive: Vec<usize> = idempotents
        .iter()
        .copied()
        .filter(|&e| idempotents.iter().all(|&f| f == e || ring.mul(f, e) != f))
        .collect();
    let mut factors = Vec::new();
    let mut projections = Vec::new();
    for &e in &primitive {
        let complement = ring.sub(ring.one(), e);
        let kernel = Ideal::from_set(ring, principal_set(ring, complement));
        let factor = FiniteRing::quotient(ring, &kernel)?;
        let (proj, _) = super::cosets(ring.order(), kernel.elements(), |a, b| ring.add(a, b));
        factors.push(factor);
        projections.push(proj.into_iter().map(|x| x as usize).collect());
    }
    Ok(FieldDecomposition {
        idempotents: primitive,
        factors,
        projections,
    })
}

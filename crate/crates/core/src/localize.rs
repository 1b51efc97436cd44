//! Localization of finite rings and modules at multiplicative sets.
//!
//! For a finite ring every fraction `a/t` already has a representative with
//! denominator one: multiplication by `t` is injective, hence bijective, on
//! `A/K` where `K = {a : ta = 0 for some t ∈ T}`. So `T⁻¹A` is computed as the
//! quotient `A/K` and `T⁻¹E` as `E/K_E`.

use std::sync::Arc;

use serde::Serialize;

use crate::dsl::ast::{ModuleExpr, MultExpr};
use crate::error::Result;
use crate::finmod::FiniteModule;
use crate::finring::{FiniteRing, Ideal};
use crate::sets::{self, ElemSet};

/// A multiplicatively closed subset containing one.
#[derive(Debug, Clone)]
pub struct MultiplicativeSet {
    ring: Arc<FiniteRing>,
    elements: ElemSet,
    generators: Vec<usize>,
}

impl MultiplicativeSet {
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

    pub fn contains_zero(&self) -> bool {
        self.elements.contains(0)
    }

    pub fn descriptor(&self) -> MultExpr {
        MultExpr {
            ring: self.ring.descriptor().clone(),
            gens: self.generators.iter().map(|&g| self.ring.name(g).to_string()).collect(),
        }
    }
}

/// Smallest multiplicatively closed set containing `gens` and one.
pub fn saturate(ring: &Arc<FiniteRing>, gens: &[usize]) -> MultiplicativeSet {
    let mut elements = sets::from_iter(ring.order(), [ring.one()]);
    let mut frontier = vec![ring.one()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ring.mul(x, g);
            if !elements.contains(y) {
                elements.insert(y);
                frontier.push(y);
            }
        }
    }
    MultiplicativeSet {
        ring: ring.clone(),
        elements,
        generators: gens.to_vec(),
    }
}

/// `A ∖ P` for a prime ideal `P`, the set inverted by `A_P`. `None` if `P` is not prime.
pub fn prime_complement(p: &Ideal) -> Option<MultiplicativeSet> {
    let ring = p.ring();
    let outside: Vec<usize> = ring.elements().filter(|&a| !p.contains(a)).collect();
    let closed = p.is_proper()
        && outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !p.contains(ring.mul(a, b))));
    closed.then(|| MultiplicativeSet {
        ring: ring.clone(),
        elements: sets::from_iter(ring.order(), outside.iter().copied()),
        generators: outside,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationResult {
    #[serde(skip)]
    pub ring_image: Option<Arc<FiniteRing>>,
    #[serde(skip)]
    pub module_image: Option<Arc<FiniteModule>>,
    /// Image of each element under the canonical map; all zero when trivial.
    pub canonical_map: Vec<usize>,
    pub kernel: Vec<String>,
    #[serde(skip)]
    pub kernel_set: ElemSet,
    pub is_trivial: bool,
    pub image_order: usize,
}

fn ring_kernel(ring: &FiniteRing, t: &MultiplicativeSet) -> ElemSet {
    let ts = t.members();
    sets::from_iter(
        ring.order(),
        ring.elements().filter(|&a| ts.iter().any(|&s| ring.mul(s, a) == 0)),
    )
}

/// `T⁻¹A` as `A/K`.
pub fn localize_ring(ring: &Arc<FiniteRing>, t: &MultiplicativeSet) -> Result<LocalizationResult> {
    let kernel_set = ring_kernel(ring, t);
    let kernel = ring.names_of(&kernel_set);
    if t.contains_zero() {
        return Ok(LocalizationResult {
            ring_image: None,
            module_image: None,
            canonical_map: vec![0; ring.order()],
            kernel,
            kernel_set,
            is_trivial: true,
            image_order: 1,
        });
    }
    let k = Ideal::try_from_set(ring, kernel_set.clone()).expect("saturation kernel is an ideal");
    let image = FiniteRing::quotient(ring, &k)?;
    let (proj, _) = crate::finring::cosets_of(ring, &k);
    let canonical_map: Vec<usize> = proj.iter().map(|&x| x as usize).collect();
    assert!(
        t.members().iter().all(|&s| image.is_unit(canonical_map[s])),
        "localization left a denominator non-invertible"
    );
    Ok(LocalizationResult {
        image_order: image.order(),
        ring_image: Some(image),
        module_image: None,
        canonical_map,
        kernel,
        kernel_set,
        is_trivial: false,
    })
}

/// `T⁻¹E` as `E/K_E` over `T⁻¹A`.
pub fn localize_module(e: &Arc<FiniteModule>, t: &MultiplicativeSet) -> Result<LocalizationResult> {
    let ring = e.ring();
    let ts = t.members();
    let kernel_set = sets::from_iter(
        e.order(),
        e.elements().filter(|&x| ts.iter().any(|&s| e.act(s, x) == 0)),
    );
    let kernel = e.names_of(&kernel_set);
    let ring_loc = localize_ring(ring, t)?;
    let Some(ring_image) = ring_loc.ring_image else {
        return Ok(LocalizationResult {
            ring_image: None,
            module_image: None,
            canonical_map: vec![0; e.order()],
            kernel,
            kernel_set,
            is_trivial: true,
            image_order: 1,
        });
    };
    let (_, ring_reps) = crate::finring::cosets_of(
        ring,
        &Ideal::try_from_set(ring, ring_loc.kernel_set.clone()).expect("ideal"),
    );
    let (proj, reps) = crate::finring::cosets(e.order(), &kernel_set, |a, b| e.add(a, b));
    let descriptor = ModuleExpr::Loc {
        module: Box::new(e.descriptor().clone()),
        mult: t.descriptor(),
    };
    let image = FiniteModule::reindexed(e, ring_image.clone(), &ring_reps, Some((&proj, &reps)), descriptor);
    let is_trivial = image.is_zero();
    for &s in &ts {
        let s_img = ring_loc.canonical_map[s];
        let hit = sets::from_iter(image.order(), image.elements().map(|x| image.act(s_img, x)));
        assert_eq!(
            hit.count_ones(..),
            image.order(),
            "denominator does not act invertibly on the localized module"
        );
    }
    Ok(LocalizationResult {
        image_order: image.order(),
        ring_image: Some(ring_image),
        module_image: Some(image),
        canonical_map: proj.iter().map(|&x| x as usize).collect(),
        kernel,
        kernel_set,
        is_trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_module;
    use crate::finmod::construct_module;
    use crate::finring::ideal_generate;

    fn z(n: i64) -> Arc<FiniteRing> {
        FiniteRing::integers_mod(n).unwrap()
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturate(&z(12), &[4]).members(), vec![1, 4]);
        assert_eq!(saturate(&z(6), &[3]).members(), vec![1, 3]);
        assert_eq!(saturate(&z(6), &[]).members(), vec![1]);
        assert!(saturate(&z(8), &[2]).contains_zero());
    }

    #[test]
    fn ring_localizations() {
        let r = z(12);
        let loc = localize_ring(&r, &saturate(&r, &[4])).unwrap();
        assert_eq!(loc.ring_image.as_ref().unwrap().order(), 3);
        assert_eq!(sets::members(&loc.kernel_set), vec![0, 3, 6, 9]);
        let r = z(6);
        let loc = localize_ring(&r, &saturate(&r, &[3])).unwrap();
        assert_eq!(loc.image_order, 2);
        assert_eq!(sets::members(&loc.kernel_set), vec![0, 2, 4]);
        let loc = localize_ring(&r, &saturate(&r, &[])).unwrap();
        assert_eq!(loc.image_order, 6);
        assert_eq!(loc.canonical_map, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn module_localizations() {
        let e = construct_module(&parse_module("(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))").unwrap())
            .unwrap();
        let loc = localize_module(&e, &saturate(e.ring(), &[2])).unwrap();
        assert!(loc.is_trivial);
        let z12 = construct_module(&parse_module("(self (Z 12))").unwrap()).unwrap();
        let loc = localize_module(&z12, &saturate(z12.ring(), &[4])).unwrap();
        let m = loc.module_image.unwrap();
        assert_eq!((m.order(), m.ring().order()), (3, 3));
        m.verify_axioms().unwrap();
        let loc = localize_module(&e, &saturate(e.ring(), &[])).unwrap();
        assert_eq!(loc.image_order, 8);
    }

    #[test]
    fn prime_complement_localizes_at_prime() {
        let r = z(12);
        let p = ideal_generate(&r, &[3]);
        let t = prime_complement(&p).unwrap();
        let loc = localize_ring(&r, &t).unwrap();
        assert_eq!(loc.image_order, 3);
        assert!(prime_complement(&ideal_generate(&r, &[6])).is_none());
    }
}

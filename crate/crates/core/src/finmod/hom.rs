use std::sync::Arc;

use super::{FiniteModule, Submodule};
use crate::error::{Error, Result};
use crate::sets;

/// Default cap on `|F|^g` for hom enumeration, `g` the size of the generating set.
pub const DEFAULT_HOM_CAP: usize = 1_000_000;

/// An A-linear map between two finite modules over the same ring.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    source: Arc<FiniteModule>,
    target: Arc<FiniteModule>,
    map: Vec<usize>,
}

impl ModuleHom {
    /// Checks additivity and linearity before wrapping.
    pub fn try_new(source: &Arc<FiniteModule>, target: &Arc<FiniteModule>, map: Vec<usize>) -> Option<Self> {
        let ok = map.len() == source.order()
            && source.ring().same_as(target.ring())
            && source.elements().all(|x| {
                source
                    .elements()
                    .all(|y| map[source.add(x, y)] == target.add(map[x], map[y]))
                    && source
                        .ring()
                        .elements()
                        .all(|a| map[source.act(a, x)] == target.act(a, map[x]))
            });
        ok.then(|| ModuleHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    /// The projection `E → E/V` of a module built as a quotient.
    pub fn projection(quotient: &Arc<FiniteModule>) -> Option<Self> {
        let (parent, proj) = quotient.quotient_parent()?;
        Some(ModuleHom {
            source: parent.clone(),
            target: quotient.clone(),
            map: proj.iter().map(|&x| x as usize).collect(),
        })
    }

    /// The inclusion `V → E` of a module built from a submodule.
    pub fn inclusion(sub: &Arc<FiniteModule>) -> Option<Self> {
        let (parent, embed) = sub.sub_parent()?;
        Some(ModuleHom {
            source: sub.clone(),
            target: parent.clone(),
            map: embed.to_vec(),
        })
    }

    pub fn source(&self) -> &Arc<FiniteModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteModule> {
        &self.target
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Submodule {
        let s = &self.source;
        Submodule::from_set(
            s,
            sets::from_iter(s.order(), s.elements().filter(|&x| self.map[x] == 0)),
        )
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_set(
            &self.target,
            sets::from_iter(self.target.order(), self.map.iter().copied()),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }
}

pub fn enumerate_homs(e: &Arc<FiniteModule>, f: &Arc<FiniteModule>) -> Result<Vec<ModuleHom>> {
    enumerate_homs_capped(e, f, DEFAULT_HOM_CAP)
}

/// All A-linear maps `E → F`, found by assigning images to a generating set of
/// `E` one generator at a time and discarding inconsistent partial maps.
pub fn enumerate_homs_capped(e: &Arc<FiniteModule>, f: &Arc<FiniteModule>, cap: usize) -> Result<Vec<ModuleHom>> {
    if !e.ring().same_as(f.ring()) {
        return Err(Error::RingMismatch(
            e.ring().descriptor().to_string(),
            f.ring().descriptor().to_string(),
        ));
    }
    let gens = Submodule::whole(e).generating_set();
    let space = (0..gens.len()).try_fold(1usize, |acc, _| acc.checked_mul(f.order()));
    match space {
        Some(s) if s <= cap => {}
        _ => return Err(Error::cap("hom search space", cap, space.unwrap_or(usize::MAX))),
    }
    let mut partial = vec![usize::MAX; e.order()];
    partial[0] = 0;
    let mut out = Vec::new();
    extend(e, f, &gens, &partial, &mut out);
    Ok(out)
}

fn extend(e: &Arc<FiniteModule>, f: &Arc<FiniteModule>, gens: &[usize], partial: &[usize], out: &mut Vec<ModuleHom>) {
    let Some((&g, rest)) = gens.split_first() else {
        out.push(ModuleHom {
            source: e.clone(),
            target: f.clone(),
            map: partial.to_vec(),
        });
        return;
    };
    let ring = e.ring();
    let defined: Vec<usize> = e.elements().filter(|&x| partial[x] != usize::MAX).collect();
    for y in f.elements() {
        // every element of the enlarged span is s + a·g with s already mapped
        let mut next = partial.to_vec();
        let consistent = defined.iter().all(|&s| {
            ring.elements().all(|a| {
                let x = e.add(s, e.act(a, g));
                let v = f.add(partial[s], f.act(a, y));
                if next[x] == usize::MAX {
                    next[x] = v;
                    true
                } else {
                    next[x] == v
                }
            })
        });
        if consistent {
            extend(e, f, rest, &next, out);
        }
    }
}

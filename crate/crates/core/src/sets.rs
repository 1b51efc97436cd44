//! Element sets over a finite carrier and the subgroup-lattice closure shared by
//! ideal and submodule enumeration.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Subset of a finite carrier, one bit per element index.
pub type ElemSet = FixedBitSet;

pub(crate) fn full(n: usize) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub(crate) fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(n);
    for x in it {
        s.insert(x);
    }
    s
}

/// Elements of `s` in ascending index order.
pub fn members(s: &ElemSet) -> Vec<usize> {
    s.ones().collect()
}

pub(crate) fn intersect(a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut r = a.clone();
    r.intersect_with(b);
    r
}

/// Sum `a + b` of two additive subgroups of a finite abelian group.
///
/// The result is assembled coset by coset: every `c` of `b` not already covered
/// contributes the translate `a + c`.
pub(crate) fn join_subgroups(a: &ElemSet, b: &ElemSet, add: impl Fn(usize, usize) -> usize) -> ElemSet {
    let mut out = a.clone();
    let base: Vec<usize> = a.ones().collect();
    for c in b.ones() {
        if out.contains(c) {
            continue;
        }
        for &s in &base {
            out.insert(add(s, c));
        }
    }
    out
}

/// Every sum of the given cyclic subobjects, starting from the zero subobject.
///
/// Each subobject of a finite module is a sum of cyclic ones, so a breadth-first
/// walk that joins one cyclic at a time reaches the whole lattice.
pub(crate) fn lattice_closure(
    zero: ElemSet,
    cyclics: &[ElemSet],
    add: impl Fn(usize, usize) -> usize,
    cap: usize,
) -> Result<Vec<ElemSet>> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut out = vec![zero.clone()];
    seen.insert(zero);
    let mut cursor = 0;
    while cursor < out.len() {
        let current = out[cursor].clone();
        cursor += 1;
        for c in cyclics {
            if c.is_subset(&current) {
                continue;
            }
            let joined = join_subgroups(&current, c, &add);
            if seen.insert(joined.clone()) {
                out.push(joined);
                if out.len() > cap {
                    return Err(Error::cap("lattice size", cap, out.len()));
                }
            }
        }
    }
    out.sort_by(|x, y| {
        x.count_ones(..)
            .cmp(&y.count_ones(..))
            .then_with(|| members(x).cmp(&members(y)))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_in_z12() {
        let add = |a: usize, b: usize| (a + b) % 12;
        let two = from_iter(12, (0..12).step_by(4));
        let three = from_iter(12, (0..12).step_by(6));
        let j = join_subgroups(&two, &three, add);
        assert_eq!(members(&j), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn closure_of_z12_subgroups() {
        let add = |a: usize, b: usize| (a + b) % 12;
        let cyclics: Vec<ElemSet> = (0..12).map(|g| from_iter(12, (0..12).map(|k| (k * g) % 12))).collect();
        let all = lattice_closure(from_iter(12, [0]), &cyclics, add, 100).unwrap();
        assert_eq!(all.len(), 6);
        assert!(lattice_closure(from_iter(12, [0]), &cyclics, add, 3).is_err());
    }
}

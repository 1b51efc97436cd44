//! Brute-force oracles. They read only the operation tables of a ring or module
//! and share no code with the library's decision procedures.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use annmod::dsl::{parse_module, parse_ring};
use annmod::finmod::{construct_module, FiniteModule};
use annmod::finring::{construct_ring, FiniteRing};

pub type Set = BTreeSet<usize>;

pub fn module(text: &str) -> Arc<FiniteModule> {
    construct_module(&parse_module(text).unwrap()).unwrap()
}

pub fn ring(text: &str) -> Arc<FiniteRing> {
    construct_ring(&parse_ring(text).unwrap()).unwrap()
}

pub const LOCAL: &str = "(polyquot (Z 2) [x y] {x^2 xy y^2})";
pub const EX1: &str = "(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))";

/// Closes `seed` under addition and the given scalar action until nothing changes.
fn close(seed: Set, add: impl Fn(usize, usize) -> usize, scalars: usize, act: impl Fn(usize, usize) -> usize) -> Set {
    let mut s = seed;
    s.insert(0);
    loop {
        let mut next = s.clone();
        for &a in &s {
            for &b in &s {
                next.insert(add(a, b));
            }
            for r in 0..scalars {
                next.insert(act(r, a));
            }
        }
        if next.len() == s.len() {
            return s;
        }
        s = next;
    }
}

fn lattice(order: usize, close_with: impl Fn(Set) -> Set) -> Vec<Set> {
    let mut found = vec![close_with(Set::new())];
    let mut k = 0;
    while k < found.len() {
        for a in 0..order {
            if found[k].contains(&a) {
                continue;
            }
            let mut seed = found[k].clone();
            seed.insert(a);
            let c = close_with(seed);
            if !found.contains(&c) {
                found.push(c);
            }
        }
        k += 1;
    }
    found
}

pub fn ideals(r: &FiniteRing) -> Vec<Set> {
    let n = r.order();
    lattice(n, |s| close(s, |a, b| r.add(a, b), n, |x, a| r.mul(x, a)))
}

pub fn submodules(e: &FiniteModule) -> Vec<Set> {
    let n = e.ring().order();
    lattice(e.order(), |s| close(s, |a, b| e.add(a, b), n, |x, a| e.act(x, a)))
}

pub fn ann(e: &FiniteModule, s: &Set) -> Set {
    (0..e.ring().order())
        .filter(|&a| s.iter().all(|&x| e.act(a, x) == 0))
        .collect()
}

pub fn ann_of(e: &FiniteModule, x: usize) -> Set {
    ann(e, &Set::from([x]))
}

/// `IE`, the additive span of all `i·x`.
pub fn ideal_times(e: &FiniteModule, i: &Set) -> Set {
    let products: Set = i
        .iter()
        .flat_map(|&a| (0..e.order()).map(move |x| e.act(a, x)))
        .collect();
    close(products, |a, b| e.add(a, b), 0, |_, a| a)
}

/// Annihilator multiplication by trying every ideal of the ring.
pub fn ann_mult(e: &FiniteModule) -> bool {
    let candidates: Vec<Set> = ideals(e.ring()).iter().map(|i| ann(e, &ideal_times(e, i))).collect();
    (0..e.order()).all(|x| candidates.contains(&ann_of(e, x)))
}

pub fn whole(e: &FiniteModule) -> Set {
    (0..e.order()).collect()
}

pub fn multiplication(e: &FiniteModule) -> bool {
    let all = whole(e);
    submodules(e).iter().all(|v| {
        let colon: Set = (0..e.ring().order())
            .filter(|&a| all.iter().all(|&x| v.contains(&e.act(a, x))))
            .collect();
        ideal_times(e, &colon) == *v
    })
}

pub fn is_prime_ideal(r: &FiniteRing, p: &Set) -> bool {
    p.len() < r.order()
        && (0..r.order()).all(|a| (0..r.order()).all(|b| !p.contains(&r.mul(a, b)) || p.contains(&a) || p.contains(&b)))
}

/// `Ass(E)` as a set of element sets.
pub fn associated_primes(e: &FiniteModule) -> BTreeSet<Set> {
    (1..e.order())
        .map(|x| ann_of(e, x))
        .filter(|p| is_prime_ideal(e.ring(), p))
        .collect()
}

pub fn names(r: &FiniteRing, s: &Set) -> Vec<String> {
    s.iter().map(|&a| r.name(a).to_string()).collect()
}

/// `T⁻¹A` by fractions: `(a, s) ~ (b, t)` iff `u(at − bs) = 0` for some `u ∈ T`.
/// Returns the number of classes and the kernel of `a ↦ a/1`.
pub fn fractions(r: &FiniteRing, t: &Set) -> (usize, Set) {
    let same = |(a, s): (usize, usize), (b, u): (usize, usize)| {
        let diff = r.sub(r.mul(a, u), r.mul(b, s));
        t.iter().any(|&w| r.mul(w, diff) == 0)
    };
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for a in 0..r.order() {
        for &s in t {
            if !reps.iter().any(|&p| same(p, (a, s))) {
                reps.push((a, s));
            }
        }
    }
    let kernel = (0..r.order()).filter(|&a| same((a, r.one()), (0, r.one()))).collect();
    (reps.len(), kernel)
}

/// Every function `I → E` that is additive and `A`-linear, as a table over the
/// sorted members of `I`.
pub fn linear_maps(e: &FiniteModule, i: &Set) -> Vec<Vec<usize>> {
    let r = e.ring();
    let members: Vec<usize> = i.iter().copied().collect();
    let pos = |a: usize| members.iter().position(|&m| m == a).unwrap();
    let mut maps = Vec::new();
    let mut table = vec![0; members.len()];
    loop {
        let linear = members.iter().enumerate().all(|(k, &a)| {
            members
                .iter()
                .enumerate()
                .all(|(l, &b)| table[pos(r.add(a, b))] == e.add(table[k], table[l]))
                && (0..r.order()).all(|s| table[pos(r.mul(s, a))] == e.act(s, table[k]))
        });
        if linear {
            maps.push(table.clone());
        }
        // odometer over E^|I|
        let mut k = 0;
        while k < table.len() {
            table[k] += 1;
            if table[k] < e.order() {
                break;
            }
            table[k] = 0;
            k += 1;
        }
        if k == table.len() {
            return maps;
        }
    }
}

/// Baer criterion by brute force over all linear maps from all ideals.
pub fn injective(e: &FiniteModule) -> bool {
    ideals(e.ring()).iter().all(|i| {
        let members: Vec<usize> = i.iter().copied().collect();
        linear_maps(e, i)
            .iter()
            .all(|f| (0..e.order()).any(|x| members.iter().enumerate().all(|(k, &a)| f[k] == e.act(a, x))))
    })
}

/// Coefficient vectors of length `d + 1` over `0..n`.
pub fn polys(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..=d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// `f·h` for `f ∈ A[X]`, `h ∈ E[X]`, untruncated.
pub fn poly_act(e: &FiniteModule, f: &[usize], h: &[usize]) -> Vec<usize> {
    let mut out = vec![0; f.len() + h.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &x) in h.iter().enumerate() {
            out[i + j] = e.add(out[i + j], e.act(a, x));
        }
    }
    out
}

pub fn poly_mul(r: &FiniteRing, f: &[usize], g: &[usize]) -> Vec<usize> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(a, b));
        }
    }
    out
}

pub fn armendariz(e: &FiniteModule, d: usize) -> bool {
    let fs = polys(e.ring().order(), d);
    let hs = polys(e.order(), d);
    fs.iter().all(|f| {
        hs.iter().all(|h| {
            poly_act(e, f, h).iter().any(|&c| c != 0) || f.iter().all(|&a| h.iter().all(|&x| e.act(a, x) == 0))
        })
    })
}

/// The two polynomial annihilator identities within degree `d`, by enumeration.
pub fn lempol(e: &FiniteModule, d: usize) -> bool {
    let r = e.ring();
    let fs = polys(r.order(), d);
    let hs = polys(e.order(), d);
    let in_ideal = |q: &[usize], i: &Set| q.iter().all(|c| i.contains(c));
    let first = hs.iter().all(|h| {
        let meet: Set = (0..r.order())
            .filter(|&a| h.iter().all(|&x| e.act(a, x) == 0))
            .collect();
        fs.iter()
            .all(|q| poly_act(e, q, h).iter().all(|&c| c == 0) == in_ideal(q, &meet))
    });
    let second = fs.iter().all(|p| {
        let meet: Set = (0..r.order())
            .filter(|&a| p.iter().all(|&c| (0..e.order()).all(|x| e.act(a, e.act(c, x)) == 0)))
            .collect();
        fs.iter().all(|q| {
            let qp = poly_mul(r, q, p);
            let kills = hs.iter().all(|h| poly_act(e, &qp, h).iter().all(|&c| c == 0));
            kills == in_ideal(q, &meet)
        })
    });
    first && second
}

//! Finite commutative rings with identity, held as full operation tables.

mod classify;
mod ideal;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use classify::{
    baer_kist_witnesses, classify_ideal, classify_ring, field_decompose, special_elements, FieldDecomposition,
    IdealClassification, RingClassification, SpecialElements,
};
pub(crate) use ideal::generate_set;
pub use ideal::{annihilator_in_ring, enumerate_ideals, ideal_arith, ideal_generate, principal_ideal, Ideal, IdealOp};

use crate::dsl::ast::RingExpr;
use crate::error::{Error, Result};
use crate::sets::ElemSet;
use poly::PolyQuotient;

/// Largest carrier a ring constructor will tabulate.
pub const MAX_RING_ORDER: usize = 1024;

/// Default cap on carrier size for exhaustive ideal enumeration.
pub const DEFAULT_IDEAL_CAP: usize = 64;

#[derive(Debug, Clone)]
pub(crate) enum RingKind {
    Integers(u64),
    Product(Vec<Arc<FiniteRing>>),
    PolyQuot(PolyQuotient),
    Quotient { parent: Arc<FiniteRing>, proj: Vec<u32> },
}

/// A finite commutative ring with nonzero identity. Element `0` is always the zero.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inverse: Vec<Option<u32>>,
    one: usize,
    names: Vec<String>,
    kind: RingKind,
    descriptor: RingExpr,
}

impl FiniteRing {
    fn from_tables(
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        one: usize,
        names: Vec<String>,
        kind: RingKind,
        descriptor: RingExpr,
    ) -> Result<Self> {
        if order < 2 {
            return Err(Error::ZeroRing);
        }
        let mut neg = vec![0u32; order];
        for a in 0..order {
            neg[a] = (0..order).find(|&b| add[a * order + b] == 0).expect("additive inverse") as u32;
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| mul[a * order + b] as usize == one)
                    .map(|b| b as u32)
            })
            .collect();
        Ok(FiniteRing {
            order,
            add,
            mul,
            neg,
            inverse,
            one,
            names,
            kind,
            descriptor,
        })
    }

    /// The ring Z/nZ.
    pub fn integers_mod(n: i64) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        let order = n as usize;
        if order > MAX_RING_ORDER {
            return Err(Error::cap("ring order", MAX_RING_ORDER, order));
        }
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                add[a * order + b] = ((a + b) % order) as u32;
                mul[a * order + b] = ((a * b) % order) as u32;
            }
        }
        let names = (0..order).map(|a| a.to_string()).collect();
        Self::from_tables(order, add, mul, 1, names, RingKind::Integers(n as u64), RingExpr::Zn(n)).map(Arc::new)
    }

    /// Direct product with componentwise operations; elements are ordered
    /// lexicographically with the first factor most significant.
    pub fn product(factors: &[Arc<FiniteRing>]) -> Result<Arc<Self>> {
        assert!(!factors.is_empty(), "product of no rings");
        let order = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.order))
            .filter(|&o| o <= MAX_RING_ORDER)
            .ok_or_else(|| Error::cap("ring order", MAX_RING_ORDER, factors.iter().map(|f| f.order).product()))?;
        let split = |mut i: usize| -> Vec<usize> {
            let mut parts = vec![0; factors.len()];
            for (k, f) in factors.iter().enumerate().rev() {
                parts[k] = i % f.order;
                i /= f.order;
            }
            parts
        };
        let join = |parts: &[usize]| -> usize { parts.iter().zip(factors).fold(0, |acc, (&p, f)| acc * f.order + p) };
        let comps: Vec<Vec<usize>> = (0..order).map(split).collect();
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.add(comps[a][k], comps[b][k]))
                    .collect();
                let m: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.mul(comps[a][k], comps[b][k]))
                    .collect();
                add[a * order + b] = join(&s) as u32;
                mul[a * order + b] = join(&m) as u32;
            }
        }
        let one = join(&factors.iter().map(|f| f.one).collect::<Vec<_>>());
        let names = comps
            .iter()
            .map(|c| {
                let parts: Vec<&str> = c.iter().zip(factors).map(|(&x, f)| f.names[x].as_str()).collect();
                format!("<{}>", parts.join(","))
            })
            .collect();
        let descriptor = RingExpr::Prod(factors.iter().map(|f| f.descriptor.clone()).collect());
        Self::from_tables(
            order,
            add,
            mul,
            one,
            names,
            RingKind::Product(factors.to_vec()),
            descriptor,
        )
        .map(Arc::new)
    }

    /// F_p[vars] modulo the ideal generated by `relations`.
    pub fn poly_quotient(p: u64, vars: &[String], relations: &[String]) -> Result<Arc<Self>> {
        let q = PolyQuotient::new(p, vars, relations)?;
        let order = q
            .order()
            .filter(|&o| o <= MAX_RING_ORDER)
            .ok_or_else(|| Error::cap("ring order", MAX_RING_ORDER, usize::MAX))?;
        let d = q.dimension();
        let coords: Vec<Vec<u64>> = (0..order).map(|i| q.decode(i)).collect();
        let mut add = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<u64> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = q.encode(&s) as u32;
            }
        }
        let prods = q.basis_products();
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            // a * e_l for every basis monomial e_l
            let a_times: Vec<Vec<u64>> = (0..d)
                .map(|l| {
                    let mut acc = vec![0u64; d];
                    for (k, &c) in coords[a].iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for (t, &v) in prods[k][l].iter().enumerate() {
                            acc[t] = (acc[t] + c * v) % p;
                        }
                    }
                    acc
                })
                .collect();
            for b in 0..order {
                let mut acc = vec![0u64; d];
                for (l, &c) in coords[b].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (t, &v) in a_times[l].iter().enumerate() {
                        acc[t] = (acc[t] + c * v) % p;
                    }
                }
                mul[a * order + b] = q.encode(&acc) as u32;
            }
        }
        let names = (0..order).map(|i| q.name(i)).collect();
        let one = q.encode(&{
            let mut v = vec![0u64; d];
            v[0] = 1 % p;
            v
        });
        debug_assert_eq!(one, 1);
        let descriptor = RingExpr::PolyQuot {
            base: Box::new(RingExpr::Zn(p as i64)),
            vars: vars.to_vec(),
            relations: relations.to_vec(),
        };
        Self::from_tables(order, add, mul, one, names, RingKind::PolyQuot(q), descriptor).map(Arc::new)
    }

    /// The quotient ring R/I. Cosets are indexed by their least representative.
    pub fn quotient(parent: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Arc<Self>> {
        let (proj, reps) = cosets(parent.order, ideal.elements(), |a, b| parent.add(a, b));
        let order = reps.len();
        if order < 2 {
            return Err(Error::ZeroRing);
        }
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * order + j] = proj[parent.add(a, b)];
                mul[i * order + j] = proj[parent.mul(a, b)];
            }
        }
        let names = reps.iter().map(|&r| parent.names[r].clone()).collect();
        let one = proj[parent.one] as usize;
        let descriptor = RingExpr::Quot {
            base: Box::new(parent.descriptor.clone()),
            ideal: ideal.generator_names(),
        };
        Self::from_tables(
            order,
            add,
            mul,
            one,
            names,
            RingKind::Quotient {
                parent: parent.clone(),
                proj,
            },
            descriptor,
        )
        .map(Arc::new)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverse[a].map(|x| x as usize)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse[a].is_some()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names_of(&self, set: &ElemSet) -> Vec<String> {
        set.ones().map(|a| self.names[a].clone()).collect()
    }

    pub fn descriptor(&self) -> &RingExpr {
        &self.descriptor
    }

    /// Structural identity used for mismatch checks.
    pub fn same_as(&self, other: &FiniteRing) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.descriptor == other.descriptor)
    }

    /// Reads an element written in this ring's canonical notation.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        let invalid = || Error::InvalidElement {
            text: text.to_string(),
            structure: self.descriptor.to_string(),
        };
        match &self.kind {
            RingKind::Integers(n) => {
                let v: i64 = text.parse().map_err(|_| invalid())?;
                Ok(v.rem_euclid(*n as i64) as usize)
            }
            RingKind::Product(factors) => {
                let parts = split_tuple(text).ok_or_else(invalid)?;
                if parts.len() != factors.len() {
                    return Err(invalid());
                }
                let mut idx = 0;
                for (part, f) in parts.iter().zip(factors) {
                    idx = idx * f.order + f.parse_element(part)?;
                }
                Ok(idx)
            }
            RingKind::PolyQuot(q) => q.parse_element(text).map_err(|_| invalid()),
            RingKind::Quotient { parent, proj } => {
                let a = parent.parse_element(text)?;
                Ok(proj[a] as usize)
            }
        }
    }

    pub(crate) fn parse_elements(&self, texts: &[String]) -> Result<Vec<usize>> {
        texts.iter().map(|t| self.parse_element(t)).collect()
    }

    /// Exhaustive check of the commutative-ring axioms; `Err` names the first violation.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let n = self.order;
        if self.one == 0 {
            return Err("one equals zero".into());
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return Err(format!("{} + 0 != {}", self.names[a], self.names[a]));
            }
            if self.mul(a, self.one) != a {
                return Err(format!("{} * 1 != {}", self.names[a], self.names[a]));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at {}, {}", a, b));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at {a},{b},{c}"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at {a},{b},{c}"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at {a},{b},{c}"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor)
    }
}

/// Coset partition of a finite abelian group by a subgroup: projection table and
/// the least representative of each coset, in increasing order.
pub(crate) fn cosets(order: usize, sub: &ElemSet, add: impl Fn(usize, usize) -> usize) -> (Vec<u32>, Vec<usize>) {
    let mut proj = vec![u32::MAX; order];
    let mut reps = Vec::new();
    let members: Vec<usize> = sub.ones().collect();
    for e in 0..order {
        if proj[e] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(e);
        for &v in &members {
            proj[add(e, v)] = id;
        }
    }
    (proj, reps)
}

pub(crate) fn cosets_of(ring: &FiniteRing, ideal: &Ideal) -> (Vec<u32>, Vec<usize>) {
    cosets(ring.order, ideal.elements(), |a, b| ring.add(a, b))
}

/// Splits `<a,b,<c,d>>` into its top-level components.
pub(crate) fn split_tuple(text: &str) -> Option<Vec<String>> {
    let inner = text.trim().strip_prefix('<')?.strip_suffix('>')?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '<' => {
                depth += 1;
                cur.push(c);
            }
            '>' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur).trim().to_string());
            }
            _ => cur.push(c),
        }
    }
    parts.push(cur.trim().to_string());
    Some(parts)
}

/// Builds the ring described by a resolved expression.
pub fn construct_ring(expr: &RingExpr) -> Result<Arc<FiniteRing>> {
    match expr {
        RingExpr::Zn(n) => FiniteRing::integers_mod(*n),
        RingExpr::Prod(parts) => {
            let factors = parts.iter().map(construct_ring).collect::<Result<Vec<_>>>()?;
            FiniteRing::product(&factors)
        }
        RingExpr::PolyQuot { base, vars, relations } => match base.as_ref() {
            RingExpr::Zn(p) if *p >= 2 => FiniteRing::poly_quotient(*p as u64, vars, relations),
            RingExpr::Zn(p) => Err(Error::InvalidModulus(*p)),
            other => Err(Error::InfiniteQuotient(format!(
                "coefficients must be a prime field (Z p), got {other}"
            ))),
        },
        RingExpr::Quot { base, ideal } => {
            let parent = construct_ring(base)?;
            let gens = parent.parse_elements(ideal)?;
            let i = ideal_generate(&parent, &gens);
            FiniteRing::quotient(&parent, &i)
        }
        RingExpr::Ref(id) => Err(Error::Resolution {
            name: id.name.clone(),
            line: id.pos.line,
            column: id.pos.column,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polyquot(p: i64, vars: &[&str], rels: &[&str]) -> Arc<FiniteRing> {
        construct_ring(&RingExpr::PolyQuot {
            base: Box::new(RingExpr::Zn(p)),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            relations: rels.iter().map(|s| s.to_string()).collect(),
        })
        .unwrap()
    }

    #[test]
    fn z8_has_order_eight() {
        let r = FiniteRing::integers_mod(8).unwrap();
        assert_eq!(r.order(), 8);
        r.verify_axioms().unwrap();
    }

    #[test]
    fn invalid_modulus() {
        assert_eq!(FiniteRing::integers_mod(1).unwrap_err(), Error::InvalidModulus(1));
        assert_eq!(FiniteRing::integers_mod(0).unwrap_err(), Error::InvalidModulus(0));
    }

    #[test]
    fn product_z2_z3_is_z6() {
        let r = construct_ring(&RingExpr::Prod(vec![RingExpr::Zn(2), RingExpr::Zn(3)])).unwrap();
        assert_eq!(r.order(), 6);
        r.verify_axioms().unwrap();
        // (1,1) generates the additive group, so the ring is cyclic of order 6
        let g = r.one();
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = r.add(x, g);
            k += 1;
        }
        assert_eq!(k, 6);
        assert_eq!(r.parse_element("<1,2>").unwrap(), 5);
        assert_eq!(r.name(5), "<1,2>");
    }

    #[test]
    fn polyquot_local_order_eight() {
        let r = polyquot(2, &["x", "y"], &["x^2", "xy", "y^2"]);
        assert_eq!(r.order(), 8);
        r.verify_axioms().unwrap();
        let x = r.parse_element("x").unwrap();
        let y = r.parse_element("y").unwrap();
        assert_eq!(r.mul(x, y), 0);
        assert_eq!(r.mul(x, x), 0);
        assert_eq!(r.parse_element("x^2+1").unwrap(), r.one());
    }

    #[test]
    fn polyquot_truncated() {
        let r = polyquot(2, &["x"], &["x^3"]);
        assert_eq!(r.order(), 8);
        r.verify_axioms().unwrap();
        let f9 = polyquot(3, &["i"], &["i^2+1"]);
        assert_eq!(f9.order(), 9);
        f9.verify_axioms().unwrap();
        assert!((1..9).all(|a| f9.is_unit(a)));
    }

    #[test]
    fn quotient_ring() {
        let z12 = FiniteRing::integers_mod(12).unwrap();
        let i = ideal_generate(&z12, &[4]);
        let q = FiniteRing::quotient(&z12, &i).unwrap();
        assert_eq!(q.order(), 4);
        q.verify_axioms().unwrap();
        assert_eq!(q.parse_element("5").unwrap(), 1);
        assert_eq!(q.descriptor().to_string(), "(quot (Z 12) (ideal 4))");
        let all = ideal_generate(&z12, &[1]);
        assert_eq!(FiniteRing::quotient(&z12, &all).unwrap_err(), Error::ZeroRing);
    }

    #[test]
    fn tuple_split() {
        assert_eq!(
            split_tuple("<1,<2,3>,x+y>").unwrap(),
            vec!["1".to_string(), "<2,3>".to_string(), "x+y".to_string()]
        );
        assert!(split_tuple("1,2").is_none());
    }
}

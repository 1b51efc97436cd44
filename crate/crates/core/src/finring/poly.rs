//! Quotients of F_p[x] and F_p[x, y] by finitely many relations.
//!
//! Each indeterminate must carry a univariate relation; those cut the polynomial
//! ring down to a finite-dimensional algebra R0, and the remaining relations span
//! an ideal of R0 that is computed by row reduction over F_p.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Sparse polynomial: exponent vector to coefficient in 0..p.
pub(crate) type Poly = BTreeMap<Vec<usize>, u64>;

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Parses `2x^2y + xy - 1` style text over the given single-letter variables.
pub(crate) fn parse_poly(text: &str, vars: &[String], p: u64) -> Result<Poly> {
    let bad = || Error::InvalidPolynomial(text.to_string());
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(bad());
    }
    let mut out = Poly::new();
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                negative = !negative;
            }
            i += 1;
        }
        if i >= chars.len() {
            return Err(bad());
        }
        let mut coeff: u64 = 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if i > start {
            let digits: String = chars[start..i].iter().collect();
            coeff = digits.parse::<u64>().map_err(|_| bad())? % p;
        }
        let mut exps = vec![0usize; vars.len()];
        let mut saw_factor = i > start;
        loop {
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                continue;
            }
            if i >= chars.len() || chars[i] == '+' || chars[i] == '-' {
                break;
            }
            let c = chars[i];
            let v = vars
                .iter()
                .position(|name| name.len() == 1 && name.starts_with(c))
                .ok_or_else(bad)?;
            i += 1;
            let mut e = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if s == i {
                    return Err(bad());
                }
                let digits: String = chars[s..i].iter().collect();
                e = digits.parse().map_err(|_| bad())?;
            }
            exps[v] += e;
            saw_factor = true;
        }
        if !saw_factor {
            return Err(bad());
        }
        let c = if negative { (p - coeff % p) % p } else { coeff % p };
        let slot = out.entry(exps).or_insert(0);
        *slot = (*slot + c) % p;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

#[derive(Debug, Clone)]
pub(crate) struct PolyQuotient {
    pub p: u64,
    pub vars: Vec<String>,
    /// Degree of the univariate relation for each variable.
    degs: Vec<usize>,
    /// Monic univariate relations, low coefficients first (without the leading 1).
    tails: Vec<Vec<u64>>,
    /// R0 monomials in ascending order (degree, then earlier variables first).
    monomials: Vec<Vec<usize>>,
    /// Reduced-row-echelon rows of the relation ideal inside R0: (pivot column, row).
    pivots: Vec<(usize, Vec<u64>)>,
    /// R0 columns that survive in the quotient, ascending.
    pub basis: Vec<usize>,
}

impl PolyQuotient {
    pub fn new(p: u64, vars: &[String], relations: &[String]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrimeField(p));
        }
        if vars.is_empty() || vars.len() > 2 {
            return Err(Error::InfiniteQuotient(format!(
                "expected one or two indeterminates, got {}",
                vars.len()
            )));
        }
        for (k, v) in vars.iter().enumerate() {
            let ok = v.len() == 1 && v.chars().all(|c| c.is_ascii_alphabetic());
            if !ok || vars[..k].contains(v) {
                return Err(Error::InvalidPolynomial(format!("indeterminate `{v}`")));
            }
        }
        let polys: Vec<Poly> = relations
            .iter()
            .map(|r| parse_poly(r, vars, p))
            .collect::<Result<_>>()?;
        if polys
            .iter()
            .any(|f| f.len() == 1 && f.keys().all(|e| e.iter().all(|&x| x == 0)))
        {
            return Err(Error::ZeroRing);
        }

        let nv = vars.len();
        let mut degs = Vec::with_capacity(nv);
        let mut tails = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut best: Option<(usize, Vec<u64>)> = None;
            for f in &polys {
                let univariate = f.keys().all(|e| e.iter().enumerate().all(|(w, &x)| w == v || x == 0));
                if !univariate || f.is_empty() {
                    continue;
                }
                let d = f.keys().map(|e| e[v]).max().unwrap_or(0);
                if d == 0 {
                    continue;
                }
                if best.as_ref().is_some_and(|(bd, _)| *bd <= d) {
                    continue;
                }
                let mut coeffs = vec![0u64; d + 1];
                for (e, c) in f {
                    coeffs[e[v]] = *c;
                }
                let inv = mod_inverse(coeffs[d], p);
                let tail: Vec<u64> = coeffs[..d].iter().map(|c| c * inv % p).collect();
                best = Some((d, tail));
            }
            let (d, tail) = best.ok_or_else(|| {
                Error::InfiniteQuotient(format!("no univariate relation bounds the powers of `{}`", vars[v]))
            })?;
            degs.push(d);
            tails.push(tail);
        }

        let mut monomials: Vec<Vec<usize>> = vec![vec![]];
        for &d in &degs {
            monomials = monomials
                .into_iter()
                .flat_map(|m| {
                    (0..d).map(move |k| {
                        let mut m = m.clone();
                        m.push(k);
                        m
                    })
                })
                .collect();
        }
        monomials.sort_by(|a, b| {
            let da: usize = a.iter().sum();
            let db: usize = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });

        let mut q = PolyQuotient {
            p,
            vars: vars.to_vec(),
            degs,
            tails,
            monomials,
            pivots: Vec::new(),
            basis: Vec::new(),
        };

        let dim = q.monomials.len();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for f in &polys {
            for m in &q.monomials {
                let mut shifted = Poly::new();
                for (e, c) in f {
                    let e2: Vec<usize> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                    shifted.insert(e2, *c);
                }
                let v = q.to_vector(&shifted);
                if v.iter().any(|&c| c != 0) {
                    rows.push(v);
                }
            }
        }
        // Row reduce, pivoting on the largest monomials first.
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut remaining = rows;
        for col in (0..dim).rev() {
            let Some(idx) = remaining.iter().position(|r| r[col] != 0) else {
                continue;
            };
            let mut row = remaining.swap_remove(idx);
            let inv = mod_inverse(row[col], p);
            for c in row.iter_mut() {
                *c = *c * inv % p;
            }
            for r in remaining.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
                let factor = r[col];
                if factor != 0 {
                    for (x, y) in r.iter_mut().zip(&row) {
                        *x = (*x + p * p - factor * y % p) % p;
                    }
                }
            }
            pivots.push((col, row));
        }
        if pivots.iter().any(|(c, _)| *c == 0) {
            return Err(Error::ZeroRing);
        }
        let basis: Vec<usize> = (0..dim).filter(|c| pivots.iter().all(|(pc, _)| pc != c)).collect();
        q.pivots = pivots;
        q.basis = basis;
        Ok(q)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> Option<usize> {
        (self.p as usize).checked_pow(self.basis.len() as u32)
    }

    /// Reduces modulo the univariate relations and lays the result out over R0.
    fn to_vector(&self, f: &Poly) -> Vec<u64> {
        let p = self.p;
        let mut work = f.clone();
        loop {
            let target = work
                .iter()
                .find(|(e, _)| e.iter().zip(&self.degs).any(|(x, d)| x >= d))
                .map(|(e, c)| (e.clone(), *c));
            let Some((e, c)) = target else { break };
            work.remove(&e);
            let v = e.iter().zip(&self.degs).position(|(x, d)| x >= d).unwrap();
            let d = self.degs[v];
            for (k, t) in self.tails[v].iter().enumerate() {
                if *t == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[v] = e[v] - d + k;
                let slot = work.entry(e2).or_insert(0);
                *slot = (*slot + (p - t) * c) % p;
            }
            work.retain(|_, c| *c != 0);
        }
        let mut v = vec![0u64; self.monomials.len()];
        for (e, c) in work {
            let idx = self.monomials.iter().position(|m| *m == e).unwrap();
            v[idx] = (v[idx] + c) % p;
        }
        v
    }

    fn normal_form(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        for (col, row) in &self.pivots {
            let factor = v[*col];
            if factor != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p * p - factor * y % p) % p;
                }
            }
        }
        self.basis.iter().map(|&c| v[c]).collect()
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn decode(&self, mut index: usize) -> Vec<u64> {
        let p = self.p as usize;
        (0..self.basis.len())
            .map(|_| {
                let c = index % p;
                index /= p;
                c as u64
            })
            .collect()
    }

    pub fn element_of(&self, f: &Poly) -> usize {
        self.encode(&self.normal_form(self.to_vector(f)))
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let f = parse_poly(text, &self.vars, self.p)?;
        Ok(self.element_of(&f))
    }

    /// Products of quotient basis monomials, as quotient coordinates.
    pub fn basis_products(&self) -> Vec<Vec<Vec<u64>>> {
        let d = self.basis.len();
        let mut out = vec![vec![Vec::new(); d]; d];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let e: Vec<usize> = self.monomials[self.basis[i]]
                    .iter()
                    .zip(&self.monomials[self.basis[j]])
                    .map(|(a, b)| a + b)
                    .collect();
                let mut f = Poly::new();
                f.insert(e, 1);
                *cell = self.normal_form(self.to_vector(&f));
            }
        }
        out
    }

    pub fn name(&self, index: usize) -> String {
        let coords = self.decode(index);
        let mut terms = Vec::new();
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let exps = &self.monomials[self.basis[k]];
            let mut mono = String::new();
            for (v, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push_str(&self.vars[v]),
                    _ => mono.push_str(&format!("{}^{e}", self.vars[v])),
                }
            }
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_terms() {
        let f = parse_poly("2x^2y + xy - 1", &vars(&["x", "y"]), 3).unwrap();
        assert_eq!(f.get(&vec![2, 1]), Some(&2));
        assert_eq!(f.get(&vec![1, 1]), Some(&1));
        assert_eq!(f.get(&vec![0, 0]), Some(&2));
        assert!(parse_poly("z", &vars(&["x"]), 2).is_err());
        assert!(parse_poly("x^", &vars(&["x"]), 2).is_err());
    }

    #[test]
    fn local_ring_of_order_eight() {
        let rels: Vec<String> = ["x^2", "xy", "y^2"].iter().map(|s| s.to_string()).collect();
        let q = PolyQuotient::new(2, &vars(&["x", "y"]), &rels).unwrap();
        assert_eq!(q.order(), Some(8));
        let names: Vec<String> = (0..8).map(|i| q.name(i)).collect();
        assert_eq!(names, ["0", "1", "x", "1+x", "y", "1+y", "x+y", "1+x+y"]);
    }

    #[test]
    fn irreducible_quadratic_gives_f4() {
        let q = PolyQuotient::new(2, &vars(&["t"]), &["t^2+t+1".to_string()]).unwrap();
        assert_eq!(q.order(), Some(4));
        assert_eq!(q.parse_element("t^2").unwrap(), q.parse_element("t+1").unwrap());
    }

    #[test]
    fn missing_bound_is_infinite() {
        let err = PolyQuotient::new(2, &vars(&["x", "y"]), &["x^2".to_string(), "xy".to_string()]);
        assert!(matches!(err, Err(Error::InfiniteQuotient(_))));
        let err = PolyQuotient::new(2, &vars(&["x"]), &["x^2".to_string(), "1".to_string()]);
        assert_eq!(err.unwrap_err(), Error::ZeroRing);
        let err = PolyQuotient::new(
            2,
            &vars(&["x"]),
            &["x^2+1".to_string(), "x+1".to_string(), "x".to_string()],
        );
        assert_eq!(err.unwrap_err(), Error::ZeroRing);
        assert!(matches!(
            PolyQuotient::new(4, &vars(&["x"]), &[]),
            Err(Error::NotPrimeField(4))
        ));
    }
}

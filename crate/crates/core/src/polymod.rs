//! Bounded-degree polynomials over finite rings and modules: exact convolution,
//! Armendariz checks, and the polynomial annihilator identities, all restricted
//! to a degree bound `D`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::classify::{annihilator_candidates, Counterexample, Verdict};
use crate::error::{Error, Result};
use crate::finmod::{annihilator, FiniteModule};
use crate::finring::FiniteRing;
use crate::sets::{self, ElemSet};

/// Default cap on `|A|^(D+1) · |E|^(D+1)`.
pub const DEFAULT_POLY_CAP: usize = 100_000_000;

/// Default degree bound.
pub const DEFAULT_DEGREE_BOUND: usize = 2;

/// Coefficients (lowest degree first) drawn from a ring or module carrier, with a
/// working degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BoundedPoly {
    pub coeffs: Vec<usize>,
    pub bound: usize,
}

impl BoundedPoly {
    /// Pads `coeffs` to length `bound + 1`; rejects a true degree above `bound`.
    pub fn new(mut coeffs: Vec<usize>, bound: usize) -> Result<Self> {
        if let Some(d) = coeffs.iter().rposition(|&c| c != 0) {
            if d > bound {
                return Err(Error::DegreeOverflow { degree: d, bound });
            }
        }
        coeffs.resize(bound + 1, 0);
        Ok(BoundedPoly { coeffs, bound })
    }

    pub fn constant(c: usize, bound: usize) -> Self {
        let mut coeffs = vec![0; bound + 1];
        coeffs[0] = c;
        BoundedPoly { coeffs, bound }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn display_ring<'a>(&'a self, ring: &'a FiniteRing) -> impl fmt::Display + 'a {
        CoeffList(self.coeffs.iter().map(move |&c| ring.name(c).to_string()).collect())
    }

    pub fn display_module<'a>(&'a self, e: &'a FiniteModule) -> impl fmt::Display + 'a {
        CoeffList(self.coeffs.iter().map(move |&c| e.name(c).to_string()).collect())
    }
}

struct CoeffList(Vec<String>);

impl fmt::Display for CoeffList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

fn exact_degree_check(coeffs: &[usize], bound: usize) -> Result<()> {
    match coeffs.iter().rposition(|&c| c != 0) {
        Some(d) if d > bound => Err(Error::DegreeOverflow { degree: d, bound }),
        _ => Ok(()),
    }
}

/// `p(X)·h(X)` for `p ∈ A[X]`, `h ∈ E[X]`, computed exactly and then required to
/// fit in degree `bound`.
pub fn poly_mul_action(e: &FiniteModule, p: &BoundedPoly, h: &BoundedPoly, bound: usize) -> Result<BoundedPoly> {
    let mut out = vec![0usize; p.coeffs.len() + h.coeffs.len() - 1];
    for (i, &a) in p.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &x) in h.coeffs.iter().enumerate() {
            out[i + j] = e.add(out[i + j], e.act(a, x));
        }
    }
    exact_degree_check(&out, bound)?;
    BoundedPoly::new(out, bound)
}

/// `p(X)·q(X)` in `A[X]`, under the same no-truncation rule.
pub fn poly_mul_ring(r: &FiniteRing, p: &BoundedPoly, q: &BoundedPoly, bound: usize) -> Result<BoundedPoly> {
    let mut out = vec![0usize; p.coeffs.len() + q.coeffs.len() - 1];
    for (i, &a) in p.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in q.coeffs.iter().enumerate() {
            out[i + j] = r.add(out[i + j], r.mul(a, b));
        }
    }
    exact_degree_check(&out, bound)?;
    BoundedPoly::new(out, bound)
}

fn check_cap(e: &FiniteModule, d: usize, cap: usize) -> Result<()> {
    let a = e.ring().order().checked_pow(d as u32 + 1);
    let m = e.order().checked_pow(d as u32 + 1);
    match a.and_then(|a| m.and_then(|m| a.checked_mul(m))) {
        Some(space) if space <= cap => Ok(()),
        other => Err(Error::cap(
            "polynomial quantifier space",
            cap,
            other.unwrap_or(usize::MAX),
        )),
    }
}

/// Every `f` of degree ≤ `d` with `f·h = 0`, found coefficient by coefficient:
/// the coefficient of `X^k` in `f·h` involves only `f_0..f_k`, so each partial
/// assignment is pruned as soon as it is fixed.
fn for_each_annihilating(e: &FiniteModule, h: &[usize], d: usize, mut visit: impl FnMut(&[usize])) {
    let r = e.ring();
    // by_value[v] = ring elements a with a·h_0 = v
    let mut by_value: Vec<Vec<usize>> = vec![Vec::new(); e.order()];
    for a in r.elements() {
        by_value[e.act(a, h[0])].push(a);
    }
    let mut f = vec![0usize; d + 1];
    fn rec(
        e: &FiniteModule,
        h: &[usize],
        d: usize,
        k: usize,
        f: &mut Vec<usize>,
        by_value: &[Vec<usize>],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if k > d {
            for top in d + 1..=2 * d {
                let mut s = 0;
                for i in top - d..=d {
                    s = e.add(s, e.act(f[i], h[top - i]));
                }
                if s != 0 {
                    return;
                }
            }
            visit(f);
            return;
        }
        let mut partial = 0;
        for i in 0..k {
            partial = e.add(partial, e.act(f[i], h[k - i]));
        }
        for &a in &by_value[e.neg(partial)] {
            f[k] = a;
            rec(e, h, d, k + 1, f, by_value, visit);
        }
        f[k] = 0;
    }
    rec(e, h, d, 0, &mut f, &by_value, &mut visit);
}

/// All module polynomials of degree ≤ `d`, in lexicographic order of coefficients.
fn for_each_module_poly(order: usize, d: usize, mut visit: impl FnMut(&[usize])) {
    let mut h = vec![0usize; d + 1];
    loop {
        visit(&h);
        let mut k = 0;
        loop {
            if k > d {
                return;
            }
            h[k] += 1;
            if h[k] < order {
                break;
            }
            h[k] = 0;
            k += 1;
        }
    }
}

/// `{q : deg q ≤ d, q·e = 0}`.
pub fn bounded_poly_annihilator(e: &FiniteModule, h: &BoundedPoly, d: usize) -> Result<Vec<BoundedPoly>> {
    check_cap(e, d, DEFAULT_POLY_CAP)?;
    let mut coeffs = h.coeffs.clone();
    exact_degree_check(&coeffs, d)?;
    coeffs.resize(d + 1, 0);
    let mut out = Vec::new();
    for_each_annihilating(e, &coeffs, d, |f| {
        out.push(BoundedPoly {
            coeffs: f.to_vec(),
            bound: d,
        })
    });
    Ok(out)
}

/// `∩ ann(e_j)` over the coefficients of `h`.
fn coefficient_annihilator(e: &Arc<FiniteModule>, h: &[usize]) -> ElemSet {
    annihilator(e, &sets::from_iter(e.order(), h.iter().copied()))
        .elements()
        .clone()
}

/// Armendariz condition restricted to degree ≤ `d`: `f·e = 0` forces every
/// `f_i e_j = 0`.
pub fn is_armendariz_upto(e: &Arc<FiniteModule>, d: usize) -> Result<Verdict> {
    is_armendariz_upto_capped(e, d, DEFAULT_POLY_CAP)
}

pub fn is_armendariz_upto_capped(e: &Arc<FiniteModule>, d: usize, cap: usize) -> Result<Verdict> {
    check_cap(e, d, cap)?;
    let mut failure: Option<(Vec<usize>, Vec<usize>)> = None;
    for_each_module_poly(e.order(), d, |h| {
        if failure.is_some() {
            return;
        }
        let j = coefficient_annihilator(e, h);
        for_each_annihilating(e, h, d, |f| {
            if failure.is_none() && f.iter().any(|&a| !j.contains(a)) {
                failure = Some((f.to_vec(), h.to_vec()));
            }
        });
    });
    Ok(match failure {
        None => Verdict::holds(Vec::new()),
        Some((f, h)) => {
            let f = BoundedPoly { coeffs: f, bound: d };
            let h = BoundedPoly { coeffs: h, bound: d };
            Verdict::fails(
                format!("f = {}, e = {}", f.display_ring(e.ring()), h.display_module(e)),
                "f·e = 0 but some coefficient product f_i e_j is nonzero".to_string(),
            )
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LempolReport {
    pub degree_bound: usize,
    /// Polynomials `e(X)` tested against identity (i).
    pub instances_i: usize,
    pub failures_i: Vec<String>,
    /// Polynomials `p(X)` tested against identity (ii).
    pub instances_ii: usize,
    pub failures_ii: Vec<String>,
    pub label: String,
}

impl LempolReport {
    pub fn holds(&self) -> bool {
        self.failures_i.is_empty() && self.failures_ii.is_empty()
    }
}

/// The two polynomial annihilator identities for an Armendariz module, restricted
/// to degree ≤ `d`:
///
/// (i)  `ann(e(X)) = [∩ ann(e_i)][X]`
/// (ii) `ann(p(X)E[X]) = [∩ ann(a_i E)][X]`
///
/// For (ii) the left side is taken literally, as the `q` of degree ≤ `d` with
/// `q·p·h = 0` for every `h` of degree ≤ `d`.
pub fn check_lempol(e: &Arc<FiniteModule>, d: usize) -> Result<LempolReport> {
    check_cap(e, d, DEFAULT_POLY_CAP)?;
    let arm = is_armendariz_upto(e, d)?;
    if !arm.holds {
        let c = arm.counterexample.expect("failing verdict carries a counterexample");
        return Err(Error::HypothesisFailed(format!(
            "{} is not Armendariz up to degree {d}: {}",
            e.descriptor(),
            c.subject
        )));
    }
    let r = e.ring().clone();
    let span = d + 1;
    let mut instances_i = 0;
    let mut failures_i = Vec::new();
    for_each_module_poly(e.order(), d, |h| {
        instances_i += 1;
        let j = coefficient_annihilator(e, h);
        let mut count = 0usize;
        let mut inside = true;
        for_each_annihilating(e, h, d, |f| {
            count += 1;
            inside &= f.iter().all(|&a| j.contains(a));
        });
        if !inside || count != j.count_ones(..).pow(span as u32) {
            let hp = BoundedPoly {
                coeffs: h.to_vec(),
                bound: d,
            };
            failures_i.push(format!("e = {}", hp.display_module(e)));
        }
    });

    let scaled: Vec<ElemSet> = r
        .elements()
        .map(|a| annihilator(e, &e.scaled(a)).elements().clone())
        .collect();
    let mut all_module_polys: Vec<Vec<usize>> = Vec::new();
    for_each_module_poly(e.order(), d, |h| all_module_polys.push(h.to_vec()));
    let mut kills_all: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut instances_ii = 0;
    let mut failures_ii = Vec::new();
    for_each_module_poly(r.order(), d, |p| {
        instances_ii += 1;
        let p_poly = BoundedPoly {
            coeffs: p.to_vec(),
            bound: d,
        };
        let mut rhs = sets::full(r.order());
        for &a in p {
            rhs.intersect_with(&scaled[a]);
        }
        let mut ok = true;
        for_each_module_poly(r.order(), d, |q| {
            if !ok {
                return;
            }
            let q_poly = BoundedPoly {
                coeffs: q.to_vec(),
                bound: d,
            };
            let qp = poly_mul_ring(&r, &q_poly, &p_poly, 2 * d).expect("degree fits").coeffs;
            let in_lhs = *kills_all.entry(qp.clone()).or_insert_with(|| {
                let qp_poly = BoundedPoly {
                    coeffs: qp.clone(),
                    bound: 2 * d,
                };
                all_module_polys.iter().all(|h| {
                    let hp = BoundedPoly {
                        coeffs: h.clone(),
                        bound: d,
                    };
                    poly_mul_action(e, &qp_poly, &hp, 3 * d).expect("degree fits").is_zero()
                })
            });
            let in_rhs = q.iter().all(|&a| rhs.contains(a));
            ok = in_lhs == in_rhs;
        });
        if !ok {
            failures_ii.push(format!("p = {}", p_poly.display_ring(&r)));
        }
    });
    Ok(LempolReport {
        degree_bound: d,
        instances_i,
        failures_i,
        instances_ii,
        failures_ii,
        label: format!("verified up to degree {d}"),
    })
}

/// Outcome of the degree-bounded E[X] side of the polynomial transfer statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialCheck {
    pub degree_bound: usize,
    /// `None` when every `e(X)` of degree ≤ `d` has `ann(e(X))` of the form `[ann(IE)][X]`.
    pub counterexample: Option<Counterexample>,
    pub label: String,
}

/// For each `e(X)` of degree ≤ `d`, looks for an ideal `I` with
/// `ann(e(X)) = [ann(IE)][X]` within degree `d`. A one-sided check: passing says
/// nothing about higher degrees.
pub fn polynomial_module_check(e: &Arc<FiniteModule>, d: usize) -> Result<PolynomialCheck> {
    check_cap(e, d, DEFAULT_POLY_CAP)?;
    let candidates = annihilator_candidates(e);
    let span = d as u32 + 1;
    let mut counterexample = None;
    for_each_module_poly(e.order(), d, |h| {
        if counterexample.is_some() {
            return;
        }
        let mut sols: Vec<Vec<usize>> = Vec::new();
        for_each_annihilating(e, h, d, |f| sols.push(f.to_vec()));
        let matches = candidates
            .iter()
            .any(|j| sols.len() == j.len().pow(span) && sols.iter().all(|f| f.iter().all(|&a| j.contains(a))));
        if !matches {
            let hp = BoundedPoly {
                coeffs: h.to_vec(),
                bound: d,
            };
            counterexample = Some(Counterexample {
                subject: format!("e = {}", hp.display_module(e)),
                explanation: format!(
                    "ann(e(X)) within degree {d} has {} members and is not J[X] for any J = ann(IE)",
                    sols.len()
                ),
                candidates: None,
            });
        }
    });
    Ok(PolynomialCheck {
        degree_bound: d,
        counterexample,
        label: format!("verified up to degree {d}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_module;
    use crate::finmod::construct_module;

    fn build(text: &str) -> Arc<FiniteModule> {
        construct_module(&parse_module(text).unwrap()).unwrap()
    }

    #[test]
    fn convolution_examples() {
        let z4 = build("(self (Z 4))");
        let p = BoundedPoly::constant(2, 1);
        let h = BoundedPoly::new(vec![1, 1], 1).unwrap();
        assert_eq!(poly_mul_action(&z4, &p, &h, 1).unwrap().coeffs, vec![2, 2]);
        let x = BoundedPoly::new(vec![0, 1], 1).unwrap();
        let e0 = BoundedPoly::constant(3, 1);
        assert_eq!(poly_mul_action(&z4, &x, &e0, 1).unwrap().coeffs, vec![0, 3]);
        let z2 = build("(self (Z 2))");
        let one_x = BoundedPoly::new(vec![1, 1], 1).unwrap();
        assert_eq!(poly_mul_action(&z2, &one_x, &one_x, 2).unwrap().coeffs, vec![1, 0, 1]);
        assert_eq!(
            poly_mul_action(&z2, &one_x, &one_x, 1).unwrap_err(),
            Error::DegreeOverflow { degree: 2, bound: 1 }
        );
    }

    #[test]
    fn bounded_annihilators() {
        let e = build("(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))");
        let x = e.parse_element("<0,1>").unwrap();
        let ann = bounded_poly_annihilator(&e, &BoundedPoly::constant(x, 1), 1).unwrap();
        let got: Vec<Vec<usize>> = ann.iter().map(|q| q.coeffs.clone()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 4], vec![4, 0], vec![4, 4]]);
        let z4 = build("(self (Z 4))");
        assert_eq!(
            bounded_poly_annihilator(&z4, &BoundedPoly::constant(1, 2), 2)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            bounded_poly_annihilator(&z4, &BoundedPoly::constant(2, 1), 1)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn armendariz_examples() {
        assert!(is_armendariz_upto(&build("(free (Z 2) 2)"), 2).unwrap().holds);
        assert!(is_armendariz_upto(&build("(self (Z 4))"), 2).unwrap().holds);
        assert!(
            is_armendariz_upto(&build("(dsum (cyclic (Z 8) (ideal 2)) (cyclic (Z 8) (ideal 4)))"), 0)
                .unwrap()
                .holds
        );
        // (x + yX)(x + yX) = 0 over F2[x,y]/(x^2,y^2) although xy != 0
        let v = is_armendariz_upto(&build("(self (polyquot (Z 2) [x y] {x^2 y^2}))"), 1).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn lempol_examples() {
        for (text, d) in [("(self (Z 4))", 1), ("(free (Z 2) 2)", 2), ("(self (Z 6))", 0)] {
            let rep = check_lempol(&build(text), d).unwrap();
            assert!(rep.holds(), "{text}: {rep:?}");
        }
        let err = check_lempol(&build("(self (polyquot (Z 2) [x y] {x^2 y^2}))"), 1).unwrap_err();
        assert!(matches!(err, Error::HypothesisFailed(_)));
    }

    #[test]
    fn polynomial_side_matches_constant_side() {
        let ok = polynomial_module_check(&build("(self (Z 4))"), 1).unwrap();
        assert!(ok.counterexample.is_none());
        let bad = build(
            "(dsum (self (polyquot (Z 2) [x y] {x^2 xy y^2})) \
             (cyclic (polyquot (Z 2) [x y] {x^2 xy y^2}) (ideal x)))",
        );
        assert!(polynomial_module_check(&bad, 0).unwrap().counterexample.is_some());
    }
}

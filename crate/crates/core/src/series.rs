//! Truncated canonical series `φ_v`, minimal negative support, the action
//! of Weyl-algebra elements on series, and residual checks against `H_A(β)`.
//!
//! All series share a base exponent `v`; a term `x^w` has grade
//! `|(w − v)_+|`. A series of order `k` is complete in every grade `≤ k`:
//! no omitted term of the untruncated series has grade `≤ k`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::configuration::Configuration;
use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::weyl::Weyl;

/// `Σ c_w x^w` over finitely many `w ∈ base + Z^n`, complete through `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<K> {
    pub base: Vec<K>,
    pub terms: BTreeMap<Vec<K>, K>,
    /// Complete through this grade; negative means no grade is complete.
    pub order: i64,
}

impl<K: Scalar> Series<K> {
    /// The single monomial `x^w`, exact in every grade.
    pub fn monomial(w: Vec<K>, order: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.clone(), K::one());
        Series { base: w, terms, order }
    }

    pub fn grade(&self, w: &[K]) -> i64 {
        grade(&self.base, w)
    }

    fn add_term(&mut self, w: Vec<K>, c: K) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Series {
            base: self.base.clone(),
            terms: BTreeMap::new(),
            order: self.order,
        };
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Terms of grade `≤ k`.
    pub fn truncated(&self, k: i64) -> BTreeMap<Vec<K>, K> {
        self.terms
            .iter()
            .filter(|(w, _)| self.grade(w) <= k)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// Whether the two series agree in every grade where both are complete.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let k = self.order.min(other.order);
        self.base == other.base && self.truncated(k) == other.truncated(k)
    }
}

fn grade<K: Scalar>(base: &[K], w: &[K]) -> i64 {
    w.iter()
        .zip(base)
        .map(|(a, b)| {
            let d = a.clone() - b.clone();
            if d.is_positive() {
                integer_value(&d)
            } else {
                0
            }
        })
        .sum()
}

fn integer_value<K: Scalar>(x: &K) -> i64 {
    x.floor_i64().expect("series exponents stay within i64")
}

/// `{i : v_i ∈ Z_{<0}}`.
pub fn negative_support<K: Scalar>(v: &[K]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i].is_negative_integer()).collect()
}

/// Result of the minimal-negative-support search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegSupportReport<K> {
    pub v: Vec<K>,
    pub nsupp: Vec<usize>,
    pub minimal: bool,
    /// Coefficient bound used for kernel-basis combinations.
    pub bound: i64,
    /// A kernel vector shrinking the negative support, when one was found.
    pub improvement: Option<Vec<BigInt>>,
}

/// Most kernel combinations tried by [`minimal_negative_support`].
const COMBINATION_LIMIT: i64 = 400_000;

/// Search the kernel combinations `Σ c_k b_k`, `|c_k| ≤ bound`, for a `u`
/// with `nsupp(v + u) ⊊ nsupp(v)`.
///
/// Only integral coordinates of `v` can enter or leave the negative
/// support, and leaving requires moving a coordinate by more than its
/// absolute value, so `bound = ⌈max |v_i|⌉ + 1` covers all single steps.
/// The bound is shrunk if the box would exceed a fixed size, and is
/// reported either way.
pub fn minimal_negative_support<K: Scalar>(cfg: &Configuration, v: &[K]) -> Result<NegSupportReport<K>> {
    check_dim(cfg.n(), v.len())?;
    let nsupp = negative_support(v);
    let mut report = NegSupportReport {
        v: v.to_vec(),
        nsupp: nsupp.clone(),
        minimal: true,
        bound: 0,
        improvement: None,
    };
    let basis = cfg.kernel().vectors();
    if nsupp.is_empty() || basis.is_empty() {
        return Ok(report);
    }
    let r = basis.len() as u32;
    let max_abs = v.iter().map(|x| integer_value(&x.abs().floor()) + 1).max().unwrap_or(1);
    let mut bound = max_abs + 1;
    while bound > 1 && (2 * bound + 1).checked_pow(r).is_none_or(|t| t > COMBINATION_LIMIT) {
        bound -= 1;
    }
    report.bound = bound;
    let basis_k: Vec<Vec<K>> = basis.iter().map(|b| b.iter().map(K::from_bigint).collect()).collect();
    let mut c = vec![-bound; basis.len()];
    loop {
        if c.iter().any(|&x| x != 0) {
            let mut w = v.to_vec();
            for (ck, b) in c.iter().zip(&basis_k) {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = wi.clone() + K::from_i64(*ck) * bi.clone();
                }
            }
            let ns = negative_support(&w);
            if ns.len() < nsupp.len() && ns.iter().all(|i| nsupp.contains(i)) {
                report.minimal = false;
                let u: Vec<BigInt> = (0..cfg.n())
                    .map(|i| c.iter().zip(basis).map(|(ck, b)| BigInt::from(*ck) * &b[i]).sum())
                    .collect();
                report.improvement = Some(u);
                return Ok(report);
            }
        }
        let mut k = 0;
        while k < c.len() {
            c[k] += 1;
            if c[k] <= bound {
                break;
            }
            c[k] = -bound;
            k += 1;
        }
        if k == c.len() {
            return Ok(report);
        }
    }
}

/// An exponent `v` with `Av = β` whose non-forced coordinates are all
/// non-integral, so its negative support is minimal for every `u ∈ L`.
///
/// A coordinate is forced when every kernel vector vanishes there; such
/// coordinates are fixed by `β`. The others are perturbed by a generic
/// rational combination of the kernel basis.
pub fn starting_exponent<K: Scalar>(cfg: &Configuration, beta: &[K]) -> Result<Vec<K>> {
    check_dim(cfg.d(), beta.len())?;
    let rows: Vec<Vec<K>> = (0..cfg.d())
        .map(|i| (0..cfg.n()).map(|j| K::from_i64(cfg.column(j)[i])).collect())
        .collect();
    let v0 = linalg::solve(&rows, beta, cfg.n())
        .ok_or_else(|| Error::Internal("A has full row rank but Av = β is unsolvable".into()))?;
    let basis: Vec<Vec<K>> = cfg
        .kernel()
        .vectors()
        .iter()
        .map(|b| b.iter().map(K::from_bigint).collect())
        .collect();
    let forced: Vec<bool> = (0..cfg.n()).map(|i| basis.iter().all(|b| b[i].is_zero())).collect();
    // One small prime per attempt keeps denominators, and with them the
    // size of every series coefficient, small.
    const PRIMES: [i64; 12] = [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    for p in PRIMES {
        let mut v = v0.clone();
        for (k, b) in basis.iter().enumerate() {
            let eps = K::from_i64(k as i64 + 1) / K::from_i64(p);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = vi.clone() + eps.clone() * bi.clone();
            }
        }
        if (0..cfg.n()).all(|i| forced[i] || !v[i].is_integer()) {
            return Ok(v);
        }
    }
    Err(Error::Internal("no generic starting exponent found".into()))
}

/// Kernel vectors `u` with `|u_+| ≤ order`, from pairs of monomials of equal
/// degree and equal `A`-degree with disjoint supports.
pub fn kernel_vectors_up_to(cfg: &Configuration, order: u32) -> Vec<Vec<i64>> {
    let n = cfg.n();
    let mut out = vec![vec![0i64; n]];
    for k in 1..=order {
        let mut by_degree: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
        let mut e = vec![0i64; n];
        fn rec(cfg: &Configuration, left: i64, j: usize, e: &mut Vec<i64>, out: &mut HashMap<Vec<i64>, Vec<Vec<i64>>>) {
            if j + 1 == e.len() {
                e[j] = left;
                out.entry(cfg.apply(e)).or_default().push(e.clone());
                e[j] = 0;
                return;
            }
            for x in 0..=left {
                e[j] = x;
                rec(cfg, left - x, j + 1, e, out);
            }
            e[j] = 0;
        }
        rec(cfg, k as i64, 0, &mut e, &mut by_degree);
        for group in by_degree.values() {
            for p in group {
                for q in group {
                    if p.iter().zip(q).all(|(a, b)| *a == 0 || *b == 0) {
                        out.push(p.iter().zip(q).map(|(a, b)| a - b).collect());
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `[x]_k = x (x − 1) ⋯ (x − k + 1)` extended coordinatewise.
fn falling<K: Scalar>(x: &[K], k: &[i64]) -> K {
    x.iter()
        .zip(k)
        .fold(K::one(), |acc, (xi, &ki)| acc * xi.falling_factorial(ki as u32))
}

/// The coefficient `[v]_{u−} / [v + u]_{u+}` of `x^{v+u}` in `φ_v`.
pub fn phi_coefficient<K: Scalar>(v: &[K], u: &[i64]) -> Option<K> {
    let minus: Vec<i64> = u.iter().map(|&x| (-x).max(0)).collect();
    let plus: Vec<i64> = u.iter().map(|&x| x.max(0)).collect();
    let shifted: Vec<K> = v.iter().zip(u).map(|(a, &b)| a.clone() + K::from_i64(b)).collect();
    let den = falling(&shifted, &plus);
    if den.is_zero() {
        return None;
    }
    Some(falling(v, &minus) / den)
}

/// `φ_v` through grade `order`; `v` must have minimal negative support.
pub fn phi_v<K: Scalar>(cfg: &Configuration, v: &[K], order: u32) -> Result<Series<K>> {
    let report = minimal_negative_support(cfg, v)?;
    if !report.minimal {
        return Err(Error::NotMinimal);
    }
    let mut s = Series {
        base: v.to_vec(),
        terms: BTreeMap::new(),
        order: order as i64,
    };
    for u in kernel_vectors_up_to(cfg, order) {
        let w: Vec<K> = v.iter().zip(&u).map(|(a, &b)| a.clone() + K::from_i64(b)).collect();
        if negative_support(&w) != report.nsupp {
            continue;
        }
        let c = phi_coefficient(v, &u).ok_or_else(|| Error::Internal("vanishing denominator inside N_v".into()))?;
        s.add_term(w, c);
    }
    Ok(s)
}

/// `E·S`, term by term: `x^α ∂^m · x^w = [w]_m x^{w + α − m}`. The result
/// is complete through `order − (largest ∂-degree of E)`.
///
/// Exponents are accumulated as integer offsets from the base, and `[w]_m`
/// is computed once per distinct `m`.
pub fn apply_operator<K: Scalar>(e: &Weyl<K>, s: &Series<K>) -> Series<K> {
    let mut by_m: BTreeMap<&[u32], Vec<(&[u32], &K)>> = BTreeMap::new();
    for ((alpha, m), c) in &e.terms {
        by_m.entry(m.as_slice()).or_default().push((alpha.as_slice(), c));
    }
    let terms: Vec<(Vec<i64>, &Vec<K>, &K)> = s.terms.iter().map(|(w, c)| (offset(&s.base, w), w, c)).collect();
    let mut acc: HashMap<Vec<i64>, K> = HashMap::new();
    for (m, group) in &by_m {
        let mi: Vec<i64> = m.iter().map(|&x| x as i64).collect();
        for (off, w, coeff) in &terms {
            let f = falling(w, &mi);
            if f.is_zero() {
                continue;
            }
            let fc = f * (*coeff).clone();
            for &(alpha, c) in group {
                let z: Vec<i64> = off
                    .iter()
                    .zip(alpha)
                    .zip(&mi)
                    .map(|((o, &a), mj)| o + a as i64 - mj)
                    .collect();
                let t = c.clone() * fc.clone();
                match acc.get_mut(&z) {
                    Some(old) => *old = old.clone() + t,
                    None => {
                        acc.insert(z, t);
                    }
                }
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(z, c)| {
            let w = s
                .base
                .iter()
                .zip(&z)
                .map(|(b, &o)| b.clone() + K::from_i64(o))
                .collect();
            (w, c)
        })
        .collect();
    Series {
        base: s.base.clone(),
        terms,
        order: s.order - e.d_degree() as i64,
    }
}

/// `w − base`, integral for every exponent of a series.
fn offset<K: Scalar>(base: &[K], w: &[K]) -> Vec<i64> {
    w.iter()
        .zip(base)
        .map(|(a, b)| {
            let d = a.clone() - b.clone();
            debug_assert!(d.is_integer(), "series exponent off the base lattice");
            integer_value(&d)
        })
        .collect()
}

/// How far a series solves `H_A(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    /// Every term satisfies `Aw = β`, so the Euler residuals vanish exactly.
    pub euler_exact: bool,
    /// Grade through which toric residuals are fully determined.
    pub checked_through: i64,
    /// Grade through which all toric residuals vanish; equals
    /// `checked_through` on success.
    pub vanishing_through: i64,
    pub passed: bool,
}

/// Apply the Euler operators `Σ_j a_ij θ_j − β_i` and the generators of
/// `I_A` to `S`. A toric residual at `x^z` for a generator of degree `k`
/// is only trusted when `grade(z) + k ≤ order`.
pub fn check_solution<K: Scalar>(cfg: &Configuration, beta: &[K], s: &Series<K>) -> Result<ResidualReport> {
    check_dim(cfg.d(), beta.len())?;
    let euler_exact = s.terms.keys().all(|w| {
        (0..cfg.d()).all(|i| {
            let row = (0..cfg.n()).fold(K::zero(), |acc, j| acc + K::from_i64(cfg.column(j)[i]) * w[j].clone());
            row == beta[i]
        })
    });
    let toric = cfg.toric()?;
    let checked_through = s.order;
    let mut vanishing_through = checked_through;
    for g in &toric.generators {
        let k = g.degree() as i64;
        let residual = apply_operator(&Weyl::from_binomial(g), s);
        for (z, c) in &residual.terms {
            let level = s.grade(z) + k;
            if level <= s.order && !c.is_zero() {
                vanishing_through = vanishing_through.min(level - 1);
            }
        }
    }
    Ok(ResidualReport {
        euler_exact,
        checked_through,
        vanishing_through,
        passed: euler_exact && vanishing_through == checked_through,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational_i64s;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn four_column() -> Configuration {
        Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 0, 1, 2], &[0, 1, 1, 0]]).unwrap()
    }

    fn curve() -> Configuration {
        Configuration::from_rows(&[&[1, 1, 1, 1, 1], &[0, 2, 4, 7, 9]]).unwrap()
    }

    #[test]
    fn natural_exponents_are_minimal() {
        let r = minimal_negative_support(&four_column(), &rational_i64s(&[1, 2, 0, 3])).unwrap();
        assert!(r.nsupp.is_empty() && r.minimal);
        let half = vec![q(0, 1), q(0, 1), q(0, 1), q(-1, 2)];
        let r = minimal_negative_support(&four_column(), &half).unwrap();
        assert!(r.nsupp.is_empty() && r.minimal);
    }

    #[test]
    fn shrinkable_negative_support() {
        let c = four_column();
        let v = rational_i64s(&[-1, 2, 0, 1]);
        let r = minimal_negative_support(&c, &v).unwrap();
        assert_eq!(r.nsupp, vec![0]);
        assert!(!r.minimal);
        assert!(matches!(phi_v(&c, &v, 3), Err(Error::NotMinimal)));
    }

    #[test]
    fn phi_is_a_solution() {
        for c in [four_column(), curve()] {
            let beta: Vec<Q> = (0..c.d()).map(|i| q(2 * i as i64 + 1, 3)).collect();
            let v = starting_exponent(&c, &beta).unwrap();
            let s = phi_v(&c, &v, 6).unwrap();
            assert!(s.terms.len() > 1);
            let r = check_solution(&c, &beta, &s).unwrap();
            assert!(r.passed, "{r:?}");
            // coefficients recomputed from the formula
            for (w, coeff) in &s.terms {
                let u: Vec<i64> = w.iter().zip(&v).map(|(a, b)| integer_value(&(a - b))).collect();
                assert_eq!(phi_coefficient(&v, &u).unwrap(), *coeff);
            }
        }
    }

    #[test]
    fn monomial_with_wrong_degree_fails_euler() {
        let c = four_column();
        let s = Series::monomial(rational_i64s(&[0, 0, 0, 0]), 0);
        assert!(check_solution(&c, &rational_i64s(&[0, 0, 0]), &s).unwrap().euler_exact);
        assert!(!check_solution(&c, &rational_i64s(&[1, 0, 0]), &s).unwrap().euler_exact);
    }

    #[test]
    fn operator_action_on_monomials() {
        let w = vec![q(1, 2), q(3, 1)];
        let s = Series::monomial(w.clone(), 4);
        assert_eq!(apply_operator(&Weyl::one(2), &s), s);
        let t = apply_operator(&Weyl::theta(2, 1), &s);
        assert_eq!(t.terms.get(&w), Some(&q(3, 1)));
        let d = apply_operator(&Weyl::d(2, 0), &s);
        assert_eq!(d.terms.get(&vec![q(-1, 2), q(3, 1)]), Some(&q(1, 2)));
        assert_eq!(d.order, 3);
    }

    #[test]
    fn inverse_shift_coefficients_telescope() {
        let v = vec![q(1, 3), q(-2, 5), q(7, 2), q(1, 7)];
        let u = [1i64, -2, 2, -1];
        let neg: Vec<i64> = u.iter().map(|x| -x).collect();
        let vu: Vec<Q> = v.iter().zip(&u).map(|(a, &b)| a + Q::from_i64(b)).collect();
        let forward = phi_coefficient(&v, &u).unwrap();
        let back = phi_coefficient(&vu, &neg).unwrap();
        assert_eq!(forward * back, Q::from_i64(1));
    }
}

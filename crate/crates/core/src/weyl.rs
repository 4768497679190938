//! The Weyl algebra `D = k⟨x, ∂⟩` in normal order, Euler substitution, and
//! contiguity operators with exact membership certificates.
//!
//! A contiguity operator `E` of weight `χ` is produced from a b-polynomial
//! `b ∈ B_χ` and exponents `u, v` with `Au − Av = χ` by expanding
//! `b(θ)∂^v`, reducing its `∂`-parts modulo reverse lexicographic Gröbner
//! bases of `I_A`, one lowest variable at a time, and dividing off
//! `∂_i^{u_i}` after each round. Every subtraction is recorded, so the
//! identity `E∂^u − b(θ)∂^v = Σ Q_g g` can be re-checked by multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::configuration::Configuration;
use crate::error::{check_dim, Error, Result};
use crate::poly::{LinearForm, LinearProduct, SPoly};
use crate::scalar::Scalar;
use crate::toric::{b_ideal, Binomial};

/// `Σ c x^α ∂^m` with every `x` to the left of every `∂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weyl<K> {
    pub n: usize,
    /// `(α, m) ↦ c`, no zero coefficients.
    pub terms: BTreeMap<(Vec<u32>, Vec<u32>), K>,
}

impl<K: Scalar> Weyl<K> {
    pub fn zero(n: usize) -> Self {
        Weyl {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: K) -> Self {
        Self::monomial(vec![0; n], vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, K::one())
    }

    pub fn monomial(alpha: Vec<u32>, m: Vec<u32>, c: K) -> Self {
        let mut w = Self::zero(alpha.len());
        w.add_term(alpha, m, c);
        w
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self::monomial(a, vec![0; n], K::one())
    }

    pub fn d(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        Self::monomial(vec![0; n], m, K::one())
    }

    /// `∂^m`.
    pub fn d_power(m: &[u32]) -> Self {
        Self::monomial(vec![0; m.len()], m.to_vec(), K::one())
    }

    /// The Euler operator `θ_i = x_i ∂_i`.
    pub fn theta(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e.clone(), e, K::one())
    }

    /// `∂^plus − ∂^minus`.
    pub fn from_binomial(g: &Binomial) -> Self {
        let mut w = Self::d_power(&g.plus);
        w.add_term(vec![0; g.minus.len()], g.minus.clone(), -K::one());
        w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, m: Vec<u32>, c: K) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, m);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, m), c) in &other.terms {
            out.add_term(a.clone(), m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, m), v) in &self.terms {
            out.add_term(a.clone(), m.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Right multiplication by `∂^m`, which only shifts `∂`-exponents.
    pub fn mul_d_power(&self, m: &[u32]) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, e), c) in &self.terms {
            let e2: Vec<u32> = e.iter().zip(m).map(|(x, y)| x + y).collect();
            out.add_term(a.clone(), e2, c.clone());
        }
        out
    }

    /// The product, normal-ordered with
    /// `∂^m x^b = Σ_k Π_i C(m_i, k_i) [b_i]_{k_i} x^{b−k} ∂^{m−k}`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for ((a1, m1), c1) in &self.terms {
            for ((a2, m2), c2) in &other.terms {
                // per variable: the admissible k_i with their weights
                let choices: Vec<Vec<(u32, K)>> = (0..n)
                    .map(|i| {
                        (0..=m1[i].min(a2[i]))
                            .map(|k| {
                                let w = binomial::<K>(m1[i], k) * K::from_i64(a2[i] as i64).falling_factorial(k);
                                (k, w)
                            })
                            .collect()
                    })
                    .collect();
                let base = c1.clone() * c2.clone();
                let mut idx = vec![0usize; n];
                loop {
                    let mut coeff = base.clone();
                    let mut alpha = Vec::with_capacity(n);
                    let mut m = Vec::with_capacity(n);
                    for i in 0..n {
                        let (k, w) = &choices[i][idx[i]];
                        coeff = coeff * w.clone();
                        alpha.push(a1[i] + a2[i] - k);
                        m.push(m1[i] - k + m2[i]);
                    }
                    out.add_term(alpha, m, coeff);
                    let mut i = 0;
                    while i < n {
                        idx[i] += 1;
                        if idx[i] < choices[i].len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == n {
                        break;
                    }
                }
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Largest total `∂`-degree of a term.
    pub fn d_degree(&self) -> u32 {
        self.terms.keys().map(|(_, m)| m.iter().sum()).max().unwrap_or(0)
    }
}

fn binomial<K: Scalar>(n: u32, k: u32) -> K {
    let mut acc = K::one();
    for i in 0..k {
        acc = acc * K::from_i64((n - i) as i64) / K::from_i64((i + 1) as i64);
    }
    acc
}

impl<K: Scalar> fmt::Display for Weyl<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for ((a, m), c) in &self.terms {
            let mut s = String::new();
            for (i, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("x{}", i + 1)),
                    _ => s.push_str(&format!("x{}^{e}", i + 1)),
                }
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("d{}", i + 1)),
                    _ => s.push_str(&format!("d{}^{e}", i + 1)),
                }
            }
            if s.is_empty() {
                parts.push(format!("{c}"));
            } else if c.is_one() {
                parts.push(s);
            } else {
                parts.push(format!("({c})*{s}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `s_i ↦ Σ_j a_ij θ_j` applied to a linear form.
pub fn euler_linear<K: Scalar>(cfg: &Configuration, form: &LinearForm<K>) -> Weyl<K> {
    let n = cfg.n();
    let mut w = Weyl::constant(n, -form.constant.clone());
    for j in 0..n {
        let coeff = cfg
            .column(j)
            .iter()
            .zip(&form.coeffs)
            .fold(K::zero(), |acc, (&a, c)| acc + K::from_i64(a) * c.clone());
        if !coeff.is_zero() {
            let mut e = vec![0; n];
            e[j] = 1;
            w.add_term(e.clone(), e, coeff);
        }
    }
    w
}

/// `b(s)` with `s_i = Σ_j a_ij θ_j`, for a factored `b`.
pub fn substitute_euler<K: Scalar>(cfg: &Configuration, b: &LinearProduct<K>) -> Weyl<K> {
    b.factors
        .iter()
        .fold(Weyl::constant(cfg.n(), b.scale.clone()), |acc, f| {
            acc.mul(&euler_linear(cfg, f))
        })
}

/// `b(s)` with `s_i = Σ_j a_ij θ_j`, for an expanded `b`.
pub fn substitute_euler_poly<K: Scalar>(cfg: &Configuration, b: &SPoly<K>) -> Weyl<K> {
    let n = cfg.n();
    let euler: Vec<Weyl<K>> = (0..cfg.d())
        .map(|i| {
            let mut coeffs = vec![K::zero(); cfg.d()];
            coeffs[i] = K::one();
            euler_linear(cfg, &LinearForm::new(coeffs, K::zero()))
        })
        .collect();
    let mut out = Weyl::zero(n);
    for (e, c) in &b.terms {
        let mut t = Weyl::constant(n, c.clone());
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.mul(&euler[i]);
            }
        }
        out = out.add(&t);
    }
    out
}

/// `E∂^u − b(θ)∂^v = Σ cofactor · (∂^plus − ∂^minus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<K> {
    pub pairs: Vec<(Weyl<K>, Binomial)>,
}

/// A contiguity operator of weight `χ` with the data it was built from.
#[derive(Clone, Debug)]
pub struct SymmetryOperator<K> {
    pub chi: Vec<K>,
    pub element: Weyl<K>,
    pub b: LinearProduct<K>,
    pub shift_plus: Vec<u32>,
    pub shift_minus: Vec<u32>,
    pub certificate: Certificate<K>,
}

/// Rewrite every `∂`-part to its normal form modulo `basis`, recording the
/// cofactor `c x^α ∂^{m − lead(g)}` of each step by generator.
fn reduce_logged<K: Scalar>(e: &Weyl<K>, basis: &[Binomial]) -> (Weyl<K>, Vec<Weyl<K>>) {
    let n = e.n;
    let mut out = Weyl::zero(n);
    let mut cofactors: Vec<Weyl<K>> = vec![Weyl::zero(n); basis.len()];
    for ((alpha, m), c) in &e.terms {
        let mut m = m.clone();
        'steps: loop {
            for (k, g) in basis.iter().enumerate() {
                if g.plus.iter().zip(&m).all(|(p, x)| p <= x) {
                    let rest: Vec<u32> = m.iter().zip(&g.plus).map(|(x, p)| x - p).collect();
                    cofactors[k].add_term(alpha.clone(), rest.clone(), c.clone());
                    m = rest.iter().zip(&g.minus).map(|(x, q)| x + q).collect();
                    continue 'steps;
                }
            }
            break;
        }
        out.add_term(alpha.clone(), m, c.clone());
    }
    (out, cofactors)
}

/// The operator `E` with `E∂^u ≡ b(θ)∂^v` modulo `D·I_A`, for a `b` that
/// the caller guarantees to lie in `B_χ`, `χ = Au − Av`.
///
/// Fails with [`Error::RightFactorMissing`] if a reduced element is not
/// divisible by `∂_i^{u_i}`.
pub fn reduce_to_operator<K: Scalar>(
    cfg: &Configuration,
    b: &LinearProduct<K>,
    u: &[u32],
    v: &[u32],
) -> Result<SymmetryOperator<K>> {
    let n = cfg.n();
    check_dim(n, u.len())?;
    check_dim(n, v.len())?;
    let ui: Vec<i64> = u.iter().map(|&x| x as i64).collect();
    let vi: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    let chi: Vec<K> = cfg
        .apply(&ui)
        .iter()
        .zip(cfg.apply(&vi))
        .map(|(p, q)| K::from_i64(p - q))
        .collect();
    let toric = cfg.toric()?;
    let mut e = substitute_euler(cfg, b).mul_d_power(v);
    let mut certificate: BTreeMap<Binomial, Weyl<K>> = BTreeMap::new();
    let mut divided = vec![0u32; n];
    for i in 0..n {
        let basis: &[Binomial] = if toric.is_zero() { &[] } else { toric.groebner(i) };
        let (reduced, cofactors) = reduce_logged(&e, basis);
        for (g, cof) in basis.iter().zip(cofactors) {
            if cof.is_zero() {
                continue;
            }
            let q = cof.mul_d_power(&divided).scale(&-K::one());
            let slot = certificate.entry(g.clone()).or_insert_with(|| Weyl::zero(n));
            *slot = slot.add(&q);
        }
        let mut next = Weyl::zero(n);
        for ((alpha, m), c) in reduced.terms {
            if m[i] < u[i] {
                return Err(Error::RightFactorMissing(i));
            }
            let mut m = m;
            m[i] -= u[i];
            next.add_term(alpha, m, c);
        }
        e = next;
        divided[i] = u[i];
    }
    // Final normal form of the ∂-parts: the same class modulo D·I_A, and
    // usually far fewer terms.
    if !toric.is_zero() {
        let basis = toric.groebner(n - 1);
        let (reduced, cofactors) = reduce_logged(&e, basis);
        for (g, cof) in basis.iter().zip(cofactors) {
            if cof.is_zero() {
                continue;
            }
            let q = cof.mul_d_power(u).scale(&-K::one());
            let slot = certificate.entry(g.clone()).or_insert_with(|| Weyl::zero(n));
            *slot = slot.add(&q);
        }
        e = reduced;
    }
    let pairs = certificate
        .into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(g, q)| (q, g))
        .collect();
    Ok(SymmetryOperator {
        chi,
        element: e,
        b: b.clone(),
        shift_plus: u.to_vec(),
        shift_minus: v.to_vec(),
        certificate: Certificate { pairs },
    })
}

/// Build the contiguity operator for `b ∈ B_χ` and `u, v` with
/// `Au − Av = χ`, checking membership of `b` and both identities.
pub fn contiguity_operator(
    cfg: &Configuration,
    chi: &[BigRational],
    b: &LinearProduct<BigRational>,
    u: &[u32],
    v: &[u32],
) -> Result<SymmetryOperator<BigRational>> {
    check_dim(cfg.d(), chi.len())?;
    check_dim(cfg.n(), u.len())?;
    check_dim(cfg.n(), v.len())?;
    let ui: Vec<i64> = u.iter().map(|&x| x as i64).collect();
    let vi: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    let diff: Vec<BigRational> = cfg
        .apply(&ui)
        .iter()
        .zip(cfg.apply(&vi))
        .map(|(p, q)| BigRational::from_i64(p - q))
        .collect();
    if diff != chi {
        return Err(Error::InvalidInput(
            "the shift exponents do not satisfy Au - Av = chi".into(),
        ));
    }
    let ideal = b_ideal(cfg, chi)?;
    if !ideal.contains_product(cfg, b) {
        return Err(Error::NotInBIdeal);
    }
    let op = reduce_to_operator(cfg, b, u, v)?;
    if !verify_weight(cfg, &op.element, chi) {
        return Err(Error::Internal("constructed operator has the wrong weight".into()));
    }
    if !verify_certificate(cfg, &op) {
        return Err(Error::Internal("membership certificate does not verify".into()));
    }
    Ok(op)
}

/// `[Σ_j a_ij θ_j, E] = χ_i E` for every row `i`, checked in `D`.
pub fn verify_weight<K: Scalar>(cfg: &Configuration, e: &Weyl<K>, chi: &[K]) -> bool {
    if chi.len() != cfg.d() || e.n != cfg.n() {
        return false;
    }
    (0..cfg.d()).all(|i| {
        let mut coeffs = vec![K::zero(); cfg.d()];
        coeffs[i] = K::one();
        let s = euler_linear(cfg, &LinearForm::new(coeffs, K::zero()));
        s.commutator(e) == e.scale(&chi[i])
    })
}

/// Recompute `Σ cofactor · g` and compare with `E∂^u − b(θ)∂^v`.
pub fn verify_certificate<K: Scalar>(cfg: &Configuration, op: &SymmetryOperator<K>) -> bool {
    let lhs = op
        .element
        .mul_d_power(&op.shift_plus)
        .sub(&substitute_euler(cfg, &op.b).mul_d_power(&op.shift_minus));
    let rhs = op.certificate.pairs.iter().fold(Weyl::zero(cfg.n()), |acc, (q, g)| {
        acc.add(&q.mul(&Weyl::from_binomial(g)))
    });
    // every recorded generator must lie in I_A
    let homogeneous = op.certificate.pairs.iter().all(|(_, g)| {
        let p: Vec<i64> = g.plus.iter().map(|&x| x as i64).collect();
        let m: Vec<i64> = g.minus.iter().map(|&x| x as i64).collect();
        cfg.apply(&p) == cfg.apply(&m)
    });
    homogeneous && lhs == rhs
}

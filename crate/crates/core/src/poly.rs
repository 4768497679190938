//! Polynomials in the Euler symbols `s_1, ..., s_d`.
//!
//! b-polynomials are built as products of affine linear forms and are kept
//! factored; [`SPoly`] is the expanded form used when a general polynomial
//! is needed.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg;
use crate::scalar::Scalar;

/// `coeffs · s − constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm<K> {
    pub coeffs: Vec<K>,
    pub constant: K,
}

impl<K: Scalar> LinearForm<K> {
    pub fn new(coeffs: Vec<K>, constant: K) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn eval(&self, point: &[K]) -> K {
        linalg::dot(&self.coeffs, point) - self.constant.clone()
    }

    /// The form `s ↦ self(s + shift)`.
    pub fn shifted(&self, shift: &[K]) -> Self {
        LinearForm {
            coeffs: self.coeffs.clone(),
            constant: self.constant.clone() - linalg::dot(&self.coeffs, shift),
        }
    }

    pub fn expand(&self) -> SPoly<K> {
        let d = self.coeffs.len();
        let mut p = SPoly::constant(d, -self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            p = p + SPoly::variable(d, i).scale(c);
        }
        p
    }
}

impl<K: Scalar> fmt::Display for LinearForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "s{}", i + 1)?;
            } else {
                write!(f, "({c})*s{}", i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.constant.is_zero() {
            write!(f, " - ({})", self.constant)?;
        }
        Ok(())
    }
}

/// `scale · Π factors`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearProduct<K> {
    pub dim: usize,
    pub scale: K,
    pub factors: Vec<LinearForm<K>>,
}

impl<K: Scalar> LinearProduct<K> {
    pub fn one(dim: usize) -> Self {
        LinearProduct {
            dim,
            scale: K::one(),
            factors: Vec::new(),
        }
    }

    pub fn from_factors(dim: usize, factors: Vec<LinearForm<K>>) -> Self {
        LinearProduct {
            dim,
            scale: K::one(),
            factors,
        }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn eval(&self, point: &[K]) -> K {
        self.factors
            .iter()
            .fold(self.scale.clone(), |acc, f| acc * f.eval(point))
    }

    /// The polynomial `s ↦ self(s + shift)`.
    pub fn shifted(&self, shift: &[K]) -> Self {
        LinearProduct {
            dim: self.dim,
            scale: self.scale.clone(),
            factors: self.factors.iter().map(|f| f.shifted(shift)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        LinearProduct {
            dim: self.dim,
            scale: self.scale.clone() * other.scale.clone(),
            factors,
        }
    }

    pub fn expand(&self) -> SPoly<K> {
        self.factors
            .iter()
            .fold(SPoly::constant(self.dim, self.scale.clone()), |acc, f| {
                acc.mul(&f.expand())
            })
    }
}

impl<K: Scalar> fmt::Display for LinearProduct<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.scale);
        }
        if !self.scale.is_one() {
            write!(f, "{} * ", self.scale)?;
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("({x})")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// An expanded polynomial in `s_1, ..., s_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SPoly<K> {
    pub dim: usize,
    pub terms: BTreeMap<Vec<u32>, K>,
}

impl<K: Scalar> SPoly<K> {
    pub fn zero(dim: usize) -> Self {
        SPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: K) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn variable(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        let mut p = Self::zero(dim);
        p.add_term(e, K::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: K) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(K::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut p = Self::zero(self.dim);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v.clone() * c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }

    pub fn eval(&self, point: &[K]) -> K {
        self.terms.iter().fold(K::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc + t
        })
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

impl<K: Scalar> std::ops::Add for SPoly<K> {
    type Output = SPoly<K>;

    fn add(mut self, other: SPoly<K>) -> SPoly<K> {
        for (e, c) in other.terms {
            self.add_term(e, c);
        }
        self
    }
}

//! Exact coefficient fields.
//!
//! Operator and series arithmetic is written against [`Scalar`], an exact
//! field with a decidable integrality test. Floating point types are
//! deliberately not implementors: every invariant downstream is discrete.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// An exact ordered field embedding the integers.
pub trait Scalar: Num + Signed + Clone + Ord + Hash + Debug + Display + Send + Sync + 'static {
    fn from_i64(value: i64) -> Self;

    fn from_bigint(value: &BigInt) -> Self;

    fn is_integer(&self) -> bool;

    fn floor(&self) -> Self;

    /// `⌊self⌋` as an `i64`, if it fits.
    fn floor_i64(&self) -> Option<i64>;

    /// `self (self - 1) ... (self - k + 1)`; the empty product for `k = 0`.
    fn falling_factorial(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut cur = self.clone();
        for _ in 0..k {
            acc = acc * cur.clone();
            cur = cur - Self::one();
        }
        acc
    }

    /// True for elements of `Z_{<0}`.
    fn is_negative_integer(&self) -> bool {
        self.is_integer() && self.is_negative()
    }

    /// True for elements of `N = {0, 1, 2, ...}`.
    fn is_natural(&self) -> bool {
        self.is_integer() && !self.is_negative()
    }
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }

    fn floor_i64(&self) -> Option<i64> {
        BigRational::floor(self).to_integer().to_i64()
    }
}

impl Scalar for Rational64 {
    fn from_i64(value: i64) -> Self {
        Rational64::from_integer(value)
    }

    fn from_bigint(value: &BigInt) -> Self {
        Rational64::from_integer(value.to_i64().expect("integer exceeds i64 range"))
    }

    fn is_integer(&self) -> bool {
        *self.denom() == 1
    }

    fn floor(&self) -> Self {
        Rational64::floor(self)
    }

    fn floor_i64(&self) -> Option<i64> {
        Some(Rational64::floor(self).to_integer())
    }
}

/// Fractional part in `[0, 1)`.
pub fn fract<K: Scalar>(x: &K) -> K {
    x.clone() - x.floor()
}

pub fn is_zero_vec<K: Zero>(v: &[K]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn falling_factorial_matches_product() {
        assert_eq!(q(5, 1).falling_factorial(3), q(60, 1));
        assert_eq!(q(2, 1).falling_factorial(3), q(0, 1));
        assert_eq!(q(-1, 2).falling_factorial(2), q(3, 4));
        assert_eq!(q(7, 3).falling_factorial(0), q(1, 1));
    }

    #[test]
    fn integrality_predicates() {
        assert!(q(-3, 1).is_negative_integer());
        assert!(!q(-3, 2).is_negative_integer());
        assert!(q(0, 1).is_natural());
        assert!(!q(1, 2).is_natural());
        assert_eq!(fract(&q(-1, 3)), q(2, 3));
        assert!(Rational64::new(4, 2).is_integer());
    }
}

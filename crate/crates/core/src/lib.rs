//! Exact decision of D-isomorphism between A-hypergeometric systems.
//!
//! Given an integer matrix `A` whose columns lie on a hyperplane off the
//! origin, two parameters `β, β′` give isomorphic systems exactly when the
//! sets `E_τ(β)` and `E_τ(β′)` agree on every face `τ` of the cone over
//! `A`. This crate computes those sets, and for isomorphic pairs builds
//! explicit Weyl-algebra contiguity operators with certificates, checked
//! on truncated formal series solutions.
//!
//! Module map:
//! - [`lattice`], [`linalg`]: Hermite normal form, lattices, rational
//!   linear algebra.
//! - [`cone`], [`configuration`]: facets, faces and the validated matrix.
//! - [`semigroup`]: the sets `E_τ(β)`, normality, resonance.
//! - [`toric`]: toric ideals, the monomial ideals `M_χ`, b-ideals.
//! - [`weyl`]: the Weyl algebra and contiguity operators.
//! - [`series`]: truncated formal solutions.
//! - [`classify`]: classification, witnesses, special criteria.
//! - [`checks`], [`instances`]: self-checks and random test instances.
//!
//! The algebra (polynomials, Weyl elements, series, linear algebra) is
//! generic over a [`scalar::Scalar`] field; the aliases below fix it to
//! arbitrary-precision rationals, which every public entry point uses.

pub mod checks;
pub mod classify;
pub mod cone;
pub mod configuration;
pub mod error;
pub mod instances;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod semigroup;
pub mod series;
pub mod toric;
pub mod weyl;

pub use classify::{e_profile, iso_witness, isomorphic, EProfile, IsoWitness};
pub use configuration::Configuration;
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Weyl-algebra element over the rationals.
pub type WeylElement = weyl::Weyl<Rational>;
/// Truncated formal series over the rationals.
pub type FormalSeries = series::Series<Rational>;
/// Product of affine linear forms over the rationals.
pub type BPolynomial = poly::LinearProduct<Rational>;

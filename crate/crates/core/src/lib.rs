//! Exact arithmetic over Q, F_p, F_q and truncated Q_p, with the polynomial
//! machinery behind Krasner-type classification maps and etale-cover checks.

pub mod arith;
pub mod budget;
pub mod ee;
pub mod error;
pub mod extensions;
pub mod field;
pub mod krasner;
pub mod poly;
pub mod scalar;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement, FieldKind, PadicNumber};
pub use poly::{MultiPoly, Poly, RingMatrix};
pub use scalar::{Field, FiniteField, Ring};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Univariate polynomials over plain rationals.
pub type RatPoly = Poly<Rational>;
/// Univariate polynomials over a runtime field.
pub type KPoly = Poly<FieldElement>;
/// Multivariate polynomials over a runtime field.
pub type KMultiPoly = MultiPoly<FieldElement>;
/// Matrices over a runtime field.
pub type KMatrix = RingMatrix<FieldElement>;

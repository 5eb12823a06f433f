//! Exact computations with quivers, cluster algebras, g-vector fans, quivers
//! with potentials and triangulated surfaces.

pub mod cluster;
pub mod gfan;
pub mod qp;
pub mod quiver;
pub mod scalar;
pub mod surface;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use quiver::{Quiver, QuiverError};
pub use scalar::Scalar;

/// Exact rational numbers, the default coefficient field.
pub type Rational = BigRational;

/// Quivers with potentials over the rationals.
pub type RationalQp = qp::Qp<Rational>;

/// Laurent polynomials with exact rational coefficients.
pub type Laurent = cluster::LaurentPoly<Rational>;

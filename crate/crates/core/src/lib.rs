//! Exact computational kernel for Weil algebras, jets of submanifolds and
//! their contact systems, and Weil A-points of `R^n`.
//!
//! Everything is generic over an exact [`Scalar`] field; the aliases at the
//! crate root fix the scalar to arbitrary-precision rationals, which is what
//! the command line front end uses.

pub mod a_points;
pub mod error;
pub mod exact_linear;
pub mod jet_spectrum;
pub mod scalar;
pub mod weil_core;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

pub type QPoly = exact_linear::TruncatedPolynomial<Rational>;
pub type QSubspace = exact_linear::Subspace<Rational>;
pub type QAlgebra = weil_core::WeilAlgebra<Rational>;
pub type QMorphism = weil_core::AlgebraMorphism<Rational>;
pub type QJet = jet_spectrum::Jet<Rational>;
pub type QPoint = a_points::APoint<Rational>;
pub type QGroupLaw = a_points::GroupLaw<Rational>;

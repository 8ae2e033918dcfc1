//! Weil algebras: finite-dimensional local quotients of truncated polynomial
//! rings, with their structure constants, derivations, tensor products and
//! morphisms.

mod algebra;
mod derivation;
mod morphism;
mod tensor;

pub use algebra::{AlgebraInvariants, CoefficientRing, Polynomials, Scalars, WeilAlgebra, ORDER_SEARCH_LIMIT};
pub use derivation::DerivationSpace;
pub use morphism::{factor_epimorphism, ideal_stability, AlgebraMorphism, StabilityReport, CONNECTEDNESS_NOTE};

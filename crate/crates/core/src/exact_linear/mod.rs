//! Exact scalars, truncated multivariate polynomials and canonical subspaces.
//!
//! Every higher construction reduces to the linear algebra here. Dense
//! vectors are only materialised inside linear-algebra calls; polynomials are
//! stored sparsely.

pub mod monomial;
pub mod parse;
pub mod poly;
pub mod subspace;

pub use monomial::{binomial, MonomialBasis, MultiIndex};
pub use parse::{parse_polynomial, parse_polynomial_with};
pub use poly::{default_variable_names, TruncatedPolynomial, UNBOUNDED};
pub use subspace::{
    combine, invert, kernel, mat_mul, mat_vec, rank, solve, subspace_query, unit_vector, Subspace, SubspaceAnswer,
    SubspaceQuery,
};

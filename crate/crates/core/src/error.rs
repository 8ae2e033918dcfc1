use thiserror::Error;

/// Errors raised by kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("coordinate change has a non-zero constant term in image {index}")]
    ConstantTermInCoordinateChange { index: usize },

    #[error("quotient_dimension requires the second subspace to lie inside the first")]
    NotASubspace,

    #[error("generator {index} has a non-zero constant term at the base point")]
    GeneratorNotVanishing { index: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("the generators contain a unit; the quotient is the zero ring")]
    EmptyQuotient,

    #[error("generator {index} has terms of degree {degree}, beyond the order hint window {window}; raise the hint")]
    HintTooSmall { index: usize, degree: u32, window: u32 },

    #[error("relations do not define a finite-dimensional local quotient within degree {limit}")]
    NotFiniteDimensional { limit: u32 },

    #[error("morphism is not well defined: defining relation {witness} maps to a non-zero element")]
    NotWellDefined { witness: String },

    #[error("morphism is not an epimorphism")]
    NotEpimorphism,

    #[error("subspace is not an ideal of the algebra")]
    NotAnIdeal,

    #[error("the function is not in the jet ideal")]
    FNotInIdeal,

    #[error("algebras differ")]
    AlgebraMismatch,

    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),

    #[error("group law axiom violated: {0}")]
    GroupAxiom(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

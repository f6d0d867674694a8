use thiserror::Error;

/// Errors produced by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("denominator vanishes identically under the substitution")]
    SpecializationPole,

    #[error("denominator vanishes at the evaluation point")]
    EvalPole,

    #[error("no value supplied for variable {0}")]
    MissingVariable(char),

    #[error("cell ({0}, {1}) lies outside the shape")]
    CellOutOfShape(usize, usize),

    #[error("degree {needed} exceeds the configured cap {cap}")]
    DegreeCapExceeded { needed: u32, cap: u32 },

    #[error("the zero vector is not a generator")]
    ZeroVector,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("index must be nonzero")]
    ZeroIndex,

    #[error("pair ({0}, {1}) is not coprime")]
    NotCoprime(i64, i64),

    #[error("cable multiplicity must be positive, got {0}")]
    NonpositiveM(i64),

    #[error("no admissible lattice decomposition found for ({0}, {1})")]
    DecompositionNotFound(i64, i64),

    #[error("pipeline quotient is not a signed monomial in v and s")]
    NotAMonomialRatio,

    #[error("monomial word length {0} exceeds the rewriting bound")]
    WordTooLong(usize),

    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

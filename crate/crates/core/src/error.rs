//! Shared error type for the whole engine.

use thiserror::Error;

/// Errors surfaced by the exact algebra, the Lie data, mutations and the
/// counting formulas. Exactness failures are errors, never silent
/// approximations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable sets differ: [{0}] vs [{1}]")]
    VarSetMismatch(String, String),
    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cyclic substitution involving `{0}`")]
    CyclicSubstitution(String),
    #[error("pole at zero: variable `{0}` occurs with negative exponent")]
    PoleAtZero(String),
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("node {0} out of range 1..={1}")]
    NodeOutOfRange(usize, usize),
    #[error("mutation direction {0} out of range 1..={1}")]
    DirectionOutOfRange(usize, usize),
    #[error("matrix is not skew-symmetric at entry ({0},{1})")]
    NotSkewSymmetric(usize, usize),
    #[error("mutation in direction {0} hit a zero cluster variable")]
    ZeroClusterVariable(usize),
    #[error("seed dimensions differ: {0} vs {1}")]
    SeedDimensionMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("tolerance exceeded: max deviation {0}")]
    ToleranceExceeded(f64),
    #[error("hypercube ordering mismatch: {0}")]
    OrderingMismatch(String),
    #[error("block form mismatch: {0}")]
    BlockMismatch(String),
    #[error("tensor oracle too large: {0}")]
    OracleTooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

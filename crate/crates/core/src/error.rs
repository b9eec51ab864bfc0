use thiserror::Error;

use crate::field::FieldConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: {0} and {1}")]
    MixedFields(FieldConfig, FieldConfig),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("duplicate node {0}")]
    DuplicateNodes(String),
    #[error("node index {index} out of range 1..={len}")]
    BadIndex { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("characteristic {p} is below the largest multiplicity {max}")]
    CharacteristicTooSmall { p: u64, max: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix with {0} columns is too large for the brute-force oracle")]
    TooLarge(usize),
    #[error("infeasible request: {0}")]
    InfeasibleRequest(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

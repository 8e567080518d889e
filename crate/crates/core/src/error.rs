use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^16")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("elements belong to different fields (p = {0} vs p = {1})")]
    FieldMismatch(u32, u32),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("margin mismatch: {0}")]
    Margin(String),
    #[error("invalid composition: {0}")]
    Composition(String),
    #[error("bi-hinge axioms violated: {0}")]
    Axioms(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error(
        "enumeration budget exceeded: {what} has cardinality {cardinality}, budget is {budget}"
    )]
    Budget {
        what: String,
        cardinality: u128,
        budget: u128,
    },
    #[error("integer overflow while computing {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

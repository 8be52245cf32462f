use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("subspace is not closed under multiplication: ({left})·({right}) leaves it")]
    NotClosed { left: String, right: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a perfect square at point {point}: 1 - s² = {value}")]
    NotASquare { point: usize, value: String },
    #[error("endpoint constraint violated: {0}")]
    EndpointConstraint(String),
    #[error("square-root pair invalid: {0}")]
    InvalidSqrtPair(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("canonical map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("axiom check failed: {0}")]
    CheckFailed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-supplied parameter is out of range or malformed.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// An element or index does not belong to the structure it is used with.
    #[error("invalid element: {0}")]
    InvalidElement(String),
    /// Input data violated an invariant (probabilities, normalization, ...).
    #[error("validation failed: {0}")]
    Validation(String),
    /// A precondition of the requested analysis does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The problem exceeds a configured size or work budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An iterative method stopped before reaching its tolerance.
    #[error("no convergence: {0}")]
    Convergence(String),
    /// Non-finite or missing numeric data.
    #[error("invalid data: {0}")]
    Data(String),
    /// Matrix or table dimensions do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    /// A JSON document did not match the expected schema.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    /// An internal consistency check failed. Indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

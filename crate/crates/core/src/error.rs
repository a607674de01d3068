use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coset enumeration did not close within {limit} cosets")]
    EnumerationOverflow { limit: usize },
    #[error("coset action is not closed: {0}")]
    NotClosed(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("extension is not central: {0}")]
    NotCentral(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("polynomial violates Poincare duality: {0}")]
    DualityViolation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("irreducible decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("threshold violation: {0}")]
    ThresholdViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable identifier used in machine-readable output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EnumerationOverflow { .. } => "EnumerationOverflow",
            Error::NotClosed(_) => "NotClosed",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NotCentral(_) => "NotCentral",
            Error::Parse { .. } => "ParseError",
            Error::UnknownEntry(_) => "UnknownEntry",
            Error::DualityViolation(_) => "DualityViolation",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DecompositionFailure(_) => "DecompositionFailure",
            Error::ThresholdViolation(_) => "ThresholdViolation",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

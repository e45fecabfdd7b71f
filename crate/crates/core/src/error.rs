//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A strict comparison against a declared-irrational quantity fell inside
    /// the 1e-12 tolerance band. The caller must decide, not us.
    #[error("boundary undecidable: {0}")]
    BoundaryUndecidable(String),

    /// A bounded witness scan ran out before producing what the case analysis
    /// guarantees to exist. Always a hard error: it signals a precision bug,
    /// never mathematical absence.
    #[error("scan exhausted at bound {bound}: {context}")]
    ScanExhausted { bound: u64, context: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("unsupported config: {0}")]
    UnsupportedConfig(String),

    #[error("declared precision of {declared} significant digits is too low; need at least {required}")]
    PrecisionInsufficient { declared: usize, required: usize },

    #[error("singular point ({re}, {im}) lies within 1e-9 of the integration boundary")]
    SingularityOnBoundary { re: f64, im: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid value: {0}")]
    InvalidValue(String),
}

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Point operations on a space with no coordinate model.
    #[error("unsupported space {0}: point operations are not available")]
    UnsupportedSpace(String),

    /// Mismatched lengths or coordinate counts.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Weights that are non-positive or do not sum to one.
    #[error("invalid weights: {0}")]
    Weights(String),

    /// Exact integer arithmetic left the 64-bit range.
    #[error("integer overflow in exact arithmetic: {0}")]
    Overflow(String),

    /// A floating-point quantity left the binary64 range.
    #[error("numeric overflow: {0}")]
    NumericOverflow(String),

    /// A computed quantity violates a bound it must satisfy beyond roundoff.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// An iterative method did not reach its tolerance.
    #[error("no convergence: {what} (best estimate {estimate:e})")]
    Convergence { what: String, estimate: f64 },

    /// Malformed textual input (space ids, fractions, files).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

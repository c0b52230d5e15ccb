//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by simulation, interpolation, analytics, and estimation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside its admissible domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The input carries too few observations for the requested operation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The input series has no one-period variation, so ratio statistics
    /// are undefined.
    #[error("degenerate series: {0}")]
    DegenerateSeries(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

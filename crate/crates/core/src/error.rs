use thiserror::Error;

/// Errors raised by the geometry and combinatorics kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point sets share coordinate {axis} (value {value})")]
    SharedCoordinate { axis: usize, value: String },

    /// A resource or enumeration cap was exceeded. Callers that surface
    /// errors to a user should treat this separately from bad input.
    #[error("guard tripped: {what} ({size} exceeds cap {cap})")]
    Guard { what: String, size: String, cap: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("input outside domain: {0}")]
    OutOfDomain(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn guard(what: impl Into<String>, size: impl ToString, cap: impl ToString) -> Self {
        Error::Guard {
            what: what.into(),
            size: size.to_string(),
            cap: cap.to_string(),
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

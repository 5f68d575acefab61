use thiserror::Error;

/// Errors raised by the exact engine and the sampler.
///
/// Every variant is a precondition violation on the caller's side; none of
/// them indicate an internal failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {weight} exceeds the configured bound {bound}")]
    WeightBound { weight: usize, bound: usize },

    #[error("{what}: {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("weight mismatch: |lambda| = {lambda}, |mu| = {mu}")]
    WeightMismatch { lambda: usize, mu: usize },

    #[error("partition {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("|lambda| - |nu| = {0} is odd; Hermite coefficients vanish across parities")]
    ParityViolation(usize),

    #[error("points must be pairwise distinct (coincident value {0})")]
    CoincidentPoints(String),

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cannot substitute N = 0 into a negative power")]
    ZeroSubstitution,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable tag for structured error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::WeightBound { .. } | Error::BoundExceeded { .. } => "bound-exceeded",
            Error::WeightMismatch { .. } => "weight-mismatch",
            Error::NotContained { .. } => "not-contained",
            Error::ParityViolation(_) => "parity-violation",
            Error::CoincidentPoints(_) => "coincident-points",
            Error::UnsupportedMode(_) => "unsupported-mode",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::Parse(_) => "parse",
            Error::ZeroSubstitution => "zero-substitution",
        }
    }
}

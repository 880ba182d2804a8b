use thiserror::Error;

/// Errors produced by the computation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gcd of zero polynomials")]
    GcdOfZero,
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} exceeds configured limit {limit}")]
    LimitExceeded { what: String, limit: usize },
    #[error("reduction does not split completely mod {p}")]
    NotSplitModP { p: u64 },
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("uniqueness certificate failed: winding number {winding}")]
    CertificateFailed { winding: f64 },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for capacity limits (as opposed to misuse).
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

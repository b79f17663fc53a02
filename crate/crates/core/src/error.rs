use thiserror::Error;

/// Everything that can go wrong in the algebraic core.
///
/// Mathematical verdicts (non-membership, UNSAT, a failing Borel check) are
/// ordinary return values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("truncation mismatch: degree {left} vs degree {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("series is zero")]
    ZeroSeries,

    #[error("divisor {index} is zero")]
    ZeroDivisor { index: usize },

    #[error("substituted series {index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize },

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("fibre point {index} does not map to the query point")]
    FibreMismatch { index: usize },

    #[error("no stabilization over r = {l}..={r_max}; dims {dims:?}")]
    NoStabilization { l: u32, r_max: u32, dims: Vec<usize> },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_mismatch(what: impl Into<String>) -> Error {
    Error::DimensionMismatch(what.into())
}

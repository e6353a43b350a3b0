use thiserror::Error;

/// Errors raised by the algebra engines and the seed-file front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("twist exponent is not an integer multiple of 1/2: {0}")]
    Integrality(String),

    #[error("not a compatible pair: {0}")]
    Incompatible(String),

    #[error("invalid mutation data: {0}")]
    MutationData(String),

    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),

    #[error("sign-coherence violated: {0}")]
    SignCoherence(String),

    #[error("series inversion failed: {0}")]
    Inversion(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// An identity the theory guarantees did not hold.
    #[error("falsified: {0}")]
    Falsified(String),

    #[error("summation bound exceeded: {0}")]
    Unbounded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

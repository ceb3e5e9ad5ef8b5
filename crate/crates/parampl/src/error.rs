use thiserror::Error;

/// Errors produced by the simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The Fock-space cutoff holds too little headroom for the requested
    /// state or operation; probability mass would pile up at the cutoff.
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    /// Two operands live on different cutoffs, or an index lies outside the
    /// retained basis.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A power series failed to reach its termination criterion within the
    /// iteration budget.
    #[error("series did not converge: {0}")]
    NonConvergent(String),

    /// The requested dense-oracle computation is too large to be practical.
    #[error("dimension too large: {0}")]
    DimensionTooLarge(String),

    /// A conditional state was requested for an outcome of zero probability.
    #[error("zero-probability outcome: {0}")]
    ZeroProbability(String),

    /// Amplitude gain outside the physical range `g >= 1`.
    #[error("invalid gain: {0}")]
    InvalidGain(String),

    /// Input amplitude outside the domain of the requested quantity.
    #[error("invalid amplitude: {0}")]
    InvalidAmplitude(String),

    /// Detector error parameters outside their allowed ranges.
    #[error("invalid error model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

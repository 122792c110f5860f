//! Error type shared by all engines.

use thiserror::Error;

/// Everything that can go wrong when setting up or running a scattering
/// computation.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A grid was requested that cannot support the operation.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A closed-form expression was evaluated outside its validity domain.
    #[error("closed form not applicable: {0}")]
    OutsideValidity(String),

    /// The ODE solution left its physical bounds; the step size is too large
    /// for the requested configuration.
    #[error("step-size rejection: {0}")]
    StepSizeRejected(String),

    /// An operation was asked for in a configuration it does not support
    /// (e.g. frequency-domain density at finite interaction time).
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A sampled-pulse file could not be parsed.
    #[error("pulse samples: {0}")]
    PulseSamples(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

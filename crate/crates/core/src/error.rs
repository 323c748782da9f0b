use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter was outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A label string did not parse to a known catalog entry or space.
    #[error("unknown label: {0}")]
    UnknownLabel(String),

    /// A documented precondition did not hold for the given arguments.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A supplied witness or certificate failed validation against its object.
    #[error("witness validation failed: {0}")]
    WitnessValidation(String),

    /// A strategy, chooser, or oracle misbehaved during a run. `round` is 1-based.
    #[error("fault at round {round}: {reason}")]
    Fault { round: u64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the kicked-top library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QktError {
    /// Invalid argument or configuration value.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A dense multi-qubit object would exceed the configured qubit cap.
    #[error("resource cap exceeded: {requested} qubits requested, cap is {cap}")]
    ResourceCap { requested: usize, cap: usize },

    /// A quantity that must be real (or Hermitian, or normalized) is not.
    #[error("numerical integrity violated: {0}")]
    NumericalIntegrity(String),

    /// An argument makes the requested quantity undefined (zero norm etc).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("series too short: {len} samples, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, QktError>;

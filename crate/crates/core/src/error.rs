use thiserror::Error;

/// Errors produced by state construction, gate application and schedule compilation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("pair gate acts on qubit {0} twice")]
    SameQubit(usize),

    #[error("state is not normalized (|norm - 1| = {deviation:e})")]
    NotNormalized { deviation: f64 },

    #[error("full-space representation is limited to {max} qubits, got {n_qubits}")]
    SizeLimit { n_qubits: usize, max: usize },

    #[error("n must be a power of two (got {0})")]
    NotPowerOfTwo(usize),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),
    #[error("qubit count {0} out of range (1..={max})", max = crate::pauli::MAX_QUBITS)]
    QubitRange(usize),
    #[error("invalid Pauli string: {0}")]
    BadPauli(String),
    #[error("graph parse error: {0}")]
    Parse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph must be connected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Falsified(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BadPauli(_)
            | Error::Parse(_)
            | Error::InvalidGraph(_)
            | Error::Disconnected
            | Error::Precondition(_)
            | Error::Resource(_)
            | Error::Unknown { .. }
            | Error::QubitRange(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::QubitMismatch(..) | Error::Numerical(_) | Error::Falsified(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

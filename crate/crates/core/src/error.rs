use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("label collision: subsystem `{0}` appears in both operands")]
    LabelCollision(String),

    #[error("duplicate label `{0}` in register")]
    DuplicateLabel(String),

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("zero-probability branch: selection probability {probability:e} is below {threshold:e}")]
    ZeroProbability { probability: f64, threshold: f64 },

    #[error("expected a pure state, purity is {0}")]
    NotPure(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("incomplete tomography data: {0}")]
    IncompleteData(String),

    #[error("register of {qubits} qubits exceeds the configured maximum of {max}")]
    TooLarge { qubits: usize, max: usize },

    #[error("undefined visibility: {0}")]
    UndefinedVisibility(String),

    #[error("dataset parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

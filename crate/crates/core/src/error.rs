use thiserror::Error;

/// Errors raised across state construction, matrix evaluation and file handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("qubit count must be an even integer >= 2, got {0}")]
    InvalidQubitCount(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state has no nonzero amplitude")]
    ZeroState,

    #[error("excitation count {l} out of range 1..={max} for {n} qubits", max = n - 1)]
    InvalidExcitation { l: usize, n: usize },

    #[error("family chi{k} is not defined for n = {n}")]
    UnsupportedFamily { k: usize, n: usize },

    #[error("unknown family index {0} (expected 1..=7)")]
    InvalidFamily(usize),

    #[error("capacity exceeded: {what} {value} is above the limit {limit}")]
    CapacityExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("index out of range: {what} = {value}, bound {bound}")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("cofactor oracle limited to dimension 6, got {0}")]
    OracleTooLarge(usize),

    #[error("no operator with |det| in range after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("local operator is not invertible")]
    SingularOperator,

    #[error("non-finite floating-point value")]
    NonFinite,

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("duplicate amplitude index {0}")]
    DuplicateIndex(usize),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

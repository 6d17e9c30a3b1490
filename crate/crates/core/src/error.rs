use thiserror::Error;

/// Errors raised by the simulator and its analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisIndexOutOfRange { index: usize, num_qubits: usize },

    #[error("register of {0} qubits is not supported (1..={max})", max = crate::state::MAX_QUBITS)]
    UnsupportedRegister(usize),

    #[error("size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("ancilla {ancilla} overlaps the operator support")]
    AncillaInSupport { ancilla: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("mean-field iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("sector dimension {dim} exceeds the dense limit {limit}")]
    SectorTooLarge { dim: usize, limit: usize },

    #[error("state has weight {leak:e} outside the requested sector")]
    OutsideSector { leak: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Process exit status: 2 for configuration and input errors, 3 for
    /// numeric guards, 4 for i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 4,
            Error::NotHermitian(_)
            | Error::NotUnitary(_)
            | Error::NotConverged { .. }
            | Error::SectorTooLarge { .. }
            | Error::OutsideSector { .. }
            | Error::Eigensolver(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

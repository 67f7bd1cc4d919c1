use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate `{gate}` takes {expected} parameter(s), got {got}")]
    ParamCount {
        gate: String,
        expected: usize,
        got: usize,
    },

    #[error("dense matrix of {requested} elements exceeds the dense cap of {cap} elements")]
    DenseCapacity { requested: u128, cap: usize },

    #[error("compressed matrix of {requested} entries exceeds the entry cap of {cap} entries")]
    EntryCapacity { requested: u128, cap: usize },

    #[error("index space overflow: {0}")]
    IndexOverflow(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid state vector: {0}")]
    InvalidState(String),

    #[error("matrix row {row} has no nonzero entry and cannot be stored as DAS")]
    UnrepresentableRow { row: u64 },

    #[error("malformed DAS stream: {0}")]
    MalformedStream(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid block size {block} for n = {n}: {reason}")]
    InvalidBlockSize { block: u64, n: u32, reason: String },

    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),

    #[error("norm drifted to {norm} after step {step}")]
    NormDrift { step: usize, norm: f64 },

    #[error("counter mismatch: {0}")]
    CounterMismatch(String),

    #[error("bad dump: {0}")]
    BadDump(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

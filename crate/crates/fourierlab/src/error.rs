use thiserror::Error;

/// Errors shared by every module of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature grid too coarse: need at least {needed} nodes, got {got}")]
    GridTooCoarse { needed: usize, got: usize },
    #[error("truncation order {requested} exceeds table degree {available}")]
    OrderExceedsTable { requested: usize, available: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("unknown catalog waveform: {0}")]
    UnknownWaveform(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

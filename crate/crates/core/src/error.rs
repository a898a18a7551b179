use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("exploration bound of {bound} labels exceeded")]
    BoundExceeded { bound: usize },
    #[error("eigenvalues closer than the gap tolerance {gap:e}; rerun in exact mode")]
    SpectralGap { gap: f64 },
    #[error("not representable in this scalar field: {0}")]
    NotInField(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

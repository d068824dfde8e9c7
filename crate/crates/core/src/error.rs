use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("constant term is not a square: {0}")]
    NotA12Compatible(String),
    #[error("resample needed: {0}")]
    ResampleNeeded(String),
    #[error("quartic is not smooth")]
    NotSmooth,
    #[error("unsupported tower: {0}")]
    UnsupportedTower(String),
    #[error("malformed json: {0}")]
    Json(String),
    #[error("internal error: {0}")]
    InternalError(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

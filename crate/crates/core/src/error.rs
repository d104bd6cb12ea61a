use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("series of degree {have} cannot be truncated to order {need}")]
    Truncation { have: usize, need: usize },

    #[error("normalization requires a_0 = 0, found {0}")]
    Normalization(String),

    #[error("undefined for mu = 0 (vanishing Pochhammer coefficients)")]
    ZeroMu,

    #[error("triangular scheme rejected: {0}")]
    Scheme(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

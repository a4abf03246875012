use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: n = {n}, m = {m} (need n >= 1 and m >= n)")]
    InvalidDimensions { n: usize, m: u64 },

    #[error("key already present in the index")]
    DuplicateKey,

    #[error("no free position left")]
    EmptySet,

    #[error("position {0} is not free")]
    NotFree(u64),

    #[error("position {position} outside 1..={m}")]
    OutOfRange { position: u64, m: u64 },

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("invalid fraction {0}: must lie strictly between 0 and 1")]
    InvalidFraction(f64),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether this error stems from user-supplied configuration rather than
    /// an I/O failure or an internal invariant.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidDimensions { .. }
                | Error::Config(_)
                | Error::Precondition(_)
                | Error::InvalidFraction(_)
                | Error::Json(_)
        )
    }
}

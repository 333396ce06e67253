use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimensionality mismatch: expected {expected} genes, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("gene {index} = {value} is outside [{lo}, {hi}]")]
    OutOfBounds {
        index: usize,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("crossover needs at least two genes, got {0}")]
    CrossoverInfeasible(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid problem data: {0}")]
    Validation(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            _ => 2,
        }
    }
}

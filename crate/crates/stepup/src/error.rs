use thiserror::Error;

/// Errors for the whole toolkit.
///
/// The CLI maps these onto exit codes: `Budget` becomes exit code 3, every
/// other error becomes exit code 2 (bad input). A verification that runs to
/// completion but finds a monochromatic witness is not an error; the CLI
/// reports it as exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex width mismatch: {0} vs {1}")]
    WidthMismatch(u32, u32),

    #[error("delta is undefined for equal vertices")]
    UndefinedDelta,

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("budget exceeded: needs {required} units, limit is {limit}")]
    Budget { required: u128, limit: u128 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

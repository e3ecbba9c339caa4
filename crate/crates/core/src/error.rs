use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a construction precondition.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// Internal consistency check failed.
    #[error("diagnostic: {0}")]
    Diagnostic(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

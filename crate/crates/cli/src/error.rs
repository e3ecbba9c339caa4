use std::fmt;
use std::process::ExitCode;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// A check did not hold (exit 1).
    Failed(String),
    /// Invalid parameters, malformed input or refused workload (exit 2).
    Config(String),
    /// Unreadable or unwritable path (exit 3).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Failed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(msg) => write!(f, "check failed: {msg}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl From<quadseq::Error> for CliError {
    fn from(err: quadseq::Error) -> Self {
        match err {
            quadseq::Error::Io(e) => CliError::Io(e.to_string()),
            quadseq::Error::Diagnostic(msg) => CliError::Failed(msg),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Io(format!("json: {err}"))
    }
}

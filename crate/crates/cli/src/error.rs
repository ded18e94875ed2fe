use std::path::PathBuf;
use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] relaxgap_core::Error),
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot write report: {0}")]
    Output(std::io::Error),
}

impl CliError {
    /// 3 for invalid input, 4 for an exhausted search budget, 5 for IO.
    /// Usage errors exit with 2 before any of these can arise.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Core(e) if e.is_budget() => 4,
            CliError::Core(_) | CliError::Format { .. } => 3,
            CliError::Io { .. } | CliError::Output(_) => 5,
        })
    }
}

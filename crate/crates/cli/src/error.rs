use ybhom_core::Error;

/// Failure modes of a command, each with a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Bound(String),
    #[error(transparent)]
    Core(Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    /// 2 for bad input, 3 for exceeded resource bounds.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Bound(_) | CliError::Core(Error::EnumerationBound | Error::MonoidBound(_)) => 3,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

use pathpoly_core::ErrorKind;
use thiserror::Error;

/// Failures of a command, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, unreadable files, malformed input. Exit status 1.
    #[error("{0}")]
    Input(String),
    /// Well-formed input violating a mathematical precondition. Exit status 2.
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }

    pub fn context(self, what: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{what}: {m}")),
            CliError::Precondition(m) => CliError::Precondition(format!("{what}: {m}")),
        }
    }
}

impl From<pathpoly_core::Error> for CliError {
    fn from(e: pathpoly_core::Error) -> Self {
        match e.kind() {
            ErrorKind::Input => CliError::Input(e.to_string()),
            ErrorKind::Precondition => CliError::Precondition(e.to_string()),
        }
    }
}

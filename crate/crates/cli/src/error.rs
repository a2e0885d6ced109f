use thiserror::Error;

/// Failures that end a command, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Core(requilibrium::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Core(requilibrium::Error::ParticleCount { .. }) => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl From<requilibrium::Error> for CliError {
    fn from(e: requilibrium::Error) -> Self {
        CliError::Core(e)
    }
}

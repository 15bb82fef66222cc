use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("solver: {0}")]
    Solver(#[from] vatom_core::Error),

    #[error("{failed} of {total} sweep points failed (more than 1%)")]
    SweepFailures { failed: usize, total: usize },

    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for anything the user can fix in the config or paths, 3 for
    /// numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Solver(_) | CliError::SweepFailures { .. } => 3,
        }
    }
}

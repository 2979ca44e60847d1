use efp_core::EfpError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] EfpError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(EfpError::Parse { .. } | EfpError::InvalidParams(_)) => "invalid-input",
            CliError::Core(EfpError::Regime(_) | EfpError::Domain { .. }) => "domain",
            CliError::Core(_) => "computation",
            CliError::Io(_) | CliError::Csv(_) => "io",
        }
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "usage" | "invalid-input" => 2,
            "domain" => 3,
            "io" => 5,
            _ => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

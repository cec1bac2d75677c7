use std::process::ExitCode;

use thiserror::Error;

/// Errors surfaced by the binary, each tied to a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed")]
    Verify,
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Consistency(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verify => 1,
            CliError::Domain(_) => 2,
            CliError::Consistency(_) => 3,
            CliError::Io(_) => 4,
        })
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }
}

impl From<rho_lattice_core::Error> for CliError {
    fn from(e: rho_lattice_core::Error) -> Self {
        match e {
            rho_lattice_core::Error::Domain(_) => CliError::Domain(e.to_string()),
            rho_lattice_core::Error::Consistency(_) => CliError::Consistency(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(format!("json error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

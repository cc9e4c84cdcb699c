use std::process::ExitCode;

use thiserror::Error;

/// CLI-facing errors, each mapped to a stable exit code:
/// 2 configuration, 3 geometry, 4 I/O.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Geometry(_) => ExitCode::from(3),
            CliError::Io(_) => ExitCode::from(4),
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn geometry(msg: impl Into<String>) -> Self {
        CliError::Geometry(msg.into())
    }
}

impl From<fdca_core::Error> for CliError {
    fn from(err: fdca_core::Error) -> Self {
        use fdca_core::Error as E;
        match err {
            E::UnknownMeasure(_)
            | E::EnumerationCapExceeded { .. }
            | E::TooFewSamples { .. }
            | E::TooManySamples { .. }
            | E::BadExponent
            | E::NoExponent(_)
            | E::UnsortedSeries
            | E::TrivialClass
            | E::ZeroCost
            | E::CrossCheckFailed { .. }
            | E::Overflow(_) => CliError::Config(err.to_string()),
            _ => CliError::Geometry(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

use std::fmt;
use std::process::ExitCode;

/// A failed command and the exit status it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    CorruptCache(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::CorruptCache(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::CorruptCache(m) => write!(f, "corrupt cache: {m}"),
        }
    }
}

impl From<moebius_core::Error> for CliError {
    fn from(e: moebius_core::Error) -> Self {
        match e {
            moebius_core::Error::CorruptCache(m) => CliError::CorruptCache(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json encoding failed: {e}"))
    }
}

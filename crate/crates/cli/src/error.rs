use std::fmt;
use std::io;
use std::path::Path;

use entfluct::Error;

/// Exit status 1: bad flags, values outside a command's domain, I/O.
pub const EXIT_USAGE: i32 = 1;
/// Exit status 2: numerical failure or a failed verification.
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical { lambda: Option<f64>, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: &Path, e: io::Error) -> Self {
        CliError::Usage(format!("{}: {e}", path.display()))
    }

    /// Library error at a given coupling.
    pub fn at(lambda: f64, e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::InvalidChain(_) => CliError::Usage(format!("λ = {lambda}: {e}")),
            Error::CriticalPoint => CliError::Numerical {
                lambda: Some(lambda),
                message: "S and D diverge at the critical point; for 0 < |1 − λ| < 1 use the \
                          asymptote operations (asymptote_entropy, asymptote_dispersion)"
                    .to_string(),
            },
            other => CliError::Numerical {
                lambda: Some(lambda),
                message: other.to_string(),
            },
        }
    }

    pub fn numerical(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::InvalidChain(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical {
                lambda: None,
                message: other.to_string(),
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical { .. } => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Numerical {
                lambda: Some(l),
                message,
            } => write!(f, "numerical failure at λ = {l}: {message}"),
            CliError::Numerical { lambda: None, message } => write!(f, "numerical failure: {message}"),
        }
    }
}

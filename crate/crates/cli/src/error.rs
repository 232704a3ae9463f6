use std::fmt;

use sellmax_core::Error;

/// Failures mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Regime(String),
    Verification(String),
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Regime(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Resource(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (CliError::Usage(m)
        | CliError::Regime(m)
        | CliError::Verification(m)
        | CliError::Resource(m)) = self;
        f.write_str(m)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::InvalidParams(_) => CliError::Usage(e.to_string()),
            Error::Regime(m) => CliError::Regime(m),
            Error::MissingCurve => CliError::Regime(
                "a boundary curve is required: pass --boundary-file or drop --no-solve".into(),
            ),
            Error::Bracket { .. } => CliError::Verification(e.to_string()),
            Error::Resource(_) => CliError::Resource(e.to_string()),
        }
    }
}

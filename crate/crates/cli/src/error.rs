use std::fmt::Display;

/// A failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const PARSE: u8 = 1;
pub const USAGE: u8 = 2;
pub const TRUNCATED: u8 = 3;
pub const VERIFY: u8 = 4;

impl CliError {
    pub fn parse(message: impl Display) -> Self {
        Self {
            code: PARSE,
            message: message.to_string(),
        }
    }

    pub fn usage(message: impl Display) -> Self {
        Self {
            code: USAGE,
            message: message.to_string(),
        }
    }

    pub fn truncated(message: impl Display) -> Self {
        Self {
            code: TRUNCATED,
            message: message.to_string(),
        }
    }

    pub fn verify(message: impl Display) -> Self {
        Self {
            code: VERIFY,
            message: message.to_string(),
        }
    }

    /// I/O failures share the input-error code.
    pub fn io(context: impl Display, err: std::io::Error) -> Self {
        Self {
            code: PARSE,
            message: format!("{context}: {err}"),
        }
    }
}

/// Maps a library error raised during computation.
impl From<pathhom::Error> for CliError {
    fn from(e: pathhom::Error) -> Self {
        use pathhom::Error::*;
        match e {
            PathCapExceeded { .. } => Self::truncated(e),
            InvalidArgument(_) | InvalidPrime(_) => Self::usage(e),
            _ => Self::parse(e),
        }
    }
}

use std::fmt;
use std::path::Path;

/// Failure of a subcommand, split by who is at fault.
#[derive(Debug)]
pub enum CliError {
    /// Bad input, missing file, inconsistent arguments: exit code 1.
    User(String),
    /// A result violated one of its own invariants: exit code 2.
    Internal(String),
}

impl CliError {
    pub fn user(msg: impl Into<String>) -> Self {
        CliError::User(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError::Internal(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::User(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::User(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<semshift::Error> for CliError {
    fn from(e: semshift::Error) -> Self {
        CliError::User(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub trait WithPath<T> {
    /// Prefixes any error with the file it came from.
    fn at(self, path: &Path) -> CliResult<T>;
}

impl<T> WithPath<T> for semshift::Result<T> {
    fn at(self, path: &Path) -> CliResult<T> {
        self.map_err(|e| match e {
            semshift::Error::Io { .. } => CliError::User(e.to_string()),
            other => CliError::User(format!("{}: {other}", path.display())),
        })
    }
}

use std::fmt;
use std::process::ExitCode;

use rumor_core::Error;

/// A command failure, split by who has to act on it.
#[derive(Debug)]
pub enum Failure {
    /// Bad scenario, flag or input file. Exit code 1.
    Config(anyhow::Error),
    /// The command was valid but could not complete. Exit code 2.
    Runtime(anyhow::Error),
}

impl Failure {
    pub fn config(msg: impl fmt::Display) -> Self {
        Failure::Config(anyhow::anyhow!("{msg}"))
    }

    pub fn runtime(msg: impl fmt::Display) -> Self {
        Failure::Runtime(anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Config(_) => ExitCode::from(1),
            Failure::Runtime(_) => ExitCode::from(2),
        }
    }

    fn inner(&self) -> &anyhow::Error {
        match self {
            Failure::Config(e) | Failure::Runtime(e) => e,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.inner())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::UnknownDistribution(_)
            | Error::UnknownScenario(_)
            | Error::Parse { .. }
            | Error::Config(_) => Failure::Config(e.into()),
            _ => Failure::Runtime(e.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

pub trait Context<T> {
    /// Marks the error as a config error, prefixed with `what`.
    fn config(self, what: impl fmt::Display) -> Result<T, Failure>;
    /// Marks the error as a runtime error, prefixed with `what`.
    fn runtime(self, what: impl fmt::Display) -> Result<T, Failure>;
}

impl<T, E> Context<T> for Result<T, E>
where
    E: std::error::Error + Send + Sync + 'static,
{
    fn config(self, what: impl fmt::Display) -> Result<T, Failure> {
        self.map_err(|e| Failure::Config(anyhow::Error::new(e).context(what.to_string())))
    }

    fn runtime(self, what: impl fmt::Display) -> Result<T, Failure> {
        self.map_err(|e| Failure::Runtime(anyhow::Error::new(e).context(what.to_string())))
    }
}

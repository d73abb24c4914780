use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("insufficient data for power-law fit: {usable} usable degree classes, need at least 3")]
    InsufficientData { usable: usize },

    #[error("unknown threshold distribution `{0}`")]
    UnknownDistribution(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("assortativity undefined: only one label class present")]
    DegenerateLabels,

    #[error("assortativity undefined: no edges between labeled nodes")]
    EmptySubgraph,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("malformed {what} at line {line}: {message}")]
    Parse {
        what: &'static str,
        line: usize,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("run {run} (seed {seed}) failed: {source}")]
    Run {
        run: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),

    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("node {0} is isolated (degree 0)")]
    IsolatedNode(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("embedding dimension {k} out of range 1..={n}")]
    DimensionOutOfRange { k: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("symmetric eigendecomposition failed to converge ({n}x{n})")]
    EigenNonConvergence { n: usize },

    #[error("graph is not a scalar-multiple family")]
    NotScalarFamily,

    #[error("tadpole graph needs n >= 4, got {0}")]
    TadpoleTooSmall(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{name}: expected {expected} nodes, found {found}")]
    NodeCountMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("zero rank variance in correlation input")]
    ZeroVariance,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

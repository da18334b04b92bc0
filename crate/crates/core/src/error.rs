use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("twist ({i},{j}) is not unitary: residual {residual:.3e}")]
    NonUnitaryTwist { i: usize, j: usize, residual: f64 },

    #[error("twists fail braid coherence on ({i},{j},{l}): residual {residual:.3e}")]
    Incoherent {
        i: usize,
        j: usize,
        l: usize,
        residual: f64,
    },

    #[error("flattened dimension {requested} exceeds cap {cap}")]
    ResourceCap { requested: usize, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconsistent dilations: {0}")]
    Inconsistent(String),

    #[error("malformed input: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

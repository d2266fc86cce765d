use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("graphic metric requires a connected base graph")]
    Disconnected,

    #[error("edge order is not a permutation of the edge set: {0}")]
    NotAPermutation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("vertex {vertex} has degree {degree} above the cap {cap}")]
    DegreeCap { vertex: usize, degree: usize, cap: usize },

    #[error("operation requires eager ranks")]
    RequiresEager,

    #[error("unsupported metric for this operation: {0}")]
    WrongMetric(&'static str),

    #[error("unknown generator family `{0}`")]
    UnknownFamily(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),

    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),

    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("vertex index {index} out of range for a graph on {vertices} vertices")]
    InvalidIndex { index: usize, vertices: usize },

    #[error("graph has {0} vertices, at least 2 are required")]
    GraphTooSmall(usize),

    /// Some vertex is adjacent to every other vertex, i.e. isolated in the complement.
    #[error("vertices adjacent to all others: {}", .0.join(", "))]
    DominatedVertices(Vec<String>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} limit exceeded: {actual} > {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("truncated Pimsner-Voiculescu computation unstable between windows {window} and {}", .window + 1)]
    Unstable { window: usize },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

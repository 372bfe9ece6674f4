use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has {n} vertices; at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("permutation acts on {perm} points but the graph has {graph} vertices")]
    SizeMismatch { perm: usize, graph: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cycle notation at byte {offset}: {reason}")]
    CycleNotation { offset: usize, reason: String },

    #[error("brute-force domination capped at {cap} vertices, graph has {n}")]
    CapExceeded { n: usize, cap: usize },

    #[error("more than {limit} gamma-sets; enumeration aborted")]
    EnumerationLimit { limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structural contradiction: {0}")]
    Structure(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

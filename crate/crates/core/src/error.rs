use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("exhaustive mode is limited to {cap} vertices, got {n}")]
    CapExceeded { cap: usize, n: usize },
    #[error("no success within {retries} retries; worst class overflow {overflow}")]
    RetriesExhausted { retries: usize, overflow: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A failed structural check: which clause broke and how.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl Violation {
    pub fn new(clause: &str, detail: impl Into<String>) -> Self {
        Violation { clause: clause.to_string(), detail: detail.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.clause, self.detail)
    }
}

impl std::error::Error for Violation {}

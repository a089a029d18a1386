use thiserror::Error;

/// Failures while reading one of the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("expected {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("line {line}: clause has {len} literals, at most 3 are allowed")]
    OversizeClause { line: usize, len: usize },
    #[error("line {line}: literal references variable 0 or beyond the header")]
    BadLiteral { line: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
}

/// Errors raised by the routing, sorting and reduction operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("size mismatch: graph has {graph} vertices, argument has {other}")]
    SizeMismatch { graph: usize, other: usize },
    #[error("pair {0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} appears twice in one matching")]
    NotAMatching(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("plan does not route the required permutation")]
    PlanDoesNotVerify,
    #[error("factor network does not sort")]
    UnverifiedNetwork,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Diagnostics produced while reading an instance file. Every variant that
/// refers to a concrete line carries its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line `p tss <n> <m>`")]
    MissingHeader,
    #[error("malformed header at line {line}")]
    MalformedHeader { line: usize },
    #[error("duplicate header at line {line}")]
    DuplicateHeader { line: usize },
    #[error("unknown line type `{tag}` at line {line}")]
    UnknownLineType { line: usize, tag: String },
    #[error("malformed `{tag}` line at line {line}")]
    MalformedLine { line: usize, tag: char },
    #[error("threshold line for unknown vertex {vertex} at line {line}")]
    UnknownVertex { line: usize, vertex: i64 },
    #[error("edge with unknown endpoint {vertex} at line {line}")]
    UnknownEndpoint { line: usize, vertex: i64 },
    #[error("duplicate threshold for vertex {vertex} at line {line}")]
    DuplicateThreshold { line: usize, vertex: usize },
    #[error("missing threshold for vertex {vertex}")]
    MissingThreshold { vertex: usize },
    #[error("negative threshold at line {line}")]
    NegativeThreshold { line: usize },
    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },
    #[error("self-loop at line {line}")]
    SelfLoop { line: usize },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("duplicate query at line {line}")]
    DuplicateQuery { line: usize },
    #[error("query value {name}={value} out of range 0..={n} at line {line}")]
    QueryOutOfRange {
        line: usize,
        name: &'static str,
        value: i64,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TssError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("threshold vector has length {got}, expected {expected}")]
    ThresholdLength { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance too large for exhaustive search: {what} (cap {cap})")]
    TooLarge { what: String, cap: usize },
    #[error("generator: {0}")]
    Generator(String),
}

pub type Result<T, E = TssError> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(TssError::Precondition(msg.into()))
}

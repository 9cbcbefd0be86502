use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge {{{u}, {v}}} has an endpoint outside 1..={n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("diagonal offset {c} outside 1..={max}")]
    OffsetOutOfRange { c: usize, max: usize },
    #[error("choice {i} outside 1..={n}")]
    ChoiceOutOfRange { i: usize, n: usize },
    #[error("invalid diagonal selection: {0}")]
    InvalidSelection(String),
    #[error("matrix is not gracefully labeled")]
    NotGraceful,
    #[error("graph is not a tree")]
    NotATree,
    #[error("malformed tree code: {0}")]
    InvalidTreeCode(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("refusing {what} at n = {n}: limit is {limit} (raise it with GRACEFUL_MAX_N)")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::digraph::FlowViolation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: expected two labels, found {found}")]
    MalformedLine { line: usize, found: usize },

    #[error(
        "line {line}: self-loop on vertex '{vertex}' (use permissive parsing and loop_transform)"
    )]
    SelfLoop { line: usize, vertex: String },

    #[error("dot syntax error at byte {offset}: {message}")]
    DotSyntax { offset: usize, message: String },

    #[error("dot input uses undirected edges ('--') at byte {offset}")]
    UndirectedDot { offset: usize },

    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),

    #[error("duplicate vertex label '{0}'")]
    DuplicateVertex(String),

    #[error("empty vertex label")]
    EmptyLabel,

    #[error("digraph is empty")]
    EmptyDigraph,

    #[error("not a flow graph: {}", join_violations(.0))]
    NotFlowGraph(Vec<FlowViolation>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("allowed {dim}-paths exceed the cap of {cap}")]
    PathCapExceeded { dim: usize, cap: usize },

    #[error("{0} is not a prime below 2^32")]
    InvalidPrime(u64),

    #[error("skeleton line {line}: {message}")]
    Skeleton { line: usize, message: String },
}

fn join_violations(v: &[FlowViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

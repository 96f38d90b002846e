use thiserror::Error;

use crate::graph::GraphClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("loop at vertex {0}: simple graphs have no loops")]
    Loop(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("{{{0}, {1}}} is not an edge of the graph")]
    UnknownEdge(String, String),

    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),

    #[error("expected {expected}, graph classifies as {found}")]
    Classification {
        expected: &'static str,
        found: GraphClass,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("generator {0} is not squarefree; polarize the ideal first")]
    NotSquarefree(String),

    #[error("the unit ideal has no finite regularity")]
    UnitIdeal,

    #[error("{vars} variables exceed the limit of {limit}; raise the limit or allow heavy runs")]
    ResourceLimit { vars: usize, limit: usize },
}

use thiserror::Error;

/// Errors raised by graph construction, polynomial algebra and the searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),

    #[error("graph has {n} vertices, more than the supported {max}")]
    GraphTooLarge { n: usize, max: usize },

    #[error("component with {size} vertices is not unicyclic and exceeds the canonical-form bound of {max}")]
    CanonicalBoundExceeded { size: usize, max: usize },

    #[error("invalid graph spec: {0}")]
    Spec(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("zero polynomial has no primitive part")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("cache i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

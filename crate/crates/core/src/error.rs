use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DuplicateLabel(String),
    UnknownLabel(String),
    VertexOutOfRange {
        vertex: usize,
        vertex_count: usize,
    },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    /// A per-vertex structure does not cover exactly the graph's vertices.
    DomainMismatch {
        expected: usize,
        found: usize,
    },
    InvalidBlockSize(u32),
    /// A set assigned to a vertex has the wrong number of colors.
    WrongSetSize {
        vertex: usize,
        expected: u32,
        found: u32,
    },
    /// A domain constraint mentions a color outside the vertex's list.
    ConstraintOutsideList {
        vertex: usize,
    },
    Precondition(String),
    /// Exhaustive enumeration would exceed the 64-color universe.
    Capacity {
        needed: u32,
        limit: u32,
    },
    /// Two constructions disagree on data they should share.
    Inconsistent(String),
    InvalidParameter(String),
    /// A solver call inside a quantified check was stopped before deciding.
    Interrupted,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateLabel(l) => write!(f, "duplicate vertex label `{l}`"),
            Error::UnknownLabel(l) => write!(f, "unknown vertex label `{l}`"),
            Error::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "vertex {vertex} out of range for a graph with {vertex_count} vertices")
            }
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            Error::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            Error::DomainMismatch { expected, found } => {
                write!(f, "expected data for {expected} vertices, found {found}")
            }
            Error::InvalidBlockSize(b) => write!(f, "block size must be positive, got {b}"),
            Error::WrongSetSize { vertex, expected, found } => {
                write!(f, "vertex {vertex} carries {found} colors, expected {expected}")
            }
            Error::ConstraintOutsideList { vertex } => {
                write!(f, "constraint on vertex {vertex} references colors outside its list")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Capacity { needed, limit } => write!(
                f,
                "enumeration needs a universe of {needed} colors but the limit is {limit}; use sampling instead"
            ),
            Error::Inconsistent(msg) => write!(f, "internal consistency error: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Interrupted => f.write_str("search interrupted before a verdict"),
        }
    }
}

impl core::error::Error for Error {}

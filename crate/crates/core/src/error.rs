use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("adjacency matrix must be square, got {rows}x{cols}")]
    NonSquareAdjacency { rows: usize, cols: usize },

    #[error("adjacency matrix has {matrix} rows but {coords} node coordinates were given")]
    DimensionMismatch { matrix: usize, coords: usize },

    #[error("adjacency entry ({row}, {col}) = {value} is not binary; binarize the matrix or enable coercion")]
    NonBinaryEntry { row: usize, col: usize, value: f64 },

    #[error("undirected graph requires a symmetric adjacency matrix, but a[{row}][{col}] != a[{col}][{row}]")]
    AsymmetricUndirected { row: usize, col: usize },

    #[error("edge {tail} -> {head} has zero length (coincident endpoint coordinates)")]
    ZeroLengthEdge { tail: String, head: String },

    #[error("coordinate of {what} is not a finite number")]
    NonFiniteCoordinate { what: String },

    #[error("event correction must be a finite non-negative number, got {0}")]
    InvalidEventCorrection(f64),

    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),

    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(String, String),

    #[error("{kind} graph cannot hold {what}")]
    KindMismatch { kind: &'static str, what: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("unknown graph kind {0:?} (expected undirected, directed or mixed)")]
    UnknownKind(String),

    #[error("degenerate segment: both endpoints are ({0}, {1})")]
    DegenerateSegment(f64, f64),

    #[error("edge length must be positive, got {0}")]
    NonPositiveLength(f64),

    #[error("unknown edge attribute {0:?}")]
    UnknownAttribute(String),

    #[error("no traversable edge from {from} to {to}")]
    BrokenPath { from: String, to: String },

    #[error("path must contain at least one vertex")]
    EmptyPath,

    #[error("negative weight on undirected edge {0} -- {1}")]
    NegativeUndirectedWeight(String, String),

    #[error("negative cycle reachable from {0}")]
    NegativeCycle(String),

    #[error("expected {expected} values (one per vertex), got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown heat type {0:?}")]
    UnknownHeatType(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("malformed graph document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error stems from bad input data rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NegativeCycle(_)
                | Error::NegativeUndirectedWeight(..)
                | Error::DegenerateSegment(..)
                | Error::NonPositiveLength(_)
        )
    }
}

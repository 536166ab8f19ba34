use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {{{0}, {1}}} is not in the graph")]
    UnknownEdge(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("random generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },

    #[error("target eigenvalue has multiplicity {multiplicity} within tolerance")]
    ClusteredEigenvalue { multiplicity: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

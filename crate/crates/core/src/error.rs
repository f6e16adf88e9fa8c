use thiserror::Error;

/// Errors shared across topology construction, tree building, verification
/// and simulation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {n} too small, need at least {min}")]
    DimensionTooSmall { n: u32, min: u32 },

    #[error("dimension index {d} out of range for LTQ_{n}")]
    DimensionIndexOutOfRange { d: u32, n: u32 },

    #[error("vertex {v} out of range for LTQ_{n}")]
    VertexOutOfRange { v: u32, n: u32 },

    #[error("subcube prefixes are only defined for even dimensions >= 4, got {n}")]
    InvalidSubcubeDimension { n: u32 },

    #[error("vertices {u} and {v} are not adjacent in LTQ_{n}")]
    NotAdjacent { u: u32, v: u32, n: u32 },

    #[error("offset {offset} is not a subcube base in LTQ_{n}")]
    InvalidOffset { offset: u32, n: u32 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: u32, actual: u32 },

    #[error("no trees supplied")]
    EmptyTreeSet,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("structural check failed: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;

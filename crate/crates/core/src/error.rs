use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("duplicate hyperplane at index {second} (same as index {first})")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("hyperplane {index} has a zero normal vector")]
    ZeroNormal { index: usize },

    #[error("hyperplane {index} has {found} coefficients, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("arrangement has {0} hyperplanes; at most {max} are supported", max = crate::hyperplane_set::MAX_HYPERPLANES)]
    TooManyHyperplanes(usize),

    #[error("hyperplane index {index} out of range (arrangement has {len})")]
    HyperplaneOutOfRange { index: usize, len: usize },

    #[error("flat does not belong to this arrangement")]
    ForeignFlat,

    #[error("lattice exceeds the flat bound of {0}")]
    FlatBoundExceeded(usize),

    #[error("arrangement has {found} hyperplanes, above the enumeration bound {bound}")]
    EnumerationBoundExceeded { found: usize, bound: usize },

    #[error("not a partition of the arrangement: {0}")]
    InvalidPartition(String),

    #[error("not a maximal chain: {0}")]
    InvalidChain(String),

    #[error("partition is not nice")]
    NotNice,

    #[error("operation requires a graphical arrangement")]
    NotGraphical,

    #[error("parts share no common vertex")]
    NoStarVertex,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

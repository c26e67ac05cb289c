use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("unbounded")]
    Unbounded,
    #[error("empty")]
    Empty,
    #[error("degenerate: affine hull has dimension {dim} in ambient dimension {ambient}")]
    Degenerate { dim: usize, ambient: usize },
    #[error("direction {0} is not an unfrozen index")]
    FrozenDirection(usize),
    #[error("invalid halfspace: {0}")]
    InvalidHalfSpace(String),
    #[error("inconsistent polytope data: {0}")]
    Inconsistent(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("exchange graph exploration exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("linear part is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("expected a unique interior lattice point, found {0}")]
    InteriorPoint(usize),
    #[error("integer overflow in lattice computation")]
    Overflow,
    #[error("sign convention check failed: {0}")]
    Convention(String),
    #[error("transport disagreement: {0}")]
    PathDisagreement(String),
    #[error("tropical image is not convex: {0}")]
    NotConvex(String),
    #[error("golden data: {0}")]
    Golden(String),
    #[error("classification failed: {0}")]
    Unclassifiable(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

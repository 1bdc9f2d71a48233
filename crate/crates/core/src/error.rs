use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid torus dimensions: {0}")]
    InvalidDims(String),

    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("operation requires a 2-dimensional pattern")]
    NotPlanar,

    #[error("incompatible isometry: {0}")]
    IncompatibleIsometry(String),

    #[error("pattern is not an oscillator within {0} steps")]
    NotOscillator(usize),

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("triangle {anchor:?}/{octant} is not within distance 4 of the pattern; augment first")]
    Uncovered { anchor: (i64, i64), octant: u8 },

    #[error("voronoi tie at triangle {anchor:?}/{octant} between {a:?} and {b:?}")]
    Tie { anchor: (i64, i64), octant: u8, a: (i64, i64), b: (i64, i64) },

    #[error("cell {0:?} is not in the pattern")]
    NotInPattern(Vec<i64>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("unknown construction or gallery entry `{0}`")]
    UnknownName(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero vector is not a state")]
    ZeroState,

    #[error("ambient dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("gram matrix is singular: basis columns are linearly dependent")]
    SingularGram,

    #[error("matrix is singular: evolution is not reversible")]
    SingularMatrix,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("orthogonal state: projection onto the subspace is zero")]
    OrthogonalState,

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("non-homogeneous entry {entry}: constant term {constant}")]
    NonHomogeneous { entry: usize, constant: String },

    #[error("invalid scalar {0:?}")]
    InvalidScalar(String),

    #[error("invalid logarithm base {0:?}: must be a rational greater than 1 or `e`")]
    InvalidBase(String),

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("proposition set is empty")]
    EmptyPropositionSet,

    #[error("duplicate proposition name {0:?}")]
    DuplicateName(String),

    #[error("no indeterminate subspace exists in dimension {0}")]
    NoIndeterminateSubspace(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

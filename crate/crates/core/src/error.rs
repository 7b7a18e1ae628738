use thiserror::Error;

/// Errors raised by the library. Findings (inequality or volume-bound
/// violations) are never errors; they travel in report rows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points span an affine subspace of dimension {rank}, expected {dim}")]
    NotFullDimensional { dim: usize, rank: usize },

    #[error("polytope is not reflexive")]
    NotReflexive,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("bounding box holds {candidates} candidate points, budget is {budget}")]
    ResourceLimit { candidates: u128, budget: u64 },

    #[error("value {0} is not an integer")]
    NonIntegralValue(String),

    #[error("need {needed} samples at distinct m, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("sample at m = {m} has count {count}, fitted polynomial predicts {predicted}")]
    InconsistentSamples {
        m: u64,
        count: String,
        predicted: String,
    },

    #[error("binomial identity violated for n = {n}, J = {j}")]
    IdentityViolation { n: u64, j: u64 },

    #[error("vertex {vertex:?} is not a smooth fixed point")]
    SingularVertex { vertex: Vec<i64> },

    #[error("basis matrix is singular")]
    SingularMatrix,

    #[error("section space is empty")]
    EmptySectionSpace,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a classical quantum set: atom `{label}` has dimension {dim}")]
    NotClassical { label: String, dim: usize },

    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("relation is not a function: {0}")]
    NotAFunction(String),

    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("projections do not form a resolution of the identity: {0}")]
    NotAPvm(String),

    #[error("Kraus family is not subunital")]
    NotSubunital,

    #[error("invalid density state: {0}")]
    InvalidState(String),

    #[error("chain is not increasing at step {0}")]
    ChainNotIncreasing(usize),

    #[error("chain prefix has not stabilized; extend the chain")]
    PrefixNotStabilized,

    #[error("non-finite matrix entry")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dims_mismatch(expected: (usize, usize), found: (usize, usize)) -> Error {
    Error::DimensionMismatch {
        expected: format!("{}x{}", expected.0, expected.1),
        found: format!("{}x{}", found.0, found.1),
    }
}

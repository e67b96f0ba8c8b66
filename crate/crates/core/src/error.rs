use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid projective point: all coordinates are zero")]
    InvalidProjectivePoint,

    #[error("pencil must be reduced (common kernel has dimension {kernel_dim})")]
    NotReduced { kernel_dim: usize },

    #[error("vector is not an eigenvector of the pencil")]
    NotAnEigenvector,

    #[error("enumeration requires a prime field, got {0}")]
    EnumerationUnsupported(String),

    #[error("enumeration of {count} points exceeds the budget of {budget}")]
    EnumerationTooLarge { count: u128, budget: u64 },

    #[error("explicit eigenvalues are required over the rationals")]
    ExplicitEigenvaluesRequired,

    #[error("invalid equivalence witness: {0}")]
    InvalidWitness(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn field_mismatch(left: impl std::fmt::Display, right: impl std::fmt::Display) -> Self {
        Error::FieldMismatch {
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    /// True for errors caused by malformed input files.
    pub fn is_format_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

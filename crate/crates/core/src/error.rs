use thiserror::Error;

/// Errors surfaced by the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("group closure did not terminate within cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid monomial index: {0}")]
    InvalidMonomial(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("target vector is not in the span of the basis")]
    NotInSpan,

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("dimension mismatch: computed {computed}, expected {expected}")]
    DimensionMismatch { computed: usize, expected: usize },

    #[error("candidates do not complete the basis: reached rank {reached}, need {needed}")]
    InsufficientCandidates { reached: usize, needed: usize },

    #[error("degree must be at least 1")]
    InvalidDegree,

    #[error("degree {0} exceeds the supported range without an override flag")]
    DegreeTooLarge(usize),

    #[error("verification check failed: {0}")]
    CheckFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable tag for the CLI's JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::SingularMatrix => "singular_matrix",
            Error::ClosureCapExceeded { .. } => "closure_cap_exceeded",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::InvalidMonomial(_) => "invalid_monomial",
            Error::Parse(_) => "parse_error",
            Error::NotInSpan => "not_in_span",
            Error::DependentBasis => "dependent_basis",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InsufficientCandidates { .. } => "insufficient_candidates",
            Error::InvalidDegree => "invalid_degree",
            Error::DegreeTooLarge(_) => "degree_too_large",
            Error::CheckFailed(_) => "check_failed",
            Error::Io(_) => "io_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

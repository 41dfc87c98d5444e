use thiserror::Error;

use crate::field::FieldError;
use crate::linalg::ExactMatrix;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("braid relation ABA = BAB violated")]
    BraidRelationViolated { defect: Box<ExactMatrix> },
    #[error("characteristic polynomial does not split over Q(zeta_{conductor})")]
    SpectrumNotInField { conductor: u32 },
    #[error("root reconstruction failed up to {max_bits} bits")]
    PrecisionExhausted { max_bits: u32 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("parameter constraints violated: {}", .0.join("; "))]
    ConstraintViolated(Vec<String>),
    #[error("eigenvalues must be nonzero")]
    ZeroEigenvalue,
    #[error("indecomposable representation matches no catalogued family")]
    UnmatchedIndecomposable,
    #[error("representation is not of the expected family shape: {0}")]
    NotInFamily(String),
    #[error("Groebner step budget of {budget} exhausted")]
    StepBudgetExceeded { budget: u64 },
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("R-matrix parameters must be distinct and nonzero")]
    DegenerateParameters,
    #[error("matrix does not satisfy the Yang-Baxter equation")]
    NotYangBaxter,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

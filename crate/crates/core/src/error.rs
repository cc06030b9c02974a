use crate::laurent::{LaurentPoly, NotDivisible};
use crate::params::GenericityError;
use crate::scalar::ParseScalarError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Genericity(#[from] GenericityError),

    /// An operator that must map Laurent polynomials to Laurent polynomials
    /// produced a non-polynomial result. Always an internal bug.
    #[error("internal invariant violated: {0}")]
    NotDivisible(#[from] NotDivisible),

    #[error("operator requires a symmetric input")]
    NotSymmetric,

    #[error("index {n} is outside the genericity horizon n_max = {n_max}")]
    OutOfHorizon { n: i64, n_max: u32 },

    #[error("index {n} is outside the valid range of {what}")]
    OutOfRange { what: &'static str, n: i64 },

    #[error("eigen-solve failed for index {n}: {reason}")]
    EigenSolve { n: i64, reason: String },

    #[error("recurrence residual at n = {n} is not proportional to P_(n-1)")]
    Extraction { n: i64, residual: LaurentPoly },

    #[error(transparent)]
    ParseScalar(#[from] ParseScalarError),

    #[error("{0}")]
    InvalidInput(String),
}

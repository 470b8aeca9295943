//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by the CLI to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed request, unknown operation, bad sizes or bounds.
    Schema,
    /// Input outside the mathematical domain of the operation.
    Domain,
    /// The computation itself failed (no convergence, ambiguous rank, ...).
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size {size} for {what} (minimum {min})")]
    InvalidSize { what: &'static str, size: usize, min: usize },
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("expected a real element")]
    ExpectedReal,
    #[error("expected a complex element")]
    ExpectedComplex,
    #[error("matrix size mismatch: got {got}, expected {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("element is not idempotent (defect {0:.3e})")]
    NotIdempotent(f64),
    #[error("element is singular")]
    SingularElement,
    #[error("point is not in the interior of the cone")]
    NotInterior,
    #[error("no convergence after {iters} iterations (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },
    #[error("exponent {0} is not admissible (need |p| > 1)")]
    BadExponent(f64),
    #[error("fractional action is singular at this point")]
    SingularAction,
    #[error("element does not admit the block factorization: {0}")]
    NotFactorizable(String),
    #[error("element is not in the compression semigroup")]
    NotInSemigroup,
    #[error("element is not in the conformal realization: {0}")]
    NotConformal(String),
    #[error("invalid Jordan frame: {0}")]
    BadFrame(String),
    #[error("argument of the Cayley transform is singular")]
    SingularArgument,
    #[error("boundary point is not transversal to -e")]
    NotTransversalToMinusE,
    #[error("operation not implemented for this algebra kind: {0}")]
    NotImplementedForKind(&'static str),
    #[error("branch tracking failed: {0}")]
    BranchTrackingFailure(String),
    #[error("unitary normalization failed: {0}")]
    FactorizationFailure(String),
    #[error("normalization failed: {0}")]
    NormalizationFailure(String),
    #[error("vector field does not lie in the cone-test subspace: {0}")]
    NotInQc(String),
    #[error("numerical rank is ambiguous (singular value {0:.3e} relative to largest)")]
    AmbiguousRank(f64),
    #[error("points are not pairwise transversal")]
    NotPairwiseTransversal,
    #[error("index is not close to an integer (raw {raw}, residual {residual:.3e})")]
    IndexResidual { raw: f64, residual: f64 },
    #[error("point lies on the singular set")]
    OnSingularSet,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("kernel argument is singular")]
    SingularDifference,
    #[error("semigroup element is not strict")]
    NotStrict,
    #[error("branch values are inconsistent: {0}")]
    BranchMismatch(String),
    #[error("bad enumeration bound: {0}")]
    BadBound(String),
    #[error("unknown operation: {0}")]
    UnknownOp(String),
    #[error("bad request: {0}")]
    BadRequest(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            InvalidSize { .. } | SizeMismatch { .. } | BadBound(_) | UnknownOp(_)
            | BadRequest(_) => ErrorCategory::Schema,
            NumericalFailure(_) | NoConvergence { .. } | BranchTrackingFailure(_)
            | FactorizationFailure(_) | NormalizationFailure(_) | AmbiguousRank(_)
            | IndexResidual { .. } => ErrorCategory::Numerical,
            _ => ErrorCategory::Domain,
        }
    }
}

//! Central numerical tolerances.
//!
//! Every threshold used by the library is defined here, relative to the
//! natural scale of the quantity it guards.

/// Relative tolerance for eigenvalue-based tests (idempotency, frame
/// orthogonality, cone classification). Scaled by the norm of the element.
pub const EIG_REL: f64 = 1e-10;

/// Relative residual allowed for algebraic identities (Jordan identity,
/// associativity of the trace form).
pub const JORDAN_REL: f64 = 1e-9;

/// Relative tolerance for operator-level identities such as P(x^-1) = P(x)^-1.
pub const OP_REL: f64 = 1e-8;

/// Singular values below this fraction of the largest count as zero when
/// computing numerical ranks.
pub const RANK_ZERO_REL: f64 = 1e-7;

/// Relative band of singular values that makes a rank decision ambiguous.
pub const RANK_BAND_LO: f64 = 1e-9;
pub const RANK_BAND_HI: f64 = 1e-5;

/// An index report whose raw value is further than this from an integer is
/// an error.
pub const INDEX_RESIDUAL_MAX: f64 = 0.1;

/// Convergence threshold for the Bushell fixed-point iteration, measured in
/// the Hilbert metric (scale free).
pub const BUSHELL_HILBERT_TOL: f64 = 1e-10;

/// Maximum number of Bushell iterations before giving up.
pub const BUSHELL_MAX_ITER: usize = 10_000;

/// Relative residual required of a Bushell solution: |g(a) - a^p| <= tol |a^p|.
pub const BUSHELL_RESIDUAL_REL: f64 = 1e-8;

/// Interior test threshold for J-contraction membership, relative to |J| = 1.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Maximum recursive halvings in branch tracking before failing. A step is
/// accepted only when the argument moves by less than pi/2.
pub const BRANCH_MAX_DEPTH: u32 = 48;

/// Residual allowed when validating constructed unitaries, boundary points
/// and factorizations.
pub const CONSTRUCT_TOL: f64 = 1e-8;

/// Transversality test: |det(z - w)| must exceed this times the r-th power
/// of the spectral scale of z - w.
pub const TRANSVERSAL_REL: f64 = 1e-9;

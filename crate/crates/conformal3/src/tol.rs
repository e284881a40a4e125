//! Centralised numerical tolerances.
//!
//! The classification results are exact statements about exact subalgebras;
//! floating point turns each of them into a thresholded decision. Every
//! threshold in the crate comes from one of the two knobs below, so a
//! failure can always be attributed to a tolerance rather than to an
//! ad-hoc magic number.

/// Default tolerance for algebraic identities (group axioms, Jacobi,
/// invariance of quadratic forms, equivariance).
pub const DEFAULT_EPS: f64 = 1e-9;

/// Default tolerance for rank and subspace decisions. Conjugated bases
/// amplify roundoff, so rank decisions get a coarser, *relative* threshold
/// on singular values.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// The pair of tolerances threaded through every thresholded decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Tolerance for algebraic identities.
    pub eps: f64,
    /// Relative tolerance for rank and subspace-equality decisions.
    pub rank_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps: DEFAULT_EPS,
            rank_tol: DEFAULT_RANK_TOL,
        }
    }
}

impl Tolerances {
    pub fn new(eps: f64, rank_tol: f64) -> Self {
        Self { eps, rank_tol }
    }
}

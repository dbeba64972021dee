//! Numerical thresholds shared across the crate.
//!
//! All decisions are made in double precision, so every yes/no answer
//! (rank, minimality, equivalence, subspace equality, membership) depends on
//! one of these thresholds.

/// Relative singular-value cutoff used for rank decisions and invertibility.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Threshold for the constancy and action checks of witness recovery.
pub const DEFAULT_DECISION_TOL: f64 = 1e-8;
/// Threshold for comparing two canonical affine subspaces.
pub const DEFAULT_SUBSPACE_TOL: f64 = 1e-9;
/// Threshold on the quotient least-squares residual in membership tests.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-8;

/// The full set of thresholds. `Default` gives the values above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rank: f64,
    pub decision: f64,
    pub subspace: f64,
    pub membership: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: DEFAULT_RANK_TOL,
            decision: DEFAULT_DECISION_TOL,
            subspace: DEFAULT_SUBSPACE_TOL,
            membership: DEFAULT_MEMBERSHIP_TOL,
        }
    }
}

impl Tolerances {
    pub fn with_decision(mut self, tol: f64) -> Self {
        self.decision = tol;
        self
    }
}

//! Thresholds used by the verification suites and the acceptance tests.
//!
//! Every number here is pinned; suites never derive a threshold from the data
//! they check.

/// Bracket tables (2x2 inversions of exact coefficients).
pub const BRACKET: f64 = 1e-14;

/// Soldering residual per random complex sample.
pub const SOLDER: f64 = 1e-12;

/// Lagrangian invariance under boosts and PT.
pub const INVARIANCE: f64 = 1e-12;

/// Noether charge drift along a closed-form mode trajectory.
pub const NOETHER_DRIFT: f64 = 1e-10;

/// Frame conversion round trip.
pub const ROUND_TRIP: f64 = 1e-14;

/// Interior-projected operator identities (default `RunConfig::tol`).
pub const INTERIOR: f64 = 1e-10;

/// `η`-hermiticity and ordinary hermiticity residuals.
pub const HERMITICITY: f64 = 1e-12;

/// Largest admissible `|Im λ|` for a spectrum declared real.
pub const REALITY: f64 = 1e-9;

/// Biorthogonal orthonormality and completeness residuals.
pub const BIORTHOGONAL: f64 = 1e-10;

/// Minimum factorization gap that counts as structural non-factorizability.
pub const NON_FACTORIZABLE_GAP: f64 = 0.1;

/// Eigenvalues closer than this (relative to the matrix scale) are one cluster.
pub const EIGEN_CLUSTER: f64 = 1e-8;

/// Inversions with a 1-norm condition estimate above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Units in the last place allowed for identities that hold exactly in
/// exact arithmetic and are evaluated by a handful of floating-point
/// operations per entry.
pub const EXACT_ULPS: f64 = 16.0;

/// Threshold for an "exact" matrix identity whose operands have max-norm `scale`.
pub fn exact(scale: f64) -> f64 {
    EXACT_ULPS * f64::EPSILON * scale.max(1.0)
}

//! Centralized numeric tolerances.

/// Tolerances used across the crate. One shared record keeps every module's
/// thresholds consistent and visible in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute bound on |F(p)| for p to count as on the surface F = 0.
    pub membership: f64,
    /// Relative bound for analytic-vs-finite-difference derivative checks.
    pub derivative_check: f64,
    /// Smallest gradient norm treated as regular.
    pub degenerate_gradient: f64,
    /// Smallest sin^2 of the gradient angle treated as transversal.
    pub tangency_sin_sq: f64,
    /// Bound on |<T, grad F>|/|grad F| for T to count as tangent.
    pub tangent_orthogonality: f64,
    /// Absolute bound on |F|, |G| for Newton projection onto a curve.
    pub projection: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            membership: 1e-10,
            derivative_check: 1e-6,
            degenerate_gradient: 1e-12,
            tangency_sin_sq: 1e-20,
            tangent_orthogonality: 1e-8,
            projection: 1e-12,
        }
    }
}

/// The tolerance set used by every operation in this crate.
pub const TOL: Tolerances = Tolerances {
    membership: 1e-10,
    derivative_check: 1e-6,
    degenerate_gradient: 1e-12,
    tangency_sin_sq: 1e-20,
    tangent_orthogonality: 1e-8,
    projection: 1e-12,
};

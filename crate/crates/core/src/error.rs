//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when evaluating surfaces, curvatures,
/// classifications, solvers, or traces.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("point lies on the revolution axis (rho = {rho:e}); the surface is only defined for rho > 0")]
    AxisPoint { rho: f64 },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("gradient norm {norm:e} is below {limit:e}; the implicit surface is degenerate here")]
    DegenerateGradient { norm: f64, limit: f64 },

    #[error("point is off surface {surface}: |value| = {residual:e} exceeds tolerance {tol:e}")]
    OffSurface {
        surface: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("direction is not tangent to the surface: |<T, grad F>|/|grad F| = {obliqueness:e} exceeds {tol:e}")]
    NotTangent { obliqueness: f64, tol: f64 },

    #[error("surface gradients are (near-)parallel: sin^2(theta) = {sin_sq:e} is below {limit:e}")]
    Tangency { sin_sq: f64, limit: f64 },

    #[error("parse error: {message}")]
    Parse { message: String },

    #[error("polynomial total degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("operation needs a {expected}, got {found}")]
    UnsupportedSurface {
        expected: &'static str,
        found: &'static str,
    },

    #[error("inadmissible cut level: {detail}")]
    InadmissibleLevel { detail: String },

    #[error("real-curve condition violated: {detail}")]
    RealCurveCondition { detail: String },

    #[error("parameter regime violation: {detail}")]
    RegimeViolation { detail: String },

    #[error("zero denominator in closed-form expression: {detail}")]
    ZeroDenominator { detail: &'static str },

    #[error("domain error: {detail}")]
    Domain { detail: String },

    #[error("no sign-change bracket found in [{lo:e}, {hi:e}] at {samples} samples (endpoint residuals {res_lo:e}, {res_hi:e})")]
    BracketNotFound {
        lo: f64,
        hi: f64,
        samples: usize,
        res_lo: f64,
        res_hi: f64,
    },

    #[error("Newton projection did not converge after {iterations} iterations (|F| = {residual_f:e}, |G| = {residual_g:e})")]
    NoConvergence {
        iterations: u32,
        residual_f: f64,
        residual_g: f64,
    },

    #[error("tracing failed at step {index}: {source}")]
    TraceStep {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sample index {index} has no interior neighbors in a trace of {len} samples")]
    BoundaryIndex { index: usize, len: usize },

    #[error("need at least 3 values, got {count}")]
    TooFewSamples { count: usize },
}

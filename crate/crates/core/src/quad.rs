//! Thin wrapper over double-exponential (tanh-sinh) quadrature.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("quadrature on [{a}, {b}] reached error estimate {estimate:e}, target {tolerance:e}")]
pub struct QuadratureFailure {
    pub a: f64,
    pub b: f64,
    pub estimate: f64,
    pub tolerance: f64,
}

/// Absolute tolerance used by the quadrature cross-check paths.
pub const DEFAULT_TOL: f64 = 1e-11;

pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64, QuadratureFailure> {
    if a == b {
        return Ok(0.0);
    }
    let out = quadrature::integrate(f, a, b, tol);
    if out.error_estimate.is_nan() || out.error_estimate > tol || !out.integral.is_finite() {
        return Err(QuadratureFailure {
            a,
            b,
            estimate: out.error_estimate,
            tolerance: tol,
        });
    }
    Ok(out.integral)
}

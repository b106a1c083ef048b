//! The shift field `h(φ,θ)` and its partial derivatives.
//!
//! `h = −∫₀^φ sin(φ−s) ∂θa(s,θ) ds / sin φ`. The default functions evaluate
//! this from the per-harmonic closed forms, which are finite trigonometric
//! sums and need no special handling at the poles. The `*_quad` variants
//! evaluate the same integrals numerically and serve as an independent check.

use std::f64::consts::PI;

use serde::Serialize;

use crate::afunc::{AFunction, SupNorms};
use crate::quad::{self, QuadratureFailure};

/// Below this `|sin φ|` the quadrature route returns the pole value of `h` and `h_θ`.
pub const POLE_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftSample {
    pub h: f64,
    pub h_phi: f64,
    pub h_theta: f64,
    pub at: (f64, f64),
}

impl ShiftSample {
    pub fn new(f: &AFunction, phi: f64, theta: f64) -> Self {
        Self {
            h: h_value(f, phi, theta),
            h_phi: h_phi(f, phi, theta),
            h_theta: h_theta(f, phi, theta),
            at: (phi, theta),
        }
    }

    /// Largest excess over the three a-priori bounds `|h| ≤ ‖∂θa‖ |sin φ|`,
    /// `|h_φ| ≤ ‖∂θa‖`, `|h_θ| ≤ ‖∂²θa‖ |sin φ|`. Non-positive when all hold.
    pub fn bound_excess(&self, norms: &SupNorms) -> f64 {
        let s = self.at.0.sin().abs();
        let e1 = self.h.abs() - norms.a_theta * s;
        let e2 = self.h_phi.abs() - norms.a_theta;
        let e3 = self.h_theta.abs() - norms.a_thetatheta * s;
        e1.max(e2).max(e3)
    }
}

pub fn h_value(f: &AFunction, phi: f64, theta: f64) -> f64 {
    -f.terms()
        .iter()
        .map(|t| t.coefficient * t.weight.d1(theta) * t.harmonic.kernel_over_sin(phi))
        .sum::<f64>()
}

pub fn h_phi(f: &AFunction, phi: f64, theta: f64) -> f64 {
    -f.terms()
        .iter()
        .map(|t| t.coefficient * t.weight.d1(theta) * t.harmonic.kernel_over_sin_d(phi))
        .sum::<f64>()
}

pub fn h_theta(f: &AFunction, phi: f64, theta: f64) -> f64 {
    -f.terms()
        .iter()
        .map(|t| t.coefficient * t.weight.d2(theta) * t.harmonic.kernel_over_sin(phi))
        .sum::<f64>()
}

/// `h_θ / sin φ`, finite at the poles.
pub fn h_theta_over_sin(f: &AFunction, phi: f64, theta: f64) -> f64 {
    -f.terms()
        .iter()
        .map(|t| t.coefficient * t.weight.d2(theta) * t.harmonic.kernel_over_sin2(phi))
        .sum::<f64>()
}

/// Representative of `φ` modulo π in `(−π/2, π/2]`; `h`, `h_φ`, `h_θ` are π-periodic in φ.
fn reduce(phi: f64) -> f64 {
    let r = phi - PI * (phi / PI).round();
    if r <= -PI / 2.0 {
        r + PI
    } else {
        r
    }
}

/// `−∫₀^φ sin(φ−s) g(s) ds / sin φ` in the scaled variable `s = φt`, so the
/// integrand stays O(1) as `φ → 0`.
fn kernel_quad(g: impl Fn(f64) -> f64, phi: f64) -> Result<f64, QuadratureFailure> {
    let sp = phi.sin();
    let v = quad::integrate(|t| ((phi * (1.0 - t)).sin() / sp) * g(phi * t), 0.0, 1.0, quad::DEFAULT_TOL)?;
    Ok(-phi * v)
}

pub fn h_value_quad(f: &AFunction, phi: f64, theta: f64) -> Result<f64, QuadratureFailure> {
    let p = reduce(phi);
    if p.sin().abs() < POLE_EPS {
        return Ok(0.0);
    }
    kernel_quad(|s| f.eval_theta(s, theta), p)
}

pub fn h_theta_quad(f: &AFunction, phi: f64, theta: f64) -> Result<f64, QuadratureFailure> {
    let p = reduce(phi);
    if p.sin().abs() < POLE_EPS {
        return Ok(0.0);
    }
    kernel_quad(|s| f.eval_thetatheta(s, theta), p)
}

/// `h_φ = −∫₀^φ sin s ∂θa(s,θ) ds / sin² φ`, integrated from the nearer pole.
///
/// With `s = φt` the quotient becomes `(φ/sin φ) ∫₀¹ (sin(φt)/sin φ) ∂θa(φt) dt`,
/// which is well conditioned down to `φ = 0`, where it equals `−∂θa(0,θ)/2`.
pub fn h_phi_quad(f: &AFunction, phi: f64, theta: f64) -> Result<f64, QuadratureFailure> {
    let p = reduce(phi);
    if p == 0.0 {
        return Ok(-0.5 * f.eval_theta(0.0, theta));
    }
    let sp = p.sin();
    let v = quad::integrate(
        |t| ((p * t).sin() / sp) * f.eval_theta(p * t, theta),
        0.0,
        1.0,
        quad::DEFAULT_TOL,
    )?;
    Ok(-(p / sp) * v)
}

/// The complementary form `h_φ = ∫_φ^π sin s ∂θa(s,θ) ds / sin² φ`, equal to
/// [`h_phi_quad`] because `∫₀^π sin s ∂θa ds = 0`.
pub fn h_phi_quad_complement(f: &AFunction, phi: f64, theta: f64) -> Result<f64, QuadratureFailure> {
    let p = phi.rem_euclid(PI);
    let sp = p.sin();
    if sp.abs() < POLE_EPS {
        return h_phi_quad(f, phi, theta);
    }
    let v = quad::integrate(|s| s.sin() * f.eval_theta(s, theta), p, PI, quad::DEFAULT_TOL)?;
    Ok(v / (sp * sp))
}

/// `|Q(ε) − h(φ,θ)|` where `Q(ε) = ∫₀^φ (a(s,θ) − a(s,θ+ε))/ε · sin(φ−s) ds / sin φ`.
///
/// `Q(ε) → h` as `ε → 0`, with first-order error.
pub fn h_difference_quotient_check(f: &AFunction, phi: f64, theta: f64, eps: f64) -> f64 {
    let q: f64 = f
        .terms()
        .iter()
        .map(|t| {
            let dw = (t.weight.value(theta) - t.weight.value(theta + eps)) / eps;
            t.coefficient * dw * t.harmonic.kernel_over_sin(phi)
        })
        .sum();
    (q - h_value(f, phi, theta)).abs()
}

//! Pole transversality `T(r)`, the normal determinant `D(r,φ,θ)` and the
//! minimal feasible radius `r₀(a)`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::afunc::AFunction;
use crate::shift;

/// Predicates `≥ 0` are evaluated as `≥ −NONNEG_SLACK`.
pub const NONNEG_SLACK: f64 = 1e-9;
pub const DEFAULT_GRID: usize = 512;
pub const DEFAULT_TOL: f64 = 1e-5;
/// Per bisection call.
const MAX_BISECTIONS: usize = 100;
const REFINE_ROUNDS: usize = 3;
const REFINE_FACTOR: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FeasibilityError {
    #[error("predicate fails at the upper bracket end r = {upper} (min D/sin φ = {min_d_over_sin:e}, T = {t:e})")]
    BracketFailure { upper: f64, min_d_over_sin: f64, t: f64 },
    #[error("D/sin φ is undefined at the pole φ = {phi}")]
    PoleArgument { phi: f64 },
}

/// `T(r) = (r − a(0,0))(r − a(0,π/2)) + h_φ(0,0) h_φ(0,π/2)`
pub fn t_of_r(f: &AFunction, r: f64) -> f64 {
    let q = PI / 2.0;
    (r - f.eval(0.0, 0.0)) * (r - f.eval(0.0, q)) + shift::h_phi(f, 0.0, 0.0) * shift::h_phi(f, 0.0, q)
}

/// The three r-independent pieces of `D/sin φ = (r − a)(r + b) − q`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DetCoef {
    a: f64,
    b: f64,
    q: f64,
}

impl DetCoef {
    fn at(f: &AFunction, phi: f64, theta: f64) -> Self {
        let mut a = 0.0;
        let mut ac_over_sin = 0.0;
        for t in f.terms() {
            let cw = t.coefficient * t.weight.value(theta);
            a += cw * t.harmonic.value(phi);
            ac_over_sin += cw * t.harmonic.cos_moment_over_sin(phi);
        }
        let hp = shift::h_phi(f, phi, theta);
        Self {
            a,
            b: shift::h_theta_over_sin(f, phi, theta) - ac_over_sin,
            q: hp * hp,
        }
    }

    fn eval(&self, r: f64) -> f64 {
        (r - self.a) * (r + self.b) - self.q
    }
}

/// `D(r,φ,θ) / sin φ`, the normalized determinant.
pub fn d_over_sin(f: &AFunction, r: f64, phi: f64, theta: f64) -> Result<f64, FeasibilityError> {
    if phi.sin().abs() < shift::POLE_EPS {
        return Err(FeasibilityError::PoleArgument { phi });
    }
    Ok(DetCoef::at(f, phi, theta).eval(r))
}

/// `D(r,φ,θ) = (r − a)(∫₀^φ (r − a(s,θ)) cos s ds + h_θ) − h_φ² sin φ`.
pub fn d_of(f: &AFunction, r: f64, phi: f64, theta: f64) -> f64 {
    DetCoef::at(f, phi, theta).eval(r) * phi.sin()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub r0: f64,
    pub bracket: (f64, f64),
    pub min_t: f64,
    pub min_d_over_sin: f64,
    pub argmin: (f64, f64),
    pub grid: usize,
    pub iterations: usize,
    pub samples: usize,
}

/// Sample set of `(φ, θ, coefficients)` used by the predicate.
struct Samples {
    at: Vec<(f64, f64)>,
    coef: Vec<DetCoef>,
}

impl Samples {
    /// `φ ∈ (0, π)` at spacing `π/n`, `θ ∈ [0, 2π)` at the same spacing: the whole sphere.
    fn grid(f: &AFunction, n: usize) -> Self {
        let step = PI / n as f64;
        let at: Vec<(f64, f64)> = (0..2 * n)
            .flat_map(|j| (1..n).map(move |i| (i as f64 * step, j as f64 * step)))
            .collect();
        let coef = at.par_iter().map(|&(p, t)| DetCoef::at(f, p, t)).collect();
        Self { at, coef }
    }

    fn add_patch(&mut self, f: &AFunction, center: (f64, f64), step: f64) {
        let fine = step / REFINE_FACTOR as f64;
        let m = REFINE_FACTOR as i64;
        let pts: Vec<(f64, f64)> = (-m..=m)
            .flat_map(|di| (-m..=m).map(move |dj| (center.0 + di as f64 * fine, center.1 + dj as f64 * fine)))
            .filter(|(p, _)| p.sin() >= shift::POLE_EPS && *p < PI)
            .collect();
        let coef: Vec<DetCoef> = pts.par_iter().map(|&(p, t)| DetCoef::at(f, p, t)).collect();
        self.at.extend(pts);
        self.coef.extend(coef);
    }

    fn min_at(&self, r: f64) -> (f64, usize) {
        self.coef
            .par_iter()
            .enumerate()
            .map(|(i, c)| (c.eval(r), i))
            .reduce(|| (f64::INFINITY, usize::MAX), |x, y| if y.0 < x.0 { y } else { x })
    }
}

fn feasible(f: &AFunction, s: &Samples, r: f64) -> bool {
    t_of_r(f, r) >= -NONNEG_SLACK && s.min_at(r).0 >= -NONNEG_SLACK
}

/// Smallest `r` in `[‖a‖∞, ‖a‖∞ + ‖∂θa‖∞ + ‖∂²θa‖∞]` with `T(r) ≥ 0` and
/// `D(r,·,·)/sin φ ≥ 0` on the sample set, by bisection.
///
/// The sample set is a uniform grid over the whole sphere, refined with an
/// 8× finer patch around the binding grid node after each solve.
pub fn solve_r0(f: &AFunction, grid: usize, tol: f64) -> Result<FeasibilityReport, FeasibilityError> {
    let grid = grid.max(4);
    let norms = f.norms();
    let (lo, hi) = (norms.a, norms.bracket_upper());
    let step = PI / grid as f64;
    let mut samples = Samples::grid(f, grid);
    let mut iterations = 0;

    if !feasible(f, &samples, hi) {
        let (m, _) = samples.min_at(hi);
        return Err(FeasibilityError::BracketFailure {
            upper: hi,
            min_d_over_sin: m,
            t: t_of_r(f, hi),
        });
    }

    let mut bisect = |samples: &Samples, mut a: f64, mut b: f64| -> f64 {
        if feasible(f, samples, a) {
            return a;
        }
        let mut steps = 0;
        while b - a > tol && steps < MAX_BISECTIONS {
            steps += 1;
            let mid = 0.5 * (a + b);
            if feasible(f, samples, mid) {
                b = mid;
            } else {
                a = mid;
            }
            iterations += 1;
        }
        b
    };

    let mut r0 = bisect(&samples, lo, hi);
    let mut refined: Vec<(f64, f64)> = Vec::new();
    for _ in 0..REFINE_ROUNDS {
        let (_, idx) = samples.min_at(r0);
        let center = samples.at[idx];
        if refined.iter().any(|c| (c.0 - center.0).abs() < step * 0.5 && (c.1 - center.1).abs() < step * 0.5) {
            break;
        }
        refined.push(center);
        samples.add_patch(f, center, step);
        if feasible(f, &samples, r0) {
            break;
        }
        r0 = bisect(&samples, r0, hi);
    }

    let (min_d, idx) = samples.min_at(r0);
    Ok(FeasibilityReport {
        r0,
        bracket: (lo, hi),
        min_t: t_of_r(f, r0),
        min_d_over_sin: min_d,
        argmin: samples.at[idx],
        grid,
        iterations,
        samples: samples.at.len(),
    })
}

/// `min D/sin φ` over the full-sphere grid at a fixed radius, with its location.
pub fn min_d_over_sin(f: &AFunction, r: f64, grid: usize) -> (f64, (f64, f64)) {
    let s = Samples::grid(f, grid.max(4));
    let (m, i) = s.min_at(r);
    (m, s.at[i])
}

//! The generating function `a(φ,θ)` as a finite sum of separable terms.

mod harmonic;
mod weight;

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use harmonic::{HarmonicKind, PhiHarmonic};
pub use weight::{PiParity, ThetaWeight};

use crate::quad;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AfuncError {
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("unknown weight tag {0:?}")]
    UnknownWeight(String),
    #[error("condition {condition} violated: residual {residual:e} > tolerance {tolerance:e}")]
    ConditionViolated {
        condition: String,
        residual: f64,
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ATerm {
    pub coefficient: f64,
    pub weight: ThetaWeight,
    pub harmonic: PhiHarmonic,
}

impl ATerm {
    pub fn new(coefficient: f64, weight: ThetaWeight, harmonic: PhiHarmonic) -> Result<Self, AfuncError> {
        let t = Self {
            coefficient,
            weight,
            harmonic,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), AfuncError> {
        if !self.coefficient.is_finite() {
            return Err(AfuncError::InvalidTerm(format!(
                "coefficient {} is not finite",
                self.coefficient
            )));
        }
        if !self.harmonic.is_well_formed() {
            return Err(AfuncError::InvalidTerm(format!(
                "harmonic order k = {} must be odd and at least 3",
                self.harmonic.k
            )));
        }
        if !self.weight.is_well_formed() {
            return Err(AfuncError::InvalidTerm(format!("weight {} needs m >= 1", self.weight)));
        }
        let expected = match self.harmonic.kind {
            HarmonicKind::Cos => PiParity::Periodic,
            HarmonicKind::Sin => PiParity::Antiperiodic,
        };
        if self.weight.parity() != expected {
            return Err(AfuncError::InvalidTerm(format!(
                "{} cannot be paired with weight {}: a cos harmonic needs a π-periodic weight, \
                 a sin harmonic a π-antiperiodic one",
                self.harmonic, self.weight
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ATerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}·{}", self.coefficient, self.weight, self.harmonic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNorms {
    pub a: f64,
    pub a_theta: f64,
    pub a_thetatheta: f64,
}

impl SupNorms {
    /// Upper end of the feasible-radius bracket.
    pub fn bracket_upper(&self) -> f64 {
        self.a + self.a_theta + self.a_thetatheta
    }
}

/// Default grid for cached norm estimates.
pub const DEFAULT_NORM_GRID: usize = 1024;

#[derive(Debug, Clone, Default)]
pub struct AFunction {
    terms: Vec<ATerm>,
    norms: OnceLock<SupNorms>,
}

impl PartialEq for AFunction {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl AFunction {
    pub fn new(terms: Vec<ATerm>) -> Result<Self, AfuncError> {
        for t in &terms {
            t.check()?;
        }
        Ok(Self {
            terms,
            norms: OnceLock::new(),
        })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &[ATerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient == 0.0)
    }

    pub fn is_theta_independent(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coefficient == 0.0 || t.weight == ThetaWeight::One)
    }

    pub fn eval(&self, phi: f64, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * t.weight.value(theta) * t.harmonic.value(phi))
            .sum()
    }

    pub fn eval_theta(&self, phi: f64, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * t.weight.d1(theta) * t.harmonic.value(phi))
            .sum()
    }

    pub fn eval_thetatheta(&self, phi: f64, theta: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * t.weight.d2(theta) * t.harmonic.value(phi))
            .sum()
    }

    /// The one-dimensional function `φ ↦ a(φ, θ)`.
    pub fn slice(&self, theta: f64) -> OddProfile {
        OddProfile {
            terms: self
                .terms
                .iter()
                .map(|t| (t.coefficient * t.weight.value(theta), t.harmonic))
                .collect(),
        }
    }

    /// Sup norms at [`DEFAULT_NORM_GRID`], computed once and cached.
    pub fn norms(&self) -> SupNorms {
        *self.norms.get_or_init(|| self.sup_norms(DEFAULT_NORM_GRID))
    }

    /// Estimates `‖a‖∞`, `‖∂θa‖∞`, `‖∂²θa‖∞`.
    ///
    /// A uniform `grid × grid` scan over `[0,π]²` (which covers the sphere by
    /// the symmetries of the term family) is followed by a zoom around the
    /// best few grid nodes. The zoom only adds candidates, so the result never
    /// drops below the plain grid maximum.
    pub fn sup_norms(&self, grid: usize) -> SupNorms {
        let grid = grid.max(2);
        SupNorms {
            a: self.sup_of(grid, |p, t| self.eval(p, t).abs()),
            a_theta: self.sup_of(grid, |p, t| self.eval_theta(p, t).abs()),
            a_thetatheta: self.sup_of(grid, |p, t| self.eval_thetatheta(p, t).abs()),
        }
    }

    fn sup_of(&self, grid: usize, f: impl Fn(f64, f64) -> f64 + Sync) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let step = PI / grid as f64;
        let mut nodes: Vec<(f64, f64, f64)> = (0..=grid)
            .into_par_iter()
            .flat_map_iter(|i| {
                let f = &f;
                (0..=grid).map(move |j| {
                    let (p, t) = (i as f64 * step, j as f64 * step);
                    (f(p, t), p, t)
                })
            })
            .collect();
        nodes.sort_by(|x, y| y.0.total_cmp(&x.0));
        let mut best = nodes[0].0;
        for &(_, p0, t0) in nodes.iter().take(8) {
            best = best.max(zoom(&f, p0, t0, step));
        }
        best
    }
}

/// Shrinking local search around a grid candidate.
fn zoom(f: &impl Fn(f64, f64) -> f64, mut p: f64, mut t: f64, mut half: f64) -> f64 {
    const SUB: usize = 8;
    let mut best = f(p, t);
    for _ in 0..40 {
        let h = 2.0 * half / SUB as f64;
        let (mut bp, mut bt) = (p, t);
        for i in 0..=SUB {
            for j in 0..=SUB {
                let (pp, tt) = (p - half + i as f64 * h, t - half + j as f64 * h);
                let v = f(pp, tt);
                if v > best {
                    best = v;
                    bp = pp;
                    bt = tt;
                }
            }
        }
        p = bp;
        t = bt;
        half = h;
        if half < 1e-12 {
            break;
        }
    }
    best
}

/// `φ ↦ Σ cᵢ gᵢ(φ)`: a fixed-θ slice of `a`, odd under `φ ↦ φ + π`.
#[derive(Debug, Clone, PartialEq)]
pub struct OddProfile {
    pub terms: Vec<(f64, PhiHarmonic)>,
}

impl OddProfile {
    pub fn new(terms: Vec<(f64, PhiHarmonic)>) -> Self {
        Self { terms }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.terms.iter().map(|(c, h)| c * h.value(phi)).sum()
    }

    pub fn sin_moment(&self, phi: f64) -> f64 {
        self.terms.iter().map(|(c, h)| c * h.sin_moment(phi)).sum()
    }

    pub fn cos_moment(&self, phi: f64) -> f64 {
        self.terms.iter().map(|(c, h)| c * h.cos_moment(phi)).sum()
    }

    /// Dense-sample estimate of `sup |a|` followed by local zoom.
    pub fn sup_norm(&self) -> f64 {
        if self.terms.iter().all(|(c, _)| *c == 0.0) {
            return 0.0;
        }
        let n = 4096;
        let step = PI / n as f64;
        let f = |p: f64, _t: f64| self.eval(p).abs();
        let mut best: (f64, f64) = (0.0, 0.0);
        for i in 0..=n {
            let p = i as f64 * step;
            let v = f(p, 0.0);
            if v > best.0 {
                best = (v, p);
            }
        }
        best.0.max(zoom(&f, best.1, 0.0, step))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionResidual {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub grid: usize,
    pub conditions: Vec<ConditionResidual>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }
}

pub const VALIDATION_TOL: f64 = 1e-10;

impl AFunction {
    /// Checks oddness, the two closure integrals (by quadrature) and the
    /// periodicity conditions on a `grid × grid` sample.
    pub fn validate(&self, grid: usize) -> Result<ValidationReport, AfuncError> {
        let report = self.validation_report(grid);
        if let Some(bad) = report.conditions.iter().find(|c| !c.pass) {
            return Err(AfuncError::ConditionViolated {
                condition: bad.name.clone(),
                residual: bad.max_residual,
                tolerance: bad.tolerance,
            });
        }
        Ok(report)
    }

    pub fn validation_report(&self, grid: usize) -> ValidationReport {
        let grid = grid.max(2);
        let step = 2.0 * PI / grid as f64;
        let pointwise = |g: &(dyn Fn(f64, f64) -> f64 + Sync)| -> f64 {
            (0..grid)
                .into_par_iter()
                .map(|i| {
                    let p = i as f64 * step;
                    (0..grid)
                        .map(|j| g(p, j as f64 * step).abs())
                        .fold(0.0, f64::max)
                })
                .reduce(|| 0.0, f64::max)
        };
        let odd = pointwise(&|p, t| self.eval(p + PI, t) + self.eval(p, t));
        let perio1 = pointwise(&|p, t| {
            (self.eval(p + 2.0 * PI, t) - self.eval(p, t))
                .abs()
                .max((self.eval(p, t + 2.0 * PI) - self.eval(p, t)).abs())
        });
        let perio2 = pointwise(&|p, t| self.eval(-p, t + PI) - self.eval(p, t));
        let closure = |trig: fn(f64) -> f64| -> f64 {
            (0..grid)
                .into_par_iter()
                .map(|j| {
                    let t = j as f64 * step;
                    match quad::integrate(|s| self.eval(s, t) * trig(s), 0.0, PI, 1e-12) {
                        Ok(v) => v.abs(),
                        Err(_) => f64::INFINITY,
                    }
                })
                .reduce(|| 0.0, f64::max)
        };
        let a2_cos = closure(f64::cos);
        let a2_sin = closure(f64::sin);
        let entry = |name: &str, r: f64| ConditionResidual {
            name: name.to_string(),
            max_residual: r,
            tolerance: VALIDATION_TOL,
            pass: r <= VALIDATION_TOL,
        };
        ValidationReport {
            grid,
            conditions: vec![
                entry("odd_shift_pi", odd),
                entry("closure_cos", a2_cos),
                entry("closure_sin", a2_sin),
                entry("periodic_2pi", perio1),
                entry("compatible_reflection", perio2),
            ],
        }
    }
}

use nalgebra::Vector2;
use std::f64::consts::PI;

use crate::afunc::OddProfile;

use super::SurfaceError;

/// `x(φ) = x₀ + ∫₀^φ (r − a(s)) (−sin s, cos s) ds`.
pub fn curve2d_point(a: &OddProfile, r: f64, x0: Vector2<f64>, phi: f64) -> Result<Vector2<f64>, SurfaceError> {
    let norm = a.sup_norm();
    if r < norm {
        return Err(SurfaceError::RadiusTooSmall { r, required: norm });
    }
    Ok(point_unchecked(a, r, x0, phi))
}

fn point_unchecked(a: &OddProfile, r: f64, x0: Vector2<f64>, phi: f64) -> Vector2<f64> {
    x0 + Vector2::new(r * (phi.cos() - 1.0) + a.sin_moment(phi), r * phi.sin() - a.cos_moment(phi))
}

/// A closed planar curve of constant width `2r`, sampled uniformly in φ.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve2D {
    pub samples: Vec<(f64, Vector2<f64>)>,
    pub r: f64,
    pub x0: Vector2<f64>,
}

impl Curve2D {
    /// `n` samples on `[0, 2π)` plus the closing sample at `2π`.
    pub fn sample(a: &OddProfile, r: f64, x0: Vector2<f64>, n: usize) -> Result<Self, SurfaceError> {
        if n < 3 {
            return Err(SurfaceError::InvalidGrid(format!("curve needs at least 3 samples, got {n}")));
        }
        let norm = a.sup_norm();
        if r < norm {
            return Err(SurfaceError::RadiusTooSmall { r, required: norm });
        }
        let samples = (0..=n)
            .map(|i| {
                let phi = 2.0 * PI * i as f64 / n as f64;
                (phi, point_unchecked(a, r, x0, phi))
            })
            .collect();
        Ok(Self { samples, r, x0 })
    }

    /// Distance between the first and the closing sample.
    pub fn closure_gap(&self) -> f64 {
        let first = self.samples.first().map(|s| s.1);
        let last = self.samples.last().map(|s| s.1);
        match (first, last) {
            (Some(a), Some(b)) => (a - b).norm(),
            _ => 0.0,
        }
    }

    /// Points without the duplicated closing sample.
    pub fn open_points(&self) -> impl Iterator<Item = Vector2<f64>> + '_ {
        self.samples[..self.samples.len() - 1].iter().map(|s| s.1)
    }
}

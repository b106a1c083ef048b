//! Rotational shadow domains: the radial support function `R_Ω(ψ)` of a
//! planar set about the origin, and its slice-wise 3D analogue about the
//! vertical axis of a body.

use std::f64::consts::PI;

use nalgebra::Vector2;
use rayon::prelude::*;
use thiserror::Error;

use crate::surface::{Body, BodySurface};
use crate::verify;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShadowError {
    #[error("planar body has no points")]
    EmptyBody,
    #[error("origin is not interior: R({psi}) = {value}")]
    OriginOutside { psi: f64, value: f64 },
    #[error("invalid sampling: {0}")]
    InvalidGrid(String),
}

/// A planar set given by boundary samples or polygon vertices.
///
/// Only the convex hull matters for the radial support function, so the
/// samples need not be ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarBody {
    pub points: Vec<Vector2<f64>>,
}

impl PlanarBody {
    pub fn polygon(vertices: Vec<Vector2<f64>>) -> Self {
        Self { points: vertices }
    }

    /// From polar samples `(t, r(t))` about the origin.
    pub fn from_polar(samples: &[(f64, f64)]) -> Self {
        Self {
            points: samples.iter().map(|&(t, r)| Vector2::new(r * t.cos(), r * t.sin())).collect(),
        }
    }

    pub fn disk(center: Vector2<f64>, radius: f64, n: usize) -> Self {
        Self {
            points: (0..n)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / n as f64;
                    center + radius * Vector2::new(t.cos(), t.sin())
                })
                .collect(),
        }
    }

    /// `L = max ‖x‖`, the Lipschitz constant of `R_Ω`.
    pub fn max_norm(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }
}

/// `R_Ω(ψ) = sup { x cos ψ + y sin ψ : (x, y) ∈ Ω }`
pub fn radial_support(body: &PlanarBody, psi: f64) -> Result<f64, ShadowError> {
    if body.points.is_empty() {
        return Err(ShadowError::EmptyBody);
    }
    let (s, c) = psi.sin_cos();
    Ok(body.points.iter().map(|p| p.x * c + p.y * s).fold(f64::NEG_INFINITY, f64::max))
}

/// `R_Ω` on the uniform grid `ψₖ = 2πk/N`, with linear interpolation between.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowDomain {
    pub values: Vec<f64>,
    pub lipschitz: f64,
}

impl ShadowDomain {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn psi(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.values.len() as f64
    }

    pub fn value_at(&self, psi: f64) -> f64 {
        let n = self.values.len();
        let x = psi.rem_euclid(2.0 * PI) / (2.0 * PI) * n as f64;
        let k = (x.floor() as usize).min(n - 1);
        let f = x - k as f64;
        self.values[k] * (1.0 - f) + self.values[(k + 1) % n] * f
    }

    /// `p ∈ Sh(Ω)` iff `|p| < R_Ω(arg p)`.
    pub fn contains(&self, p: Vector2<f64>) -> bool {
        p.norm() < self.value_at(p.y.atan2(p.x))
    }

    /// `½ ∫ R² dψ` by the trapezoidal rule.
    pub fn area(&self) -> f64 {
        let h = 2.0 * PI / self.values.len() as f64;
        0.5 * h * self.values.iter().map(|r| r * r).sum::<f64>()
    }

    /// `max (|R(ψ₁) − R(ψ₂)| − L |ψ₁ − ψ₂|)` over neighbouring samples, clamped at 0.
    pub fn lipschitz_violation(&self) -> f64 {
        let n = self.values.len();
        let h = 2.0 * PI / n as f64;
        (0..n)
            .map(|k| ((self.values[(k + 1) % n] - self.values[k]).abs() - self.lipschitz * h).max(0.0))
            .fold(0.0, f64::max)
    }
}

pub fn shadow2d(body: &PlanarBody, npsi: usize) -> Result<ShadowDomain, ShadowError> {
    if npsi < 3 {
        return Err(ShadowError::InvalidGrid(format!("need at least 3 angles, got {npsi}")));
    }
    let mut values = Vec::with_capacity(npsi);
    for k in 0..npsi {
        let psi = 2.0 * PI * k as f64 / npsi as f64;
        let v = radial_support(body, psi)?;
        if v <= 0.0 {
            return Err(ShadowError::OriginOutside { psi, value: v });
        }
        values.push(v);
    }
    Ok(ShadowDomain {
        values,
        lipschitz: body.max_norm(),
    })
}

/// Horizontal slices of a body about the vertical axis through its anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowDomain3D {
    /// `(height, planar shadow of the slice)`
    pub slices: Vec<(f64, ShadowDomain)>,
    pub warnings: Vec<String>,
}

/// Cuts every grid edge that crosses height `z` and returns the crossing
/// points relative to the axis point `(x₀, y₀)`.
pub fn slice_points(surface: &BodySurface, z: f64) -> Vec<Vector2<f64>> {
    let (np, nt) = (surface.nphi, surface.ntheta);
    let axis = surface.body.x0;
    let mut out = Vec::new();
    let mut cut = |a: crate::Vec3, b: crate::Vec3| {
        if (a.z - z) * (b.z - z) <= 0.0 && a.z != b.z {
            let t = (z - a.z) / (b.z - a.z);
            let p = a + t * (b - a);
            out.push(Vector2::new(p.x - axis.x, p.y - axis.y));
        }
    };
    for j in 0..nt {
        for i in 0..np {
            let p = surface.point(i, j);
            cut(p, surface.point((i + 1) % np, j));
            // θ = π is row 0 traversed backwards
            let q = if j + 1 < nt { surface.point(i, j + 1) } else { surface.point((np - i) % np, 0) };
            cut(p, q);
        }
    }
    out
}

/// Heuristic strict-convexity test: support planes at sample nodes must not
/// be violated, and must touch the surface at a single sample.
fn strictly_convex_hint(surface: &BodySurface, planes: usize) -> Option<String> {
    let v = verify::convexity_check(surface, planes);
    if v > 1e-6 {
        return Some(format!("body is not convex (support-plane violation {v:.3e})"));
    }
    let pts = surface.points();
    let step = (surface.len() / planes.max(1)).max(1);
    for idx in (0..surface.len()).step_by(step) {
        let (i, j) = (idx % surface.nphi, idx / surface.nphi);
        let (x, n) = (surface.point(i, j), surface.normal(i, j));
        let touching = pts
            .iter()
            .filter(|p| (*p - x).norm() > 1e-9 && n.dot(&(*p - x)) > -1e-12)
            .count();
        if touching > 0 {
            return Some(format!("support plane at node ({i}, {j}) touches {touching} other samples; body may not be strictly convex"));
        }
    }
    None
}

/// How slice boundaries are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SliceMethod {
    /// Crossings of grid edges, linearly interpolated. Chordal error is
    /// `O(h²)` in the grid spacing.
    Linear,
    /// Crossings solved on the exact surface and the support in each
    /// direction maximised over θ.
    #[default]
    Refined,
}

/// Height of `X(φ, θ)`; the shift term is horizontal and drops out.
fn height(body: &Body, phi: f64, theta: f64) -> f64 {
    body.point_oh(phi, theta).z
}

/// The slice point at height `z` on the meridian θ, relative to the axis.
///
/// `z(φ)` decreases strictly on `(0, π)` when `r > ‖a‖∞`, so bisection finds
/// the unique crossing.
fn exact_slice_point(body: &Body, z: f64, theta: f64) -> Vector2<f64> {
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if height(body, mid, theta) > z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = body.point(0.5 * (lo + hi), theta) - body.x0;
    Vector2::new(p.x, p.y)
}

fn refined_slice(body: &Body, z: f64, ntheta: usize, npsi: usize) -> Result<ShadowDomain, ShadowError> {
    let m = 2 * ntheta;
    let step = 2.0 * PI / m as f64;
    let coarse: Vec<Vector2<f64>> = (0..m).map(|k| exact_slice_point(body, z, k as f64 * step)).collect();
    let lipschitz = coarse.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let mut values = Vec::with_capacity(npsi);
    for k in 0..npsi {
        let psi = 2.0 * PI * k as f64 / npsi as f64;
        let e = Vector2::new(psi.cos(), psi.sin());
        let (best, mut value) = coarse
            .iter()
            .enumerate()
            .map(|(i, p)| (i, p.dot(&e)))
            .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        // golden-section search on the neighbouring θ cells
        let g = |t: f64| exact_slice_point(body, z, t).dot(&e);
        let inv = (5f64.sqrt() - 1.0) / 2.0;
        let center = best as f64 * step;
        let (mut a, mut b) = (center - step, center + step);
        let (mut c, mut d) = (b - inv * (b - a), a + inv * (b - a));
        let (mut gc, mut gd) = (g(c), g(d));
        while b - a > 1e-7 {
            if gc > gd {
                b = d;
                d = c;
                gd = gc;
                c = b - inv * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = d;
                gc = gd;
                d = a + inv * (b - a);
                gd = g(d);
            }
        }
        value = value.max(gc).max(gd);
        if value <= 0.0 {
            return Err(ShadowError::OriginOutside { psi, value });
        }
        values.push(value);
    }
    Ok(ShadowDomain { values, lipschitz })
}

/// Slices the body at `nslices` interior heights and builds the planar shadow
/// of each slice about the vertical axis through `X₀`.
pub fn shadow3d(surface: &BodySurface, nslices: usize, npsi: usize) -> Result<ShadowDomain3D, ShadowError> {
    shadow3d_with(surface, nslices, npsi, SliceMethod::default())
}

pub fn shadow3d_with(
    surface: &BodySurface,
    nslices: usize,
    npsi: usize,
    method: SliceMethod,
) -> Result<ShadowDomain3D, ShadowError> {
    if nslices == 0 {
        return Err(ShadowError::InvalidGrid("need at least one slice".to_string()));
    }
    if npsi < 3 {
        return Err(ShadowError::InvalidGrid(format!("need at least 3 angles, got {npsi}")));
    }
    let (zmin, zmax) = surface
        .points()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.z), hi.max(p.z)));
    let warnings: Vec<String> = strictly_convex_hint(surface, 64).into_iter().collect();
    let slices = (0..nslices)
        .into_par_iter()
        .map(|k| {
            let z = zmin + (k as f64 + 0.5) / nslices as f64 * (zmax - zmin);
            let dom = match method {
                SliceMethod::Linear => shadow2d(&PlanarBody::polygon(slice_points(surface, z)), npsi),
                SliceMethod::Refined => refined_slice(&surface.body, z, surface.ntheta, npsi),
            };
            dom.map(|s| (z, s))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ShadowDomain3D { slices, warnings })
}

/// `max |R_slice(ψ) − ρ_oh(z, ψ)|` where `ρ_oh` is the horizontal distance of
/// the `X_oh` point at height `z` in direction `Θ(ψ)`.
///
/// For fixed ψ the height of `X_oh(φ, ψ)` decreases strictly on `(0, π)`, so
/// the matching φ is found by bisection.
pub fn shadow_oh_consistency(body: &Body, shadow: &ShadowDomain3D) -> f64 {
    shadow
        .slices
        .par_iter()
        .map(|(z, dom)| {
            (0..dom.len())
                .map(|k| {
                    let psi = dom.psi(k);
                    let (mut lo, mut hi) = (0.0, PI);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        if body.point_oh(mid, psi).z > *z {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let x = body.point_oh(0.5 * (lo + hi), psi) - body.x0;
                    let rho = x.x * psi.cos() + x.y * psi.sin();
                    (dom.values[k] - rho).abs()
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afunc::AFunction;

    fn square() -> PlanarBody {
        PlanarBody::polygon(vec![
            Vector2::new(-1.0, -1.0),
            Vector2::new(1.0, -1.0),
            Vector2::new(1.0, 1.0),
            Vector2::new(-1.0, 1.0),
        ])
    }

    #[test]
    fn square_support() {
        assert!((radial_support(&square(), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((radial_support(&square(), PI / 4.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn empty_and_outside() {
        assert_eq!(radial_support(&PlanarBody::polygon(vec![]), 0.0), Err(ShadowError::EmptyBody));
        let off = PlanarBody::disk(Vector2::new(3.0, 0.0), 1.0, 64);
        assert!(matches!(shadow2d(&off, 64), Err(ShadowError::OriginOutside { .. })));
    }

    #[test]
    fn disk_shadow_is_the_disk() {
        let d = PlanarBody::disk(Vector2::zeros(), 1.0, 4096);
        let s = shadow2d(&d, 256).unwrap();
        assert!(s.values.iter().all(|r| (r - 1.0).abs() < 1e-6));
        assert!((s.area() - PI).abs() < 1e-5);
        assert!(s.contains(Vector2::new(0.5, 0.5)));
        assert!(!s.contains(Vector2::new(0.8, 0.8)));
    }

    #[test]
    fn sphere_slices_are_exact_disks() {
        let surf = Body::new(AFunction::zero(), 1.0).sample_grid(32, 16).unwrap();
        let sh = shadow3d(&surf, 9, 200).unwrap();
        assert!(sh.warnings.is_empty());
        for (z, s) in &sh.slices {
            let expect = (1.0 - z * z).sqrt();
            assert!(s.values.iter().all(|r| (r - expect).abs() < 1e-9), "slice {z}");
        }
    }

    #[test]
    fn linear_sphere_slices_are_centered_disks() {
        let surf = Body::new(AFunction::zero(), 1.0).sample_grid(128, 64).unwrap();
        let sh = shadow3d_with(&surf, 9, 128, SliceMethod::Linear).unwrap();
        for (z, s) in &sh.slices {
            let c = *z;
            let expect = (1.0 - c * c).sqrt();
            let (lo, hi) = s.values.iter().fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(*r), b.max(*r)));
            assert!(hi - lo < 2e-3 * expect, "slice {z}: spread {}", hi - lo);
            assert!((hi - expect).abs() < 2e-3);
        }
    }
}

//! Frames, the planar curve, the 3D boundary `X(φ,θ)` and its grid samples.

mod curve2d;

use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

pub use curve2d::{curve2d_point, Curve2D};

use crate::afunc::AFunction;
use crate::quad::{self, QuadratureFailure};
use crate::shift;
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("radius {r} is below the required {required}")]
    RadiusTooSmall { r: f64, required: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureFailure),
}

/// `U(φ,θ) = (sin φ cos θ, sin φ sin θ, cos φ)`
pub fn direction(phi: f64, theta: f64) -> Vec3 {
    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    Vec3::new(sp * ct, sp * st, cp)
}

/// Both orthonormal frames at `(φ, θ)`.
///
/// `U, V, W` move with the point (`V = ∂φU`, `W = Ψ`), while `Θ, Ψ, Ξ`
/// depend on θ only: `Θ = (cos θ, sin θ, 0)`, `Ψ = (−sin θ, cos θ, 0)`,
/// `Ξ = e₃`. Then `U = cos φ Ξ + sin φ Θ` and `V = cos φ Θ − sin φ Ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub u: Vec3,
    pub v: Vec3,
    pub w: Vec3,
    pub big_theta: Vec3,
    pub psi: Vec3,
    pub xi: Vec3,
}

pub fn frame_at(phi: f64, theta: f64) -> Frame {
    let (sp, cp) = phi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let big_theta = Vec3::new(ct, st, 0.0);
    let psi = Vec3::new(-st, ct, 0.0);
    let xi = Vec3::new(0.0, 0.0, 1.0);
    Frame {
        u: cp * xi + sp * big_theta,
        v: cp * big_theta - sp * xi,
        w: psi,
        big_theta,
        psi,
        xi,
    }
}

/// A generating function together with the radius and anchor that fix a body.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    pub f: AFunction,
    pub r: f64,
    pub x0: Vec3,
}

/// The θ-weighted moments `∫₀^φ a(s,θ) sin s ds` and `∫₀^φ a(s,θ) cos s ds`.
fn moments(f: &AFunction, phi: f64, theta: f64) -> (f64, f64) {
    f.terms().iter().fold((0.0, 0.0), |(s, c), t| {
        let cw = t.coefficient * t.weight.value(theta);
        (s + cw * t.harmonic.sin_moment(phi), c + cw * t.harmonic.cos_moment(phi))
    })
}

impl Body {
    /// Anchor defaults to `(0, 0, r)`.
    pub fn new(f: AFunction, r: f64) -> Self {
        Self {
            f,
            r,
            x0: Vec3::new(0.0, 0.0, r),
        }
    }

    pub fn with_anchor(f: AFunction, r: f64, x0: Vec3) -> Self {
        Self { f, r, x0 }
    }

    /// The `h`-free part `X_oh = X − h Ψ`.
    pub fn point_oh(&self, phi: f64, theta: f64) -> Vec3 {
        let fr = frame_at(phi, theta);
        let (a_s, a_c) = moments(&self.f, phi, theta);
        let r = self.r;
        self.x0 + (r * (phi.cos() - 1.0) + a_s) * fr.xi + (r * phi.sin() - a_c) * fr.big_theta
    }

    /// `X(φ,θ) = X₀ + ∫₀^φ (r − a(s,θ)) V(s,θ) ds + h(φ,θ) W(θ)`.
    pub fn point(&self, phi: f64, theta: f64) -> Vec3 {
        let h = shift::h_value(&self.f, phi, theta);
        self.point_oh(phi, theta) + h * frame_at(phi, theta).psi
    }

    /// Same point with every integral done by quadrature.
    pub fn point_quad(&self, phi: f64, theta: f64) -> Result<Vec3, QuadratureFailure> {
        let fr = frame_at(phi, theta);
        let a_s = quad::integrate(|s| self.f.eval(s, theta) * s.sin(), 0.0, phi, quad::DEFAULT_TOL)?;
        let a_c = quad::integrate(|s| self.f.eval(s, theta) * s.cos(), 0.0, phi, quad::DEFAULT_TOL)?;
        let h = shift::h_value_quad(&self.f, phi, theta)?;
        let r = self.r;
        Ok(self.x0
            + (r * (phi.cos() - 1.0) + a_s) * fr.xi
            + (r * phi.sin() - a_c) * fr.big_theta
            + h * fr.psi)
    }

    /// `(∂φX, ∂θX)`.
    ///
    /// `∂φX = (r − a) V + h_φ Ψ` and
    /// `∂θX = −h_φ sin²φ Ξ + h_φ sin φ cos φ Θ + (r sin φ − ∫₀^φ a cos + h_θ) Ψ`.
    pub fn partials(&self, phi: f64, theta: f64) -> (Vec3, Vec3) {
        let fr = frame_at(phi, theta);
        let a = self.f.eval(phi, theta);
        let hp = shift::h_phi(&self.f, phi, theta);
        let ht = shift::h_theta(&self.f, phi, theta);
        let (_, a_c) = moments(&self.f, phi, theta);
        let (sp, cp) = phi.sin_cos();
        let dphi = (self.r - a) * fr.v + hp * fr.psi;
        let dtheta = -hp * sp * sp * fr.xi + hp * sp * cp * fr.big_theta + (self.r * sp - a_c + ht) * fr.psi;
        (dphi, dtheta)
    }

    /// Samples `X` on the grid `φᵢ = 2πi/Nφ`, `θⱼ = πj/Nθ`.
    pub fn sample_grid(&self, nphi: usize, ntheta: usize) -> Result<BodySurface, SurfaceError> {
        self.sample_sheet(nphi, ntheta, Sheet::Full)
    }

    pub fn sample_sheet(&self, nphi: usize, ntheta: usize, sheet: Sheet) -> Result<BodySurface, SurfaceError> {
        if nphi < 8 || !nphi.is_multiple_of(2) {
            return Err(SurfaceError::InvalidGrid(format!("nphi must be even and >= 8, got {nphi}")));
        }
        if ntheta < 4 {
            return Err(SurfaceError::InvalidGrid(format!("ntheta must be >= 4, got {ntheta}")));
        }
        let rows: Vec<Vec<Vec3>> = (0..ntheta)
            .into_par_iter()
            .map(|j| {
                let theta = grid_theta(j, ntheta);
                (0..nphi)
                    .map(|i| {
                        let phi = grid_phi(i, nphi);
                        match sheet {
                            Sheet::Full => self.point(phi, theta),
                            Sheet::ShadowOnly => self.point_oh(phi, theta),
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(BodySurface {
            body: self.clone(),
            sheet,
            nphi,
            ntheta,
            points: rows.into_iter().flatten().collect(),
        })
    }
}

fn grid_phi(i: usize, nphi: usize) -> f64 {
    2.0 * PI * i as f64 / nphi as f64
}

fn grid_theta(j: usize, ntheta: usize) -> f64 {
    PI * j as f64 / ntheta as f64
}

/// Which parametrization a [`BodySurface`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// `X`
    Full,
    /// `X_oh = X − h Ψ`
    ShadowOnly,
}

/// Grid samples of a body boundary.
///
/// Points are stored row-major with φ as the fast axis over
/// `i ∈ 0..Nφ`, `j ∈ 0..Nθ`. The seam `φ = 2π` and the row `θ = π` are not
/// stored: they coincide with column 0 and with row 0 traversed as
/// `i ↦ Nφ − i`. Every direction on the sphere is `U(φᵢ, θⱼ)` for some node,
/// the two poles repeated along columns `0` and `Nφ/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BodySurface {
    pub body: Body,
    pub sheet: Sheet,
    pub nphi: usize,
    pub ntheta: usize,
    points: Vec<Vec3>,
}

impl BodySurface {
    pub fn r(&self) -> f64 {
        self.body.r
    }

    pub fn phi(&self, i: usize) -> f64 {
        grid_phi(i, self.nphi)
    }

    pub fn theta(&self, j: usize) -> f64 {
        grid_theta(j, self.ntheta)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nphi + i
    }

    pub fn point(&self, i: usize, j: usize) -> Vec3 {
        self.points[self.index(i, j)]
    }

    /// Outward normal `U(φᵢ, θⱼ)` carried by the node.
    pub fn normal(&self, i: usize, j: usize) -> Vec3 {
        direction(self.phi(i), self.theta(j))
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(i, j, X, U)` for every node.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, Vec3, Vec3)> + '_ {
        (0..self.ntheta).flat_map(move |j| (0..self.nphi).map(move |i| (i, j, self.point(i, j), self.normal(i, j))))
    }

    /// `max |X(φ,θ) − X(φ+π,θ) − 2r U(φ,θ)|` over the grid.
    pub fn antipodal_residual(&self) -> f64 {
        let half = self.nphi / 2;
        let two_r = 2.0 * self.r();
        (0..self.ntheta)
            .into_par_iter()
            .map(|j| {
                (0..half)
                    .map(|i| (self.point(i, j) - self.point(i + half, j) - two_r * self.normal(i, j)).norm())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Largest spread of each pole row around its first sample.
    pub fn pole_spread(&self) -> f64 {
        let half = self.nphi / 2;
        let mut worst: f64 = 0.0;
        for i in [0, half] {
            let p0 = self.point(i, 0);
            for j in 1..self.ntheta {
                worst = worst.max((self.point(i, j) - p0).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afunc::{ATerm, PhiHarmonic, ThetaWeight};

    fn combiaa() -> AFunction {
        AFunction::new(vec![
            ATerm::new(-1.0, ThetaWeight::Cos2, PhiHarmonic::cos(3)).unwrap(),
            ATerm::new(1.0, ThetaWeight::SignedSin2, PhiHarmonic::sin(3)).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn frames_at_reference_points() {
        let f = frame_at(0.0, 0.0);
        assert!((f.u - Vec3::z()).norm() < 1e-15);
        assert!((f.v - Vec3::x()).norm() < 1e-15);
        assert!((f.w - Vec3::y()).norm() < 1e-15);
        let g = frame_at(PI / 2.0, 0.0);
        assert!((g.u - Vec3::x()).norm() < 1e-15);
        assert!((g.big_theta - Vec3::x()).norm() < 1e-15);
        assert!((g.xi - Vec3::z()).norm() < 1e-15);
    }

    #[test]
    fn frames_are_orthonormal() {
        for (p, t) in [(0.3, 1.2), (2.0, 4.0), (5.5, 0.1)] {
            let f = frame_at(p, t);
            for (a, b) in [(f.u, f.v), (f.u, f.w), (f.v, f.w), (f.big_theta, f.psi), (f.psi, f.xi)] {
                assert!(a.dot(&b).abs() < 1e-15);
            }
            for x in [f.u, f.v, f.w, f.big_theta, f.psi, f.xi] {
                assert!((x.norm() - 1.0).abs() < 1e-15);
            }
            assert!((f.u - direction(p, t)).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_function_is_the_sphere() {
        let b = Body::with_anchor(AFunction::zero(), 1.0, Vec3::z());
        for (p, t) in [(0.0, 0.0), (0.7, 2.0), (3.0, 5.0)] {
            assert!((b.point(p, t) - direction(p, t)).norm() < 1e-15);
            let (dp, dt) = b.partials(p, t);
            let fr = frame_at(p, t);
            assert!((dp - fr.v).norm() < 1e-15);
            assert!((dt - p.sin() * fr.psi).norm() < 1e-15);
        }
    }

    #[test]
    fn quadrature_point_matches_closed_form() {
        let b = Body::new(combiaa(), 1.25348);
        for (p, t) in [(0.4, 0.3), (1.9, 2.5), (4.1, 1.0), (6.0, 2.9)] {
            let q = b.point_quad(p, t).unwrap();
            assert!((q - b.point(p, t)).norm() < 1e-10);
        }
    }

    #[test]
    fn seam_closes() {
        let b = Body::new(combiaa(), 1.3);
        for t in [0.2, 1.3, 2.8] {
            assert!((b.point(2.0 * PI, t) - b.point(0.0, t)).norm() < 1e-13);
        }
    }

    #[test]
    fn theta_zero_slice_is_the_planar_curve() {
        use nalgebra::Vector2;
        let f = combiaa();
        let b = Body::new(f.clone(), 1.25348);
        let prof = f.slice(0.0);
        for p in [0.3, 1.4, 2.5, 3.9, 5.2] {
            let x = curve2d_point(&prof, b.r, Vector2::zeros(), p).unwrap();
            let fr = frame_at(p, 0.0);
            let expect = b.x0 + x.x * fr.xi + x.y * fr.big_theta;
            assert!((b.point(p, 0.0) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn partials_are_tangent() {
        let b = Body::new(combiaa(), 1.25348);
        for (p, t) in [(0.4, 0.3), (1.9, 2.5), (4.1, 1.0)] {
            let (dp, dt) = b.partials(p, t);
            let u = direction(p, t);
            assert!(u.dot(&dp).abs() < 1e-12);
            assert!(u.dot(&dt).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_invariants() {
        let b = Body::new(combiaa(), 1.25348);
        let s = b.sample_grid(64, 32).unwrap();
        assert_eq!(s.len(), 64 * 32);
        assert!(s.antipodal_residual() < 1e-12);
        assert!(s.pole_spread() < 1e-12);
        assert!((s.point(0, 5) - b.x0).norm() < 1e-15);
        assert!(b.sample_grid(6, 8).is_err());
        assert!(b.sample_grid(9, 8).is_err());
        assert!(b.sample_grid(8, 3).is_err());
    }
}

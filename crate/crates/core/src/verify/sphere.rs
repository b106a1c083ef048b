use std::f64::consts::PI;

use crate::surface::direction;
use crate::Vec3;

/// `n` quasi-uniform unit vectors on the golden-angle spiral.
pub fn fibonacci_directions(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let a = golden * i as f64;
            Vec3::new(rho * a.cos(), rho * a.sin(), z)
        })
        .collect()
}

/// Great-circle distance `arccos(ω₁·ω₂)`.
pub fn sphere_distance(w1: &Vec3, w2: &Vec3) -> f64 {
    w1.dot(w2).clamp(-1.0, 1.0).acos()
}

/// Parameter-space surrogate for `|U(φ,θ) − U(φ₀,θ₀)|` on `[0,2π] × [0,π]`.
///
/// Same φ-half: `|φ−φ₀| + |θ−θ₀| min(|sin φ|,|sin φ₀|)`.
/// Opposite halves: `|2π−φ−φ₀| + (π−|θ−θ₀|) min(|sin φ|,|sin φ₀|)`.
pub fn parameter_distance(phi: f64, theta: f64, phi0: f64, theta0: f64) -> f64 {
    let m = phi.sin().abs().min(phi0.sin().abs());
    let dt = (theta - theta0).abs();
    let upper = |p: f64| p <= PI;
    if upper(phi) == upper(phi0) || phi == PI || phi0 == PI {
        (phi - phi0).abs() + dt * m
    } else {
        (2.0 * PI - phi - phi0).abs() + (PI - dt) * m
    }
}

/// Two `(φ, θ)` parameter points.
pub type ParamPair = ((f64, f64), (f64, f64));

/// Largest violation of `|ω−ω₀| ≤ Δ ≤ π|ω−ω₀|` over the given parameter pairs.
pub fn distance_equivalence_check(pairs: &[ParamPair]) -> f64 {
    pairs
        .iter()
        .map(|&((p, t), (p0, t0))| {
            let d = (direction(p, t) - direction(p0, t0)).norm();
            let delta = parameter_distance(p, t, p0, t0);
            (d - delta).max(delta - PI * d)
        })
        .fold(0.0, f64::max)
}

//! Bodies of constant width in three dimensions built from a single
//! generating function `a(φ,θ)`.
//!
//! The boundary is the image of
//!
//! ```text
//! X(φ,θ) = X₀ + ∫₀^φ (r − a(s,θ)) V(s,θ) ds + h(φ,θ) W(θ)
//! ```
//!
//! which has constant width `2r` whenever `r` is at least the minimal
//! feasible radius `r₀(a)` computed by [`feasibility::solve_r0`].

pub mod afunc;
pub mod feasibility;
pub mod gallery;
pub mod io;
pub mod quad;
pub mod shadow;
pub mod shift;
pub mod surface;
pub mod verify;

pub type Vec3 = nalgebra::Vector3<f64>;

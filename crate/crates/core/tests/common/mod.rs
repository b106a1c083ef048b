//! Oracles written independently of the library's evaluation code.
#![allow(dead_code)]

use orbiform::afunc::{AFunction, ATerm, HarmonicKind, PhiHarmonic, ThetaWeight};
use proptest::prelude::*;
use std::f64::consts::PI;

/// `(w(θ), w'(θ), w''(θ))` from the textbook formulas.
pub fn weight(w: ThetaWeight, t: f64) -> (f64, f64, f64) {
    let (s, c) = t.sin_cos();
    let trig = |n: f64, cosine: bool| {
        let (sn, cn) = (n * t).sin_cos();
        if cosine {
            (cn, -n * sn, -n * n * cn)
        } else {
            (sn, n * cn, -n * n * sn)
        }
    };
    match w {
        ThetaWeight::One => (1.0, 0.0, 0.0),
        ThetaWeight::Cos2 => (c * c, -2.0 * s * c, -2.0 * (c * c - s * s)),
        ThetaWeight::Sin2 => (s * s, 2.0 * s * c, 2.0 * (c * c - s * s)),
        ThetaWeight::SignedSin2 => (s.abs() * s, 2.0 * s.abs() * c, 2.0 * s.signum() * (c * c - s * s)),
        ThetaWeight::CosEven(m) => trig(2.0 * m as f64, true),
        ThetaWeight::SinEven(m) => trig(2.0 * m as f64, false),
        ThetaWeight::CosOdd(m) => trig(2.0 * m as f64 - 1.0, true),
        ThetaWeight::SinOdd(m) => trig(2.0 * m as f64 - 1.0, false),
    }
}

pub fn harmonic(h: PhiHarmonic, p: f64) -> f64 {
    let x = h.k as f64 * p;
    match h.kind {
        HarmonicKind::Cos => x.cos(),
        HarmonicKind::Sin => x.sin(),
    }
}

/// `(a, a_θ, a_θθ)` at `(φ, θ)`.
pub fn a(f: &AFunction, p: f64, t: f64) -> (f64, f64, f64) {
    f.terms().iter().fold((0.0, 0.0, 0.0), |acc, term| {
        let (w0, w1, w2) = weight(term.weight, t);
        let g = term.coefficient * harmonic(term.harmonic, p);
        (acc.0 + g * w0, acc.1 + g * w1, acc.2 + g * w2)
    })
}

/// Composite Simpson with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        s += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `h = −∫₀^φ sin(φ−s) a_θ(s,θ) ds / sin φ` by Simpson.
pub fn h_oracle(f: &AFunction, p: f64, t: f64) -> f64 {
    -simpson(|s| (p - s).sin() * a(f, s, t).1, 0.0, p, 4000) / p.sin()
}

pub fn unit(p: f64, t: f64) -> [f64; 3] {
    [p.sin() * t.cos(), p.sin() * t.sin(), p.cos()]
}

pub fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

pub fn arb_weight() -> impl Strategy<Value = ThetaWeight> {
    prop_oneof![
        Just(ThetaWeight::One),
        Just(ThetaWeight::Cos2),
        Just(ThetaWeight::Sin2),
        Just(ThetaWeight::SignedSin2),
        (1u32..4).prop_map(ThetaWeight::CosEven),
        (1u32..4).prop_map(ThetaWeight::SinEven),
        (1u32..4).prop_map(ThetaWeight::CosOdd),
        (1u32..4).prop_map(ThetaWeight::SinOdd),
    ]
}

fn arb_term() -> impl Strategy<Value = ATerm> {
    (-1.0f64..1.0, arb_weight(), 1u32..5).prop_map(|(c, w, j)| {
        let kind = match w {
            ThetaWeight::SignedSin2 | ThetaWeight::CosOdd(_) | ThetaWeight::SinOdd(_) => HarmonicKind::Sin,
            _ => HarmonicKind::Cos,
        };
        ATerm::new(c, w, PhiHarmonic { kind, k: 2 * j + 1 }).expect("parity-matched term")
    })
}

pub fn arb_afunction() -> impl Strategy<Value = AFunction> {
    prop::collection::vec(arb_term(), 1..4).prop_map(|t| AFunction::new(t).expect("valid terms"))
}

pub fn angle() -> impl Strategy<Value = f64> {
    -2.0 * PI..2.0 * PI
}

/// The example formulas, built term by term.
pub fn gallery_functions() -> Vec<(&'static str, AFunction)> {
    let t = |c: f64, w: ThetaWeight, h: PhiHarmonic| ATerm::new(c, w, h).unwrap();
    use ThetaWeight::*;
    let (c3, c5, s3, s5) = (PhiHarmonic::cos(3), PhiHarmonic::cos(5), PhiHarmonic::sin(3), PhiHarmonic::sin(5));
    vec![
        ("combiaa", vec![t(-1.0, Cos2, c3), t(1.0, SignedSin2, s3)]),
        ("g1", vec![t(-1.0, Cos2, c3)]),
        ("g2", vec![t(-1.0, Cos2, c3), t(1.0, Sin2, c3)]),
        ("g3", vec![t(-1.0, Cos2, c3), t(1.0, Sin2, c5)]),
        ("g4", vec![t(1.0, Cos2, c3), t(1.0, Sin2, c5)]),
        ("g5", vec![t(-1.0, Cos2, c5), t(1.0, Sin2, c5)]),
        ("g6", vec![t(-1.0, Cos2, c5), t(1.0, SignedSin2, s5)]),
    ]
    .into_iter()
    .map(|(n, terms)| (n, AFunction::new(terms).unwrap()))
    .collect()
}

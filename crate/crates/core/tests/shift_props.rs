mod common;

use common::{angle, arb_afunction};
use orbiform::shift::{h_phi, h_phi_quad, h_theta, h_theta_quad, h_value, h_value_quad, ShiftSample};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn away_from_poles(p: f64) -> bool {
    p.sin().abs() > 1e-2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn half_turn_periodic(f in arb_afunction(), p in angle(), t in angle()) {
        prop_assert!((h_value(&f, p + PI, t) - h_value(&f, p, t)).abs() < 1e-9);
    }

    #[test]
    fn reflection_flips_sign(f in arb_afunction(), p in angle(), t in angle()) {
        prop_assert!((h_value(&f, -p, t + PI) + h_value(&f, p, t)).abs() < 1e-9);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_form_matches_integral(f in arb_afunction(), p in 0.05..PI - 0.05, t in angle()) {
        let oracle = common::h_oracle(&f, p, t);
        prop_assert!((h_value(&f, p, t) - oracle).abs() < 1e-9, "{} vs {oracle}", h_value(&f, p, t));
    }

    #[test]
    fn quadrature_route_agrees(f in arb_afunction(), p in angle(), t in angle()) {
        prop_assert!((h_value_quad(&f, p, t).unwrap() - h_value(&f, p, t)).abs() < 1e-9);
        prop_assert!((h_theta_quad(&f, p, t).unwrap() - h_theta(&f, p, t)).abs() < 1e-9);
        prop_assert!((h_phi_quad(&f, p, t).unwrap() - h_phi(&f, p, t)).abs() < 1e-8);
    }

    #[test]
    fn derivatives_match_central_differences(f in arb_afunction(), p in angle(), t in angle()) {
        prop_assume!(away_from_poles(p));
        prop_assume!((t / PI - (t / PI).round()).abs() > 1e-3);
        let e = 1e-5;
        let dp = (h_value(&f, p + e, t) - h_value(&f, p - e, t)) / (2.0 * e);
        let dt = (h_value(&f, p, t + e) - h_value(&f, p, t - e)) / (2.0 * e);
        prop_assert!((h_phi(&f, p, t) - dp).abs() < 1e-6);
        prop_assert!((h_theta(&f, p, t) - dt).abs() < 1e-6);
    }

    #[test]
    fn vanishes_at_poles(f in arb_afunction(), t in angle(), n in -3i32..4) {
        let p = n as f64 * PI;
        prop_assert!(h_value(&f, p, t).abs() < 1e-12);
        prop_assert!(h_theta(&f, p, t).abs() < 1e-12);
    }
}

proptest! {
    // sup norms cost a dense scan, so each function is probed at many points
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn a_priori_bounds(f in arb_afunction(), seed in any::<u64>()) {
        let n = f.norms();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..500 {
            let (p, t) = (rng.gen_range(-2.0 * PI..2.0 * PI), rng.gen_range(-2.0 * PI..2.0 * PI));
            let s = p.sin().abs();
            prop_assert!(h_value(&f, p, t).abs() <= n.a_theta * s + 1e-9);
            prop_assert!(h_phi(&f, p, t).abs() <= n.a_theta + 1e-9);
            prop_assert!(h_theta(&f, p, t).abs() <= n.a_thetatheta * s + 1e-9);
            prop_assert!(ShiftSample::new(&f, p, t).bound_excess(&n) <= 1e-9);
        }
    }
}

#[test]
fn single_term_closed_form() {
    let f = common::gallery_functions().remove(1).1;
    // h = −¼ sin 2θ sin 2φ for a = −cos²θ cos 3φ
    let mut rng = 12345u64;
    let mut next = || {
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (rng >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..10_000 {
        let (p, t) = (2.0 * PI * next(), PI * next());
        assert!((h_value(&f, p, t) + 0.25 * (2.0 * t).sin() * (2.0 * p).sin()).abs() < 1e-9);
        assert!((h_phi(&f, p, t) + 0.5 * (2.0 * t).sin() * (2.0 * p).cos()).abs() < 1e-8);
        assert!((h_theta(&f, p, t) + 0.5 * (2.0 * t).cos() * (2.0 * p).sin()).abs() < 1e-8);
    }
    assert!((h_value(&f, PI / 4.0, PI / 4.0) + 0.25).abs() < 1e-12);
    assert!((h_phi(&f, 0.0, PI / 4.0) + 0.5).abs() < 1e-12);
    assert!((h_theta(&f, PI / 4.0, 0.0) + 0.5).abs() < 1e-12);
}

#[test]
fn theta_independent_function_has_no_shift() {
    let f = orbiform::afunc::AFunction::new(vec![orbiform::afunc::ATerm::new(
        0.3,
        orbiform::afunc::ThetaWeight::One,
        orbiform::afunc::PhiHarmonic::cos(5),
    )
    .unwrap()])
    .unwrap();
    for (p, t) in [(0.3, 0.1), (2.0, 1.0), (4.0, 2.5)] {
        assert_eq!(h_value(&f, p, t), 0.0);
        assert_eq!(h_theta(&f, p, t), 0.0);
        assert_eq!(h_phi(&f, p, t), 0.0);
    }
}

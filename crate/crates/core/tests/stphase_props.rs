use proptest::prelude::*;
use tsunami_core::stphase::{prefactor, DEFAULT_APPLICABILITY};
use tsunami_core::{
    asymptotic_envelope, find_stationary_point, sqrt_tau, BedMotion, BedShape, Error, NondimParams, Ramp,
};

fn bump() -> BedMotion {
    BedMotion::new(
        BedShape::SmoothBump {
            amplitude: 1.0,
            power: 3,
        },
        1.0,
        Ramp::smooth(0.5).unwrap(),
    )
    .unwrap()
}

#[test]
fn residual_on_random_rays() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let delta = rng.gen_range(0.005..2.0);
        let c = rng.gen_range(-0.5..0.5);
        let nd = NondimParams::irrotational(delta, c);
        let offset: f64 = rng.gen_range(-0.999..0.999);
        if offset.abs() < 1e-3 {
            continue;
        }
        let sp = find_stationary_point(c - offset, &nd).unwrap();
        assert!(sp.residual <= 1e-12);
        assert_eq!(sp.xi0 > 0.0, offset > 0.0);
    }
}

#[test]
fn inversion_is_monotone() {
    let nd = NondimParams::irrotational(0.1, 0.05);
    for side in [-1.0, 1.0] {
        let roots: Vec<f64> = (1..100)
            .map(|i| {
                let offset = side * i as f64 / 100.0;
                find_stationary_point(nd.drift - offset, &nd).unwrap().xi0
            })
            .collect();
        for w in roots.windows(2) {
            // larger |C - X| means a smaller |xi0|
            assert!(w[1].abs() < w[0].abs());
            assert_eq!(w[0].signum(), side);
        }
    }
}

#[test]
fn phase_slope_changes_sign_at_the_root() {
    let nd = NondimParams::irrotational(0.3, 0.1);
    for &ray in &[-0.6, -0.2, 0.3, 0.8] {
        let sp = find_stationary_point(ray, &nd).unwrap();
        let phase = |xi: f64| sqrt_tau(xi, nd.delta) + (ray - nd.drift) * xi;
        let slope = |xi: f64| {
            let h = 1e-5 * xi.abs().max(1.0);
            (phase(xi + h) - phase(xi - h)) / (2.0 * h)
        };
        let eps = 1e-2 * sp.xi0.abs();
        let (left, right) = (slope(sp.xi0 - eps), slope(sp.xi0 + eps));
        assert!(left * right < 0.0, "ray {ray}: {left} {right}");
    }
}

#[test]
fn no_root_outside_the_cone() {
    let nd = NondimParams::irrotational(0.2, 0.1);
    for ray in [0.1 - 1.5, 0.1, 1.1, 2.0] {
        assert!(matches!(find_stationary_point(ray, &nd), Err(Error::NoStationaryPoint { .. })));
    }
}

#[test]
fn scaled_root_and_curvature_are_stable_as_depth_ratio_shrinks() {
    for &offset in &[-0.9, -0.5, -0.1] {
        let ray = -offset; // C = 0, X - C = offset
        let points: Vec<_> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&d| (d, find_stationary_point(ray, &NondimParams::irrotational(d, 0.0)).unwrap()))
            .collect();
        let z: Vec<f64> = points.iter().map(|(d, sp)| d * sp.xi0).collect();
        let k: Vec<f64> = points.iter().map(|(d, sp)| sp.d2_at.abs() / d).collect();
        let spread = |v: &[f64]| {
            let max = v.iter().cloned().fold(f64::MIN, f64::max);
            let min = v.iter().cloned().fold(f64::MAX, f64::min);
            (max - min) / min.abs()
        };
        assert!(spread(&z) <= 0.10, "{z:?}");
        assert!(spread(&k) <= 0.20, "{k:?}");
    }
}

#[test]
fn envelope_decays_like_inverse_root_time() {
    let nd = NondimParams::irrotational(0.5, 0.0);
    let bed = bump();
    for &ray in &[-0.9, -0.6, -0.3, 0.4] {
        let t = 2000.0;
        let a = asymptotic_envelope(ray * t, t, &bed, &nd, DEFAULT_APPLICABILITY).unwrap();
        let b = asymptotic_envelope(ray * 4.0 * t, 4.0 * t, &bed, &nd, DEFAULT_APPLICABILITY).unwrap();
        assert!((a / b - 2.0).abs() <= 1e-12, "ray {ray}: {}", a / b);
    }
}

proptest! {
    #[test]
    fn prefactor_is_positive_and_finite(delta in 0.005f64..3.0, c in -0.5f64..0.5,
                                        offset in -0.999f64..0.999, t in 1e-3f64..1e6) {
        // Below |X - C| ~ 0.05 the root sits so far out that sech(delta xi0)
        // underflows double precision.
        prop_assume!(offset.abs() > 0.05);
        let nd = NondimParams::irrotational(delta, c);
        let sp = find_stationary_point(c - offset, &nd).unwrap();
        let p = prefactor(&sp, &nd, t);
        prop_assert!(p > 0.0 && p.is_finite());
        prop_assert!(sp.residual <= 1e-12);
    }
}

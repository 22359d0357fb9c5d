use proptest::prelude::*;
use tsunami_core::convergence::fit_order;
use tsunami_core::quad::{integrate, AdaptiveOptions};
use tsunami_core::shallow::duhamel_surface_with;
use tsunami_core::{
    duhamel_surface, instant_thrust_surface, wavefront_bounds, BedMotion, BedShape, NondimParams, Ramp,
    WaveStructure,
};

fn cosine(t0: f64) -> BedMotion {
    BedMotion::new(BedShape::RaisedCosine { amplitude: 1.0 }, 1.0, Ramp::smooth(t0).unwrap()).unwrap()
}

fn opts(tol: f64) -> AdaptiveOptions {
    AdaptiveOptions {
        abs_tol: tol,
        rel_tol: 1e-13,
        max_segments: 50_000,
    }
}

/// f = 1/2 integral_0^t integral_{|r| < t - s} (S^2 h)(x - C (t - s) + r, s) dr ds,
/// the wave-equation Duhamel formula in the frame moving with the drift.
fn double_integral(bed: &BedMotion, c: f64, x: f64, t: f64) -> f64 {
    let ramp = bed.ramp;
    let forcing = |y: f64, s: f64| {
        ramp.derivative(2, s) * bed.profile(0, y)
            + 2.0 * c * ramp.derivative(1, s) * bed.profile(1, y)
            + c * c * ramp.value(s) * bed.profile(2, y)
    };
    let outer = |s: f64| {
        let lag = t - s;
        let centre = x - c * lag;
        let mut breaks = vec![-lag, lag];
        for p in bed.breakpoints() {
            let r = p - centre;
            if r > -lag && r < lag {
                breaks.push(r);
            }
        }
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        integrate(|r| forcing(centre + r, s), &breaks, 1, &opts(1e-12)).unwrap().value
    };
    let mut breaks = vec![0.0, ramp.duration.min(t), t];
    // s at which the window edges x - C(t-s) +- (t-s) cross the source edges.
    for p in bed.breakpoints() {
        for speed in [1.0 - c, -(1.0 + c)] {
            let s = t - (p - x) / speed;
            if s > 0.0 && s < t {
                breaks.push(s);
            }
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    0.5 * integrate(outer, &breaks, 1, &opts(1e-11)).unwrap().value
}

#[test]
fn duhamel_matches_the_double_integral() {
    let bed = cosine(0.05);
    let nd = NondimParams::irrotational(0.02, 0.1);
    for &(x, t) in &[(3.3, 3.0), (0.2, 0.03), (-2.4, 3.0), (0.5, 1.0)] {
        let f = duhamel_surface(&bed, &nd, x, t).unwrap();
        let reference = double_integral(&bed, 0.1, x, t);
        assert!((f - reference).abs() <= 1e-6, "x={x} t={t}: {f} vs {reference}");
    }
}

#[test]
fn localization_on_random_points() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let bed = cosine(0.1);
    for &c in &[0.0, 0.05, 0.1, -0.2] {
        let nd = NondimParams::irrotational(0.02, c);
        for _ in 0..1000 {
            let t: f64 = rng.gen_range(1e-3..50.0);
            let (_, r) = wavefront_bounds(&bed, &nd, t).unwrap();
            let x = r + rng.gen_range(0.0..20.0);
            let x = if rng.gen_bool(0.5) { x } else { -x };
            assert_eq!(instant_thrust_surface(&bed, &nd, x, t).unwrap(), 0.0);
        }
    }
}

#[test]
fn mass_is_conserved() {
    let bed = cosine(0.1);
    let total = 1.0; // integral of (1 + cos(pi x)) / 2 over [-1, 1]
    for &c in &[0.0, 0.1, 0.3] {
        let nd = NondimParams::irrotational(0.02, c);
        for &t in &[0.3, 2.0, 7.5] {
            let (lo, hi) = wavefront_bounds(&bed, &nd, t).unwrap();
            let w = WaveStructure::new(c).unwrap();
            let mut breaks = vec![lo, -1.0, 1.0, hi];
            for centre in [t * w.right_speed, -t * w.left_speed] {
                breaks.extend([centre - 1.0, centre + 1.0]);
            }
            breaks.retain(|b| *b >= lo && *b <= hi);
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            breaks.dedup();
            let mass = integrate(|x| instant_thrust_surface(&bed, &nd, x, t).unwrap(), &breaks, 1, &opts(1e-12))
                .unwrap()
                .value;
            assert!((mass - total).abs() <= 1e-9, "c={c} t={t}: {mass}");
        }
    }
}

#[test]
fn ramped_mass_follows_the_ramp() {
    let bed = cosine(0.5);
    let nd = NondimParams::irrotational(0.02, 0.1);
    for &t in &[0.25, 3.0] {
        let (lo, hi) = wavefront_bounds(&bed, &nd, t).unwrap();
        let mass = integrate(|x| duhamel_surface(&bed, &nd, x, t).unwrap(), &[lo, 0.0, hi], 16, &opts(1e-9))
            .unwrap()
            .value;
        assert!((mass - bed.ramp.value(t)).abs() < 1e-8, "t={t}: {mass}");
    }
}

#[test]
fn right_wave_travels_unchanged() {
    let bed = cosine(0.1);
    for &c in &[0.0, 0.05, 0.1] {
        let nd = NondimParams::irrotational(0.02, c);
        let w = WaveStructure::new(c).unwrap();
        let t = 4.0;
        for u in (0..=40).map(|i| -1.0 + 0.05 * i as f64) {
            let x = t * w.right_speed + u;
            let at = |shift: f64| {
                let xs = x + shift * w.right_speed;
                instant_thrust_surface(&bed, &nd, xs, t + shift).unwrap() - w.stationary_coeff * bed.profile(0, xs)
            };
            let base = at(0.0);
            for &shift in &[0.5, 3.0, 17.0] {
                assert!((at(shift) - base).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn smooth_ramp_approaches_instant_thrust() {
    let nd = NondimParams::irrotational(0.02, 0.1);
    let t = 3.0;
    let xs: Vec<f64> = (0..=300).map(|i| -5.0 + 10.0 * i as f64 / 300.0).collect();
    let durations = [0.1, 0.05, 0.025];
    let gaps: Vec<f64> = durations
        .iter()
        .map(|&t0| {
            let bed = cosine(t0);
            xs.iter()
                .map(|&x| {
                    let d = duhamel_surface_with(&bed, &nd, x, t, 1e-12).unwrap();
                    (d - instant_thrust_surface(&bed, &nd, x, t).unwrap()).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    let order = fit_order(&durations, &gaps).unwrap();
    assert!(order > 0.9, "order {order}, gaps {gaps:?}");
    let k = gaps.iter().zip(&durations).map(|(g, d)| g / d).fold(0.0, f64::max);
    for (g, d) in gaps.iter().zip(&durations) {
        assert!(*g <= k * d);
    }
}

#[test]
fn faster_right_wave_is_lower() {
    let ladder: Vec<WaveStructure> = (0..=10).map(|i| WaveStructure::new(0.05 * i as f64).unwrap()).collect();
    for w in ladder.windows(2) {
        assert!(w[1].right_scale < w[0].right_scale);
        assert!(w[1].right_speed > w[0].right_speed);
    }
}

proptest! {
    #[test]
    fn coefficient_identity(c in -0.95f64..0.95) {
        let w = WaveStructure::new(c).unwrap();
        prop_assert!((w.coefficient_sum() - 1.0).abs() <= 1e-14);
        prop_assert!((w.stationary_coeff + 1.0 / (1.0 - c * c) - 1.0).abs() <= 1e-14);
        if c > 0.0 {
            prop_assert!(w.right_speed > w.left_speed);
        }
    }

    #[test]
    fn instant_thrust_vanishes_outside_the_front(c in -0.9f64..0.9, t in 1e-3f64..100.0, gap in 0.0f64..50.0) {
        let bed = cosine(0.1);
        let nd = NondimParams::irrotational(0.02, c);
        let (lo, hi) = wavefront_bounds(&bed, &nd, t).unwrap();
        prop_assert_eq!(instant_thrust_surface(&bed, &nd, hi + gap, t).unwrap(), 0.0);
        prop_assert_eq!(instant_thrust_surface(&bed, &nd, lo - gap, t).unwrap(), 0.0);
    }
}

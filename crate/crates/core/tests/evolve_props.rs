use proptest::prelude::*;
use tsunami_core::convergence::fit_order;
use tsunami_core::{
    duhamel_surface, evolve_surface, oracle_direct, BedMotion, BedShape, EvolveOptions, NondimParams,
    OracleOptions, Ramp, SpectralGrid,
};

fn bed(shape: BedShape, t0: f64) -> BedMotion {
    BedMotion::new(shape, 1.0, Ramp::smooth(t0).unwrap()).unwrap()
}

fn bump(t0: f64) -> BedMotion {
    bed(
        BedShape::SmoothBump {
            amplitude: 1.0,
            power: 3,
        },
        t0,
    )
}

#[test]
fn doubling_the_grid_changes_nothing() {
    let nd = NondimParams::irrotational(0.05, 0.02);
    let b = bump(0.5);
    let times = [0.25, 1.0, 4.0];
    let coarse = evolve_surface(&b, &nd, &SpectralGrid::new(8.0, 1024).unwrap(), &times, &EvolveOptions::default())
        .unwrap();
    let fine = evolve_surface(&b, &nd, &SpectralGrid::new(8.0, 2048).unwrap(), &times, &EvolveOptions::default())
        .unwrap();
    let mut diff = 0.0f64;
    for i in 0..times.len() {
        for j in 0..1024 {
            assert_eq!(coarse.x[j], fine.x[2 * j]);
            diff = diff.max((coarse.f[i][j] - fine.f[i][2 * j]).abs());
        }
    }
    assert!(diff <= 1e-8, "{diff:e}");
}

#[test]
fn far_field_is_quiet_early_on() {
    let nd = NondimParams::irrotational(0.1, 0.0);
    let f = oracle_direct(6.0, 0.5, &bump(0.5), &nd, &OracleOptions::default()).unwrap();
    assert!(f.abs() <= 1e-8, "{f:e}");
}

#[test]
fn spectral_matches_oracle_with_weak_drift() {
    let nd = NondimParams::irrotational(0.02, 0.01);
    let b = bump(0.5);
    let grid = SpectralGrid::new(8.0, 2048).unwrap();
    let s = evolve_surface(&b, &nd, &grid, &[5.0], &EvolveOptions::default()).unwrap();
    let peak = s.max_abs();
    for &j in &[1024 + 640, 1024 + 100] {
        let reference = oracle_direct(s.x[j], 5.0, &b, &nd, &OracleOptions::default()).unwrap();
        assert!((s.f[0][j] - reference).abs() <= 1e-6 * peak);
    }
}

#[test]
fn shallow_limit_is_second_order() {
    let b = bump(0.5);
    let grid = SpectralGrid::new(12.0, 4096).unwrap();
    let t = 5.0;
    let deltas = [0.05, 0.025, 0.0125];
    let errors: Vec<f64> = deltas
        .iter()
        .map(|&d| {
            let nd = NondimParams::irrotational(d, 0.0);
            let s = evolve_surface(&b, &nd, &grid, &[t], &EvolveOptions::default()).unwrap();
            s.x.iter()
                .zip(&s.f[0])
                .map(|(&x, &f)| (f - duhamel_surface(&b, &nd, x, t).unwrap()).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let order = fit_order(&deltas, &errors).unwrap();
    assert!(order >= 1.8, "order {order}, errors {errors:?}");
}

#[test]
fn odd_bed_gives_odd_surface() {
    let nd = NondimParams::irrotational(0.2, 0.0);
    let grid = SpectralGrid::new(16.0, 512).unwrap();
    let s = evolve_surface(&bed(BedShape::Dipole { amplitude: 1.0 }, 0.3), &nd, &grid, &[0.1, 2.5, 7.0], &EvolveOptions::default())
        .unwrap();
    for row in &s.f {
        for j in 1..grid.n {
            assert!((row[j] + row[grid.n - j]).abs() <= 1e-10);
        }
        let mass: f64 = row.iter().sum::<f64>() * grid.spacing();
        assert!(mass.abs() <= 1e-12);
    }
}

fn shapes() -> Vec<BedShape> {
    vec![
        BedShape::RaisedCosine { amplitude: 1.0 },
        BedShape::SmoothBump {
            amplitude: 0.6,
            power: 4,
        },
        BedShape::Dipole { amplitude: 1.0 },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn real_and_mass_conserving(delta in 0.02f64..0.6, c in -0.4f64..0.4, t0 in 0.05f64..1.5,
                                shape in 0usize..3, t1 in 0.0f64..1.0, t2 in 1.0f64..6.0) {
        let b = bed(shapes()[shape].clone(), t0);
        let nd = NondimParams::irrotational(delta, c);
        let grid = SpectralGrid::new(24.0, 2048).unwrap();
        let times = [t1 * t0, t2];
        let s = evolve_surface(&b, &nd, &grid, &times, &EvolveOptions::default()).unwrap();
        prop_assert!(s.meta.imag_residue <= 1e-10);
        let total: f64 = (0..=4000)
            .map(|j| {
                let x = -1.0 + j as f64 / 2000.0;
                let w = if j == 0 || j == 4000 { 0.5 } else { 1.0 };
                w * b.profile(0, x)
            })
            .sum::<f64>() / 2000.0;
        for (i, &t) in times.iter().enumerate() {
            let mass: f64 = s.f[i].iter().sum::<f64>() * grid.spacing();
            let expect = (2.0 * std::f64::consts::PI).sqrt() * b.spectrum(0.0).re * b.ramp.value(t);
            prop_assert!((mass - expect).abs() <= 1e-10 * expect.abs().max(1e-300) + 1e-14);
            // independent trapezoid check of the bed integral
            prop_assert!((expect - total * b.ramp.value(t)).abs() <= 1e-6);
        }
    }
}

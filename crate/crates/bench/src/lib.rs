//! Fixed workloads shared by the benchmarks.

use tsunami_core::{BedMotion, BedShape, NondimParams, Ramp, SpectralGrid};

/// Open-sea depth ratio with a weak drift.
pub fn open_sea() -> NondimParams {
    NondimParams::irrotational(0.02, 0.01)
}

/// Cubic bump of unit half-width raised over half a time unit.
pub fn bump() -> BedMotion {
    BedMotion::new(
        BedShape::SmoothBump {
            amplitude: 1.0,
            power: 3,
        },
        1.0,
        Ramp::smooth(0.5).expect("positive duration"),
    )
    .expect("valid bed")
}

pub fn grid(points: usize) -> SpectralGrid {
    SpectralGrid::new(8.0, points).expect("power-of-two grid")
}

/// Rays spread over the open cone |X - C| < 1.
pub fn rays(nd: &NondimParams, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| nd.drift - 0.98 + 1.96 * i as f64 / (count + 1) as f64)
        .filter(|r| (r - nd.drift).abs() > 1e-3)
        .collect()
}

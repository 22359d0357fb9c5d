//! Closed-form shallow-water (delta -> 0) surface: the Duhamel integral for a
//! smooth ramp and the three-term formula for an instantaneous uplift.

use rayon::prelude::*;

use crate::bed::BedMotion;
use crate::error::{Error, Result};
use crate::nondim::NondimParams;
use crate::quad::{integrate, AdaptiveOptions};
use crate::series::{SeriesMeta, SolverTag, SurfaceSeries};

/// Coefficients and speeds of the instantaneous-thrust solution for drift C.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveStructure {
    pub drift: f64,
    /// C^2 / (C^2 - 1), weight of the part that stays on the source.
    pub stationary_coeff: f64,
    pub right_speed: f64,
    pub left_speed: f64,
    /// 1 / (2 (1 + C))
    pub right_scale: f64,
    /// 1 / (2 (1 - C))
    pub left_scale: f64,
}

impl WaveStructure {
    pub fn new(drift: f64) -> Result<Self> {
        if !(drift.abs() < 1.0) {
            return Err(Error::UnitCurrent { c: drift });
        }
        let c = drift;
        Ok(Self {
            drift,
            stationary_coeff: c * c / (c * c - 1.0),
            right_speed: 1.0 + c,
            left_speed: 1.0 - c,
            right_scale: 0.5 / (1.0 + c),
            left_scale: 0.5 / (1.0 - c),
        })
    }

    /// Half-width of the region that can be disturbed by time t.
    pub fn support_radius(&self, half_width: f64, t: f64) -> f64 {
        half_width + t.max(0.0) * (1.0 + self.drift.abs())
    }

    /// stationary_coeff + right_scale + left_scale; equals 1.
    pub fn coefficient_sum(&self) -> f64 {
        self.stationary_coeff + self.right_scale + self.left_scale
    }
}

fn source_radius(bed: &BedMotion) -> f64 {
    let (lo, hi) = bed.support();
    lo.abs().max(hi.abs())
}

/// Interval outside which the instantaneous-thrust surface vanishes.
pub fn wavefront_bounds(bed: &BedMotion, nd: &NondimParams, t: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("time must be non-negative, got {t}")));
    }
    let r = WaveStructure::new(nd.drift)?.support_radius(source_radius(bed), t);
    Ok((-r, r))
}

/// f(x, t) for a Heaviside uplift of the profile of `bed`.
pub fn instant_thrust_surface(bed: &BedMotion, nd: &NondimParams, x: f64, t: f64) -> Result<f64> {
    let w = WaveStructure::new(nd.drift)?;
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "instantaneous thrust is defined for t > 0, got {t}"
        )));
    }
    if x.abs() >= w.support_radius(source_radius(bed), t) {
        return Ok(0.0);
    }
    let b = |y: f64| bed.profile(0, y);
    Ok(w.stationary_coeff * b(x)
        + w.right_scale * b(x - t * w.right_speed)
        + w.left_scale * b(x + t * w.left_speed))
}

/// Duhamel integral for the smooth ramp, evaluated to `abs_tol`.
pub fn duhamel_surface_with(
    bed: &BedMotion,
    nd: &NondimParams,
    x: f64,
    t: f64,
    abs_tol: f64,
) -> Result<f64> {
    let w = WaveStructure::new(nd.drift)?;
    if bed.is_instantaneous() {
        return Err(Error::InstantaneousRamp("use the instantaneous-thrust formula"));
    }
    if t <= 0.0 {
        return Ok(0.0);
    }
    let ramp = &bed.ramp;
    let integrand = |s: f64| {
        let lag = t - s;
        ramp.value(s) * (bed.profile(1, x + lag * w.left_speed) - bed.profile(1, x - lag * w.right_speed))
    };
    // Kinks where either argument crosses a profile breakpoint, and the end of the quake.
    let mut breaks = vec![0.0, t];
    if ramp.duration < t {
        breaks.push(ramp.duration);
    }
    for p in bed.breakpoints() {
        breaks.push(t - (p - x) / w.left_speed);
        breaks.push(t - (x - p) / w.right_speed);
    }
    breaks.retain(|s| (0.0..=t).contains(s));
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let opts = AdaptiveOptions {
        abs_tol,
        rel_tol: 1e-14,
        max_segments: 20_000,
    };
    let r = integrate(integrand, &breaks, 1, &opts)?;
    Ok(ramp.value(t) * bed.profile(0, x) + 0.5 * r.value)
}

/// Duhamel integral at tolerance 1e-10.
pub fn duhamel_surface(bed: &BedMotion, nd: &NondimParams, x: f64, t: f64) -> Result<f64> {
    duhamel_surface_with(bed, nd, x, t, 1e-10)
}

/// Duhamel surface sampled at `xs` for each time.
pub fn duhamel_series(bed: &BedMotion, nd: &NondimParams, xs: &[f64], times: &[f64]) -> Result<SurfaceSeries> {
    let f = times
        .iter()
        .map(|&t| xs.par_iter().map(|&x| duhamel_surface(bed, nd, x, t)).collect())
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(SurfaceSeries {
        times: times.to_vec(),
        x: xs.to_vec(),
        f,
        meta: SeriesMeta::new(SolverTag::ShallowDuhamel, *nd, bed.description()),
    })
}

/// Instantaneous-thrust surface sampled at `xs` for each time.
pub fn instant_series(bed: &BedMotion, nd: &NondimParams, xs: &[f64], times: &[f64]) -> Result<SurfaceSeries> {
    let f = times
        .iter()
        .map(|&t| xs.iter().map(|&x| instant_thrust_surface(bed, nd, x, t)).collect())
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(SurfaceSeries {
        times: times.to_vec(),
        x: xs.to_vec(),
        f,
        meta: SeriesMeta::new(SolverTag::ShallowInstant, *nd, bed.instantaneous().description()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bed::{BedShape, Ramp};

    fn cosine(t0: f64) -> BedMotion {
        BedMotion::new(BedShape::RaisedCosine { amplitude: 1.0 }, 1.0, Ramp::smooth(t0).unwrap()).unwrap()
    }

    #[test]
    fn coefficients_sum_to_one() {
        for &c in &[0.0, 0.05, 0.1, -0.3, 0.9] {
            let w = WaveStructure::new(c).unwrap();
            assert!((w.coefficient_sum() - 1.0).abs() <= 1e-14);
        }
        assert!(matches!(WaveStructure::new(1.0), Err(Error::UnitCurrent { .. })));
    }

    #[test]
    fn peaks_at_drift_point_one() {
        let nd = NondimParams::irrotational(0.02, 0.1);
        let bed = cosine(0.1);
        let t = 10.0;
        let right = instant_thrust_surface(&bed, &nd, 1.1 * t, t).unwrap();
        let left = instant_thrust_surface(&bed, &nd, -0.9 * t, t).unwrap();
        assert!((right - 1.0 / 2.2).abs() < 1e-12);
        assert!((left - 1.0 / 1.8).abs() < 1e-12);
        let w = WaveStructure::new(0.1).unwrap();
        assert!((w.stationary_coeff + 0.010101).abs() < 1e-6);
    }

    #[test]
    fn wavefront_examples() {
        let bed = cosine(0.1);
        let still = NondimParams::irrotational(0.02, 0.0);
        assert_eq!(wavefront_bounds(&bed, &still, 0.0).unwrap(), (-1.0, 1.0));
        assert_eq!(wavefront_bounds(&bed, &still, 10.0).unwrap(), (-11.0, 11.0));
        let drift = NondimParams::irrotational(0.02, 0.1);
        let (lo, hi) = wavefront_bounds(&bed, &drift, 10.0).unwrap();
        assert!((hi - 12.0).abs() < 1e-12 && (lo + 12.0).abs() < 1e-12);
        assert_eq!(instant_thrust_surface(&bed, &drift, 12.01, 10.0).unwrap(), 0.0);
        assert_eq!(instant_thrust_surface(&bed, &drift, -12.01, 10.0).unwrap(), 0.0);
    }

    #[test]
    fn small_time_recovers_the_bed() {
        let nd = NondimParams::irrotational(0.02, 0.1);
        let bed = cosine(0.1);
        for &x in &[-0.7, 0.0, 0.4] {
            let f = instant_thrust_surface(&bed, &nd, x, 1e-9).unwrap();
            assert!((f - bed.profile(0, x)).abs() < 1e-8);
        }
    }

    #[test]
    fn duhamel_before_and_long_after() {
        let nd = NondimParams::irrotational(0.02, 0.0);
        let bed = cosine(0.01);
        assert_eq!(duhamel_surface(&bed, &nd, 0.3, -1.0).unwrap(), 0.0);
        // Short ramp: close to d'Alembert with an O(t0) lag.
        let t = 6.0;
        for &x in &[-6.0, -5.5, 5.2, 6.3] {
            let f = duhamel_surface(&bed, &nd, x, t).unwrap();
            let dalembert = 0.5 * (bed.profile(0, x - t) + bed.profile(0, x + t));
            assert!((f - dalembert).abs() < 0.02, "x={x}: {f} vs {dalembert}");
        }
    }
}

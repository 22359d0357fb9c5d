//! Large-time stationary-phase approximation of the surface along rays x = X t.
//!
//! The total phase sqrt(tau(xi)) + (X - C) xi is stationary where
//! d/dxi sqrt(tau) = C - X. That derivative is odd in xi and strictly
//! decreasing in |xi| from 1 to 0, so a root exists exactly when
//! 0 < |C - X| < 1, and it has the sign of C - X.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::bed::BedMotion;
use crate::error::{Error, Result};
use crate::kernel::{sech, sqrt_tau_derivs};
use crate::nondim::{NondimParams, PhysicalParams};

/// t |d2| below which the approximation is rejected.
pub const DEFAULT_APPLICABILITY: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    /// Ray slope x / t.
    pub ray: f64,
    pub xi0: f64,
    /// sqrt(tau(xi0)) - C xi0
    pub omega0: f64,
    pub tau0: f64,
    /// d^2/dxi^2 sqrt(tau) at xi0 (always negative).
    pub d2_at: f64,
    /// |d/dxi sqrt(tau)(xi0) + X - C|
    pub residual: f64,
}

impl StationaryPoint {
    pub fn applicability(&self, t: f64) -> f64 {
        t * self.d2_at.abs()
    }

    /// sqrt(tau(xi0)) + (X - C) xi0, the phase per unit time.
    pub fn phase_rate(&self, nd: &NondimParams) -> f64 {
        self.tau0.sqrt() + (self.ray - nd.drift) * self.xi0
    }
}

/// Solves d/dxi sqrt(tau)(xi0) = C - X by bisection with a secant polish.
pub fn find_stationary_point(ray: f64, nd: &NondimParams) -> Result<StationaryPoint> {
    nd.require_positive_delta()?;
    let offset = nd.drift - ray;
    if !(offset.abs() < 1.0) || offset == 0.0 {
        return Err(Error::NoStationaryPoint { offset: -offset });
    }
    let target = offset.abs();
    let delta = nd.delta;
    let g = |xi: f64| sqrt_tau_derivs(xi, delta).d1 - target;

    let mut lo = 1e-12;
    let mut hi = 1.0 / delta;
    let mut grown = 0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        grown += 1;
        if grown > 200 {
            return Err(Error::RootFinding(format!("no bracket for X - C = {}", -offset)));
        }
    }
    if g(lo) < 0.0 {
        return Err(Error::RootFinding(format!("offset {target} too close to 1")));
    }
    // g is decreasing: g(lo) >= 0 >= g(hi).
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-8 * hi {
            break;
        }
    }
    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = (g(a), g(b));
    let mut best = if ga.abs() < gb.abs() { a } else { b };
    for _ in 0..60 {
        let gbest = g(best);
        if gbest.abs() <= 1e-15 || gb == ga {
            break;
        }
        let mut next = b - gb * (b - a) / (gb - ga);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let gn = g(next);
        if gn > 0.0 {
            lo = next;
        } else {
            hi = next;
        }
        a = b;
        ga = gb;
        b = next;
        gb = gn;
        if gn.abs() < gbest.abs() {
            best = next;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    let xi0 = best.copysign(offset);
    let sample = sqrt_tau_derivs(xi0, delta);
    let residual = (sample.d1 + ray - nd.drift).abs();
    if residual > 1e-12 {
        return Err(Error::RootFinding(format!(
            "residual {residual:e} at xi0 = {xi0} exceeds 1e-12"
        )));
    }
    Ok(StationaryPoint {
        ray,
        xi0,
        omega0: sample.sqrt_tau - nd.drift * xi0,
        tau0: sample.tau,
        d2_at: sample.d2,
        residual,
    })
}

/// sqrt(2 pi tau0) / (cosh(delta xi0) sqrt(t |d2|)).
pub fn prefactor(sp: &StationaryPoint, nd: &NondimParams, t: f64) -> f64 {
    (2.0 * PI * sp.tau0).sqrt() * sech(nd.delta * sp.xi0) / (t * sp.d2_at.abs()).sqrt()
}

fn checked_point(x: f64, t: f64, bed: &BedMotion, nd: &NondimParams, threshold: f64) -> Result<StationaryPoint> {
    if nd.alpha != 0.0 {
        return Err(Error::VorticityUnsupported { alpha: nd.alpha });
    }
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("stationary phase needs t > 0, got {t}")));
    }
    if bed.is_instantaneous() {
        return Err(Error::InstantaneousRamp("the space-time transform needs a smooth ramp"));
    }
    let sp = find_stationary_point(x / t, nd)?;
    let measure = sp.applicability(t);
    if measure < threshold {
        return Err(Error::NotApplicable { measure, threshold });
    }
    Ok(sp)
}

/// Leading-order f(x, t); rejected when t |d2| < `threshold`.
pub fn asymptotic_surface(x: f64, t: f64, bed: &BedMotion, nd: &NondimParams, threshold: f64) -> Result<f64> {
    let sp = checked_point(x, t, bed, nd, threshold)?;
    let h = bed.spacetime_transform(sp.xi0, sp.omega0)?;
    let phase = Complex64::from_polar(1.0, t * sp.phase_rate(nd) - FRAC_PI_4);
    Ok(-prefactor(&sp, nd, t) * (phase * h).im)
}

/// Local amplitude of [`asymptotic_surface`]: the same expression with the
/// oscillating factor replaced by its modulus.
pub fn asymptotic_envelope(x: f64, t: f64, bed: &BedMotion, nd: &NondimParams, threshold: f64) -> Result<f64> {
    let sp = checked_point(x, t, bed, nd, threshold)?;
    let h = bed.spacetime_transform(sp.xi0, sp.omega0)?;
    Ok(prefactor(&sp, nd, t) * h.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// t |d2| at or above the threshold.
    Applicable,
    /// Below the threshold but past the relaxed time 1 / delta.
    Dubious,
    NotApplicable,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Applicable => "applicable",
            Regime::Dubious => "DUBIOUS",
            Regime::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApplicabilityReport {
    pub t: f64,
    /// t |d2(xi0)|
    pub measure: f64,
    pub threshold: f64,
    pub regime: Regime,
    /// 1 / delta^2 (scaled time)
    pub strict_time: f64,
    /// 1 / delta (scaled time)
    pub relaxed_time: f64,
    /// Physical equivalents lambda t / sqrt(g d) [s].
    pub strict_time_physical: f64,
    pub relaxed_time_physical: f64,
}

pub fn applicability_report_with(
    t: f64,
    sp: &StationaryPoint,
    nd: &NondimParams,
    phys: &PhysicalParams,
    threshold: f64,
) -> ApplicabilityReport {
    let measure = sp.applicability(t);
    let strict_time = 1.0 / (nd.delta * nd.delta);
    let relaxed_time = 1.0 / nd.delta;
    let regime = if measure >= threshold {
        Regime::Applicable
    } else if t >= relaxed_time {
        Regime::Dubious
    } else {
        Regime::NotApplicable
    };
    let ts = phys.time_scale();
    ApplicabilityReport {
        t,
        measure,
        threshold,
        regime,
        strict_time,
        relaxed_time,
        strict_time_physical: strict_time * ts,
        relaxed_time_physical: relaxed_time * ts,
    }
}

pub fn applicability_report(
    t: f64,
    sp: &StationaryPoint,
    nd: &NondimParams,
    phys: &PhysicalParams,
) -> ApplicabilityReport {
    applicability_report_with(t, sp, nd, phys, DEFAULT_APPLICABILITY)
}

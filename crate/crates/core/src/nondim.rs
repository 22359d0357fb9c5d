//! Dimensional inputs, the dimensionless group that drives every formula,
//! and the maps between physical and scaled variables.

use crate::error::{Error, Result};
use crate::series::{SurfaceSeries, Units};

pub const STANDARD_GRAVITY: f64 = 9.81;

/// Dimensional description of sea, source and background current (SI units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Wave/bed amplitude scale a [m].
    pub amplitude: f64,
    /// Mean depth d [m].
    pub depth: f64,
    /// Typical wavelength lambda [m].
    pub wavelength: f64,
    /// Gravitational acceleration g [m/s^2].
    pub gravity: f64,
    /// Constant vorticity (shear) A [1/s].
    pub vorticity: f64,
    /// Current speed at the bed B [m/s].
    pub bed_current: f64,
    /// Source half-width [m].
    pub source_half_width: f64,
    /// Quake duration [s].
    pub quake_duration: f64,
}

impl PhysicalParams {
    /// Open-sea values: a = 1 m, d = 4 km, lambda = 200 km, still water,
    /// source half-width of one wavelength and a one-minute quake.
    pub fn open_sea() -> Self {
        Self {
            amplitude: 1.0,
            depth: 4000.0,
            wavelength: 200_000.0,
            gravity: STANDARD_GRAVITY,
            vorticity: 0.0,
            bed_current: 0.0,
            source_half_width: 200_000.0,
            quake_duration: 60.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("amplitude", self.amplitude),
            ("depth", self.depth),
            ("wavelength", self.wavelength),
            ("gravity", self.gravity),
            ("source_half_width", self.source_half_width),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        if !(self.quake_duration >= 0.0) || !self.quake_duration.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "quake_duration",
                value: self.quake_duration,
            });
        }
        if !self.vorticity.is_finite() || !self.bed_current.is_finite() {
            return Err(Error::InvalidArgument("current parameters must be finite".into()));
        }
        Ok(())
    }

    /// Long-wave speed sqrt(g d) [m/s].
    pub fn wave_speed(&self) -> f64 {
        (self.gravity * self.depth).sqrt()
    }

    /// Time scale lambda / sqrt(g d) [s].
    pub fn time_scale(&self) -> f64 {
        self.wavelength / self.wave_speed()
    }
}

/// The dimensionless group of the scaled, linearized system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NondimParams {
    /// a / d
    pub eps: f64,
    /// d / lambda
    pub delta: f64,
    /// A sqrt(d / g)
    pub alpha: f64,
    /// B / sqrt(g d)
    pub beta: f64,
    /// Surface drift alpha + beta.
    pub drift: f64,
}

impl NondimParams {
    /// Builds the group from its independent members; `drift` is always alpha + beta.
    pub fn new(eps: f64, delta: f64, alpha: f64, beta: f64) -> Self {
        Self {
            eps,
            delta,
            alpha,
            beta,
            drift: alpha + beta,
        }
    }

    /// Irrotational flow with uniform drift `c`.
    pub fn irrotational(delta: f64, c: f64) -> Self {
        Self::new(1e-4, delta, 0.0, c)
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub(crate) fn require_subcritical(&self) -> Result<()> {
        if self.drift.abs() < 1.0 {
            Ok(())
        } else {
            Err(Error::UnitCurrent { c: self.drift })
        }
    }

    pub(crate) fn require_positive_delta(&self) -> Result<()> {
        if self.delta > 0.0 && self.delta.is_finite() {
            Ok(())
        } else {
            Err(Error::NonPositiveParameter {
                name: "delta",
                value: self.delta,
            })
        }
    }
}

/// Dimensionless quantities derived from a physical scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derived {
    pub params: NondimParams,
    /// Source half-width in units of the wavelength.
    pub half_width: f64,
    /// Quake duration in units of lambda / sqrt(g d).
    pub duration: f64,
}

pub fn derive_nondim(phys: &PhysicalParams) -> Result<Derived> {
    phys.validate()?;
    let speed = phys.wave_speed();
    let alpha = phys.vorticity * (phys.depth / phys.gravity).sqrt();
    let beta = phys.bed_current / speed;
    Ok(Derived {
        params: NondimParams::new(
            phys.amplitude / phys.depth,
            phys.depth / phys.wavelength,
            alpha,
            beta,
        ),
        half_width: phys.source_half_width / phys.wavelength,
        duration: phys.quake_duration * speed / phys.wavelength,
    })
}

/// Maps a scaled series to physical variables: X = lambda x,
/// T = lambda t / sqrt(g d), F = a f.
pub fn to_physical(series: &SurfaceSeries, phys: &PhysicalParams) -> Result<SurfaceSeries> {
    if series.meta.units == Units::Physical {
        return Err(Error::UnitMismatch("physical"));
    }
    phys.validate()?;
    let mut out = series.clone();
    let ts = phys.time_scale();
    out.x.iter_mut().for_each(|x| *x *= phys.wavelength);
    out.times.iter_mut().for_each(|t| *t *= ts);
    out.f
        .iter_mut()
        .flat_map(|row| row.iter_mut())
        .for_each(|v| *v *= phys.amplitude);
    out.meta.units = Units::Physical;
    Ok(out)
}

/// Inverse of [`to_physical`].
pub fn to_nondim(series: &SurfaceSeries, phys: &PhysicalParams) -> Result<SurfaceSeries> {
    if series.meta.units == Units::Nondimensional {
        return Err(Error::UnitMismatch("nondimensional"));
    }
    phys.validate()?;
    let mut out = series.clone();
    let ts = phys.time_scale();
    out.x.iter_mut().for_each(|x| *x /= phys.wavelength);
    out.times.iter_mut().for_each(|t| *t /= ts);
    out.f
        .iter_mut()
        .flat_map(|row| row.iter_mut())
        .for_each(|v| *v /= phys.amplitude);
    out.meta.units = Units::Nondimensional;
    Ok(out)
}

/// Cutoffs used to turn "much smaller than one" into flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    pub small_amplitude: f64,
    pub shallow: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            small_amplitude: 0.01,
            shallow: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub small_amplitude: bool,
    pub shallow: bool,
    pub subcritical_drift: bool,
    /// lambda / (sqrt(g d) delta^2) [s]: time after which stationary phase is justified.
    pub strict_asymptotic_time: f64,
    /// lambda / (sqrt(g d) delta) [s]: the relaxed (dubious) variant.
    pub relaxed_asymptotic_time: f64,
}

pub fn validity_report(
    nd: &NondimParams,
    phys: &PhysicalParams,
    thresholds: &RegimeThresholds,
) -> RegimeReport {
    let ts = phys.time_scale();
    RegimeReport {
        small_amplitude: nd.eps < thresholds.small_amplitude,
        shallow: nd.delta < thresholds.shallow,
        subcritical_drift: nd.drift.abs() < 1.0,
        strict_asymptotic_time: ts / (nd.delta * nd.delta),
        relaxed_asymptotic_time: ts / nd.delta,
    }
}

//! Time-domain surface displacement for irrotational flow (A = 0).
//!
//! For each wavenumber the response is the Duhamel-type integral
//! g(xi, t) = integral_0^t exp(i (t - s) phi) theta-hat(xi, s) / sqrt(tau) ds,
//! phi = sqrt(tau) - C xi, and f-hat = (g(xi) - conj g(-xi)) / (2 i). The ramp
//! part of the s-integral is done by Gauss-Legendre panels, the plateau part
//! in closed form.

use std::cell::RefCell;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::bed::BedMotion;
use crate::error::{Error, Result};
use crate::fourier::{phase_primitive, INV_SQRT_2PI};
use crate::grid::SpectralGrid;
use crate::kernel::{sech, sqrt_tau, SERIES_CUTOFF};
use crate::nondim::NondimParams;
use crate::quad::{integrate, AdaptiveOptions, GaussLegendre};
use crate::series::{SeriesMeta, SolverTag, SurfaceSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Gauss-Legendre points per ramp panel.
    pub ramp_nodes: usize,
    /// Largest phase change phi * (panel length) allowed within one panel.
    pub max_panel_phase: f64,
    /// Extra clearance between the causal support and the periodic boundary.
    /// `None` uses 1 + 15 delta, which covers the dispersive tail.
    pub wrap_margin: Option<f64>,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            ramp_nodes: 32,
            max_panel_phase: 20.0,
            wrap_margin: None,
        }
    }
}

fn check_preconditions(bed: &BedMotion, nd: &NondimParams) -> Result<()> {
    if nd.alpha != 0.0 {
        return Err(Error::VorticityUnsupported { alpha: nd.alpha });
    }
    if bed.is_instantaneous() {
        return Err(Error::InstantaneousRamp("evolution integrates a'' over the quake"));
    }
    nd.require_positive_delta()?;
    nd.require_subcritical()
}

/// Smallest x_dom for which the causal support at `t_max` stays off the boundary.
pub fn required_half_width(bed: &BedMotion, nd: &NondimParams, t_max: f64, margin: Option<f64>) -> f64 {
    let (lo, hi) = bed.support();
    let margin = margin.unwrap_or(1.0 + 15.0 * nd.delta);
    lo.abs().max(hi.abs()) + t_max.max(0.0) * (1.0 + nd.drift.abs()) + margin
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("snapshot times must be finite".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("snapshot times must be sorted".into()));
    }
    Ok(())
}

/// g(xi, t) for every requested time; `xi` must be nonzero.
fn mode_response(
    xi: f64,
    bed: &BedMotion,
    nd: &NondimParams,
    times: &[f64],
    rule: &GaussLegendre,
    opts: &EvolveOptions,
) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let weight = bed.spectrum(xi) * sech(nd.delta * xi);
    if weight == zero {
        return vec![zero; times.len()];
    }
    let root = sqrt_tau(xi, nd.delta);
    let phi = root - nd.drift * xi;
    let scale = weight / root;
    let ramp = &bed.ramp;
    let t0 = ramp.duration;
    let c = nd.drift;
    let panels = |len: f64| ((phi.abs() * len / opts.max_panel_phase).ceil() as usize).max(1);
    // integral_0^upper exp(-i s phi) * bracket(s) ds
    let ramp_integral = |upper: f64| {
        rule.integrate(
            |s| Complex64::from_polar(1.0, -s * phi) * ramp.forcing_bracket(xi, s, c),
            0.0,
            upper,
            panels(upper),
        )
    };
    let full = ramp_integral(t0);
    let plateau = -c * c * xi * xi;
    times
        .iter()
        .map(|&t| {
            if t <= 0.0 {
                zero
            } else if t < t0 {
                Complex64::from_polar(1.0, t * phi) * ramp_integral(t) * scale
            } else {
                let held = t - t0;
                let tail = phase_primitive(phi * held) * (plateau * held);
                (Complex64::from_polar(1.0, t * phi) * full + tail) * scale
            }
        })
        .collect()
}

/// Surface displacement snapshots on the periodic grid.
pub fn evolve_surface(
    bed: &BedMotion,
    nd: &NondimParams,
    grid: &SpectralGrid,
    times: &[f64],
    opts: &EvolveOptions,
) -> Result<SurfaceSeries> {
    check_preconditions(bed, nd)?;
    check_times(times)?;
    let t_max = times.iter().cloned().fold(0.0, f64::max);
    let required = required_half_width(bed, nd, t_max, opts.wrap_margin);
    if grid.x_dom < required {
        return Err(Error::WouldWrap {
            required,
            available: grid.x_dom,
        });
    }
    let n = grid.n;
    let rule = GaussLegendre::new(opts.ramp_nodes);
    let nyquist = n / 2;
    let responses: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|m| {
            if m == 0 || m == nyquist {
                Vec::new()
            } else {
                let xi = grid.wavenumber(grid.mode_index(m));
                mode_response(xi, bed, nd, times, &rule, opts)
            }
        })
        .collect();

    let mean = bed.spectrum(0.0);
    let d_xi = grid.wavenumber(1);
    let fft = FftPlanner::new().plan_fft_inverse(n);
    let half_i = Complex64::new(0.0, 2.0);
    let mut residue = 0.0f64;
    let mut f = Vec::with_capacity(times.len());
    for (i, &t) in times.iter().enumerate() {
        let mut buf: Vec<Complex64> = (0..n)
            .map(|m| {
                let k = grid.mode_index(m);
                let value = if m == 0 {
                    mean * bed.ramp.value(t)
                } else if m == nyquist {
                    Complex64::new(0.0, 0.0)
                } else {
                    (responses[m][i] - responses[n - m][i].conj()) / half_i
                };
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                value * (sign * d_xi * INV_SQRT_2PI)
            })
            .collect();
        fft.process(&mut buf);
        let peak = buf.iter().fold(0.0f64, |m, z| m.max(z.re.abs()));
        let imag = buf.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
        if peak > 0.0 {
            residue = residue.max(imag / peak);
        }
        f.push(buf.iter().map(|z| z.re).collect());
    }
    let mut meta = SeriesMeta::new(SolverTag::Spectral, *nd, bed.description());
    meta.imag_residue = residue;
    Ok(SurfaceSeries {
        times: times.to_vec(),
        x: grid.nodes(),
        f,
        meta,
    })
}

/// Tolerances of [`oracle_direct`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub abs_tol: f64,
    /// Bound on the discarded |xi| > Xi tail.
    pub tail_tol: f64,
    pub max_segments: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            tail_tol: 1e-12,
            max_segments: 200_000,
        }
    }
}

/// |xi| / sqrt(tau(xi)), which tends to 1 at xi = 0.
fn xi_over_sqrt_tau(xi: f64, delta: f64) -> f64 {
    let z = delta * xi;
    if z.abs() < SERIES_CUTOFF {
        let z2 = z * z;
        1.0 / (1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 15.0).sqrt()
    } else {
        xi.abs() / sqrt_tau(xi, delta)
    }
}

/// Truncation Xi with an explicit bound on the neglected part of the xi-integral.
fn truncation(bed: &BedMotion, nd: &NondimParams, t: f64, tail_tol: f64) -> f64 {
    let (lo, hi) = bed.support();
    let samples = 2000;
    let peak = (0..=samples)
        .map(|j| bed.profile(0, lo + (hi - lo) * j as f64 / samples as f64).abs())
        .fold(0.0, f64::max);
    // |b-hat| <= integral |b| / sqrt(2 pi); 1.5 covers spline overshoot between samples.
    let b_bound = 1.5 * peak * (hi - lo) * INV_SQRT_2PI;
    let (a1, a2) = bed.ramp.derivative_bounds();
    let t_ramp = t.min(bed.ramp.duration);
    let d = nd.delta;
    let c = nd.drift.abs();
    // integral_X^inf xi^k exp(-d xi) d xi for k = 0, 1, 2.
    let moments = |x: f64| {
        let e = (-d * x).exp() / d;
        (e, e * (x + 1.0 / d), e * (x * x + 2.0 * x / d + 2.0 / (d * d)))
    };
    let bound = |x: f64| {
        let (i0, i1, i2) = moments(x);
        let s_integral = t_ramp * (a2 * i0 + 2.0 * c * a1 * i1) + t * c * c * i2;
        // two half-lines, |exp(i psi) - 1| <= 2, sech <= 2 exp(-|z|)
        INV_SQRT_2PI * 2.0 * 2.0 * 2.0 * b_bound * s_integral / sqrt_tau(x, d)
    };
    let mut x = 1.0 / d;
    while bound(x) > tail_tol && x < 1e8 {
        x *= 1.05;
    }
    x
}

/// Pointwise f(x, t) by adaptive quadrature of the subtracted double integral
/// over xi and s. Slow; meant as a reference for [`evolve_surface`].
pub fn oracle_direct(
    x: f64,
    t: f64,
    bed: &BedMotion,
    nd: &NondimParams,
    opts: &OracleOptions,
) -> Result<f64> {
    check_preconditions(bed, nd)?;
    if t <= 0.0 {
        return Ok(0.0);
    }
    let xi_max = truncation(bed, nd, t, opts.tail_tol);
    let t0 = bed.ramp.duration;
    let c = nd.drift;
    let d = nd.delta;
    let (a1, a2) = bed.ramp.derivative_bounds();
    let inner_tol = opts.abs_tol / (4.0 * xi_max);
    let failure: RefCell<Option<Error>> = RefCell::new(None);

    let outer = |xi: f64| -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        if xi == 0.0 || failure.borrow().is_some() {
            return zero;
        }
        let weight = bed.spectrum(xi) * sech(d * xi);
        if weight == zero {
            return zero;
        }
        let root = sqrt_tau(xi, d);
        let phi = root - c * xi;
        let reg = xi_over_sqrt_tau(xi, d) / xi.abs();
        // (exp(i psi) - 1) / sqrt(tau) * theta-hat, psi = (t - s) phi + x xi
        let integrand = |s: f64| {
            let psi = (t - s) * phi + x * xi;
            let numer = Complex64::from_polar(2.0 * (0.5 * psi).sin(), 0.5 * psi) * Complex64::i();
            numer * bed.ramp.forcing_bracket(xi, s, c) * (weight * reg)
        };
        let mut breaks = vec![0.0, t.min(t0)];
        if t > t0 {
            breaks.push(t);
        }
        // A priori bound on integral |integrand| ds; the roundoff floor of the
        // inner rule scales with it.
        let swing = (t * phi.abs() + (x * xi).abs()).min(2.0);
        let mass = swing * weight.norm() * reg
            * (t.min(t0) * (a2 + 2.0 * (c * xi).abs() * a1) + t * c * c * xi * xi);
        let inner_opts = AdaptiveOptions {
            abs_tol: inner_tol.max(1e-12 * mass),
            rel_tol: 1e-12,
            max_segments: opts.max_segments,
        };
        let panels = 1 + (phi.abs() * t / (4.0 * std::f64::consts::PI)) as usize;
        match integrate(integrand, &breaks, panels.min(64), &inner_opts) {
            Ok(r) => r.value,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                zero
            }
        }
    };

    let freq = (x - c * t).abs() + t + 1.0;
    let panels = 1 + (xi_max * freq / (4.0 * std::f64::consts::PI)) as usize;
    let outer_opts = AdaptiveOptions {
        abs_tol: 0.5 * opts.abs_tol / INV_SQRT_2PI,
        rel_tol: 1e-12,
        max_segments: opts.max_segments,
    };
    let result = integrate(outer, &[-xi_max, 0.0, xi_max], panels, &outer_opts);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(INV_SQRT_2PI * result?.value.im)
}

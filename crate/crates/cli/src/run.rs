//! Solver dispatch and emission of CSV snapshots plus a metadata sidecar.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use tsunami_core::evolve::required_half_width;
use tsunami_core::nondim::{validity_report, RegimeThresholds};
use tsunami_core::shallow::{duhamel_series, instant_series};
use tsunami_core::stphase::applicability_report_with;
use tsunami_core::{
    asymptotic_surface, branches, evolve_surface, find_stationary_point, to_physical, BedMotion, BranchPair, Error,
    EvolveOptions, NondimParams, SeriesMeta, SolverTag, SpectralGrid, SurfaceSeries, Units,
};

use crate::config::{ScenarioConfig, SolverKind};
use crate::error::CliError;

/// Output of one solver run, before it is written.
#[derive(Debug, Clone)]
pub enum Solution {
    Surface(SurfaceSeries),
    /// Stationary-phase values (NaN where not applicable) with t |d2| per point
    /// (NaN where the ray has no stationary point).
    Asymptotic {
        series: SurfaceSeries,
        applicability: Vec<Vec<f64>>,
    },
    Dispersion(Vec<BranchPair>),
}

#[derive(Debug, Clone)]
pub struct Artifacts {
    pub files: Vec<PathBuf>,
    pub solution: Solution,
    pub wall_time: f64,
}

/// Periodic grid for the scenario; an unset half-width becomes the smallest
/// integer one that keeps the causal support off the boundary.
pub fn grid_for(cfg: &ScenarioConfig, bed: &BedMotion, nd: &NondimParams) -> Result<SpectralGrid, CliError> {
    let t_max = cfg.times.iter().cloned().fold(0.0, f64::max);
    let half = cfg
        .grid
        .half_width
        .unwrap_or_else(|| required_half_width(bed, nd, t_max, None).ceil());
    Ok(SpectralGrid::new(half, cfg.grid.points)?)
}

pub fn evolve_options(cfg: &ScenarioConfig) -> EvolveOptions {
    EvolveOptions {
        ramp_nodes: cfg.solver.ramp_nodes,
        ..EvolveOptions::default()
    }
}

/// Runs the configured solver without touching the file system.
pub fn solve(cfg: &ScenarioConfig) -> Result<Solution, CliError> {
    cfg.validate()?;
    let nd = cfg.derived()?.params;
    if cfg.solver.kind == SolverKind::Dispersion {
        let n = cfg.dispersion.samples;
        let rows = (1..=n)
            .map(|i| branches(cfg.dispersion.xi_max * i as f64 / n as f64, &nd))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Solution::Dispersion(rows));
    }
    let bed = cfg.bed_motion()?;
    let grid = grid_for(cfg, &bed, &nd)?;
    let xs = grid.nodes();
    Ok(match cfg.solver.kind {
        SolverKind::Spectral => Solution::Surface(evolve_surface(&bed, &nd, &grid, &cfg.times, &evolve_options(cfg))?),
        SolverKind::ShallowDuhamel => Solution::Surface(duhamel_series(&bed, &nd, &xs, &cfg.times)?),
        SolverKind::ShallowInstant => Solution::Surface(instant_series(&bed, &nd, &xs, &cfg.times)?),
        SolverKind::StationaryPhase => {
            let mut values = Vec::with_capacity(cfg.times.len());
            let mut applicability = Vec::with_capacity(cfg.times.len());
            for &t in &cfg.times {
                let mut row = Vec::with_capacity(xs.len());
                let mut app = Vec::with_capacity(xs.len());
                for &x in &xs {
                    app.push(match find_stationary_point(x / t, &nd) {
                        Ok(sp) => sp.applicability(t),
                        Err(Error::NoStationaryPoint { .. }) => f64::NAN,
                        Err(e) => return Err(e.into()),
                    });
                    row.push(match asymptotic_surface(x, t, &bed, &nd, cfg.solver.threshold) {
                        Ok(v) => v,
                        Err(Error::NotApplicable { .. } | Error::NoStationaryPoint { .. }) => f64::NAN,
                        Err(e) => return Err(e.into()),
                    });
                }
                values.push(row);
                applicability.push(app);
            }
            let meta = SeriesMeta::new(SolverTag::StationaryPhase, nd, bed.description());
            Solution::Asymptotic {
                series: SurfaceSeries {
                    times: cfg.times.clone(),
                    x: xs,
                    f: values,
                    meta,
                },
                applicability,
            }
        }
        SolverKind::Dispersion => unreachable!("handled above"),
    })
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn snapshot_csv(series: &SurfaceSeries, i: usize, extra: Option<&[f64]>) -> String {
    let mut s = String::from(if extra.is_some() { "x,f,applicability\n" } else { "x,f\n" });
    for (j, (&x, &f)) in series.x.iter().zip(&series.f[i]).enumerate() {
        match extra {
            Some(a) => {
                let _ = writeln!(s, "{},{},{}", num(x), num(f), num(a[j]));
            }
            None => {
                let _ = writeln!(s, "{},{}", num(x), num(f));
            }
        }
    }
    s
}

fn in_units(cfg: &ScenarioConfig, series: &SurfaceSeries) -> Result<SurfaceSeries, CliError> {
    Ok(match cfg.output.units {
        Units::Nondimensional => series.clone(),
        Units::Physical => to_physical(series, &cfg.physical)?,
    })
}

fn dispersion_csv(cfg: &ScenarioConfig, rows: &[BranchPair]) -> String {
    let (kx, kw) = match cfg.output.units {
        Units::Nondimensional => (1.0, 1.0),
        Units::Physical => (
            1.0 / cfg.physical.wavelength,
            1.0 / cfg.physical.time_scale(),
        ),
    };
    let mut s = String::from("xi,omega_plus,omega_minus\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", num(r.xi * kx), num(r.omega_plus * kw), num(r.omega_minus * kw));
    }
    s
}

fn metadata(cfg: &ScenarioConfig, solution: &Solution, files: &[PathBuf], wall: f64) -> Result<String, CliError> {
    let d = cfg.derived()?;
    let p = &cfg.physical;
    let mut s = String::new();
    let _ = writeln!(s, "tool = tsunami-cli {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "solver = {}", cfg.solver.kind.as_str());
    if let Some(name) = &cfg.preset {
        let _ = writeln!(s, "preset = {name}");
    }
    let units = match cfg.output.units {
        Units::Nondimensional => "nondimensional",
        Units::Physical => "physical (x in m, t in s, f in m)",
    };
    let _ = writeln!(s, "units = {units}");
    let _ = writeln!(s, "amplitude_m = {}", p.amplitude);
    let _ = writeln!(s, "depth_m = {}", p.depth);
    let _ = writeln!(s, "wavelength_m = {}", p.wavelength);
    let _ = writeln!(s, "gravity_m_s2 = {}", p.gravity);
    let _ = writeln!(s, "vorticity_1_s = {}", p.vorticity);
    let _ = writeln!(s, "bed_current_m_s = {}", p.bed_current);
    let _ = writeln!(s, "source_half_width_m = {}", p.source_half_width);
    let _ = writeln!(s, "quake_duration_s = {}", p.quake_duration);
    let _ = writeln!(s, "eps = {}", d.params.eps);
    let _ = writeln!(s, "delta = {}", d.params.delta);
    let _ = writeln!(s, "alpha = {}", d.params.alpha);
    let _ = writeln!(s, "beta = {}", d.params.beta);
    let _ = writeln!(s, "drift = {}", d.params.drift);
    let _ = writeln!(s, "scaled_half_width = {}", d.half_width);
    let _ = writeln!(s, "scaled_duration = {}", d.duration);
    let _ = writeln!(s, "time_scale_s = {}", p.time_scale());
    if cfg.solver.kind != SolverKind::Dispersion {
        let bed = cfg.bed_motion()?;
        let grid = grid_for(cfg, &bed, &d.params)?;
        let _ = writeln!(s, "bed = {}", bed.description());
        let _ = writeln!(s, "grid_half_width = {}", grid.x_dom);
        let _ = writeln!(s, "grid_points = {}", grid.n);
        let times: Vec<String> = cfg.times.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "times = {}", times.join(", "));
    } else {
        let _ = writeln!(s, "xi_max = {}", cfg.dispersion.xi_max);
        let _ = writeln!(s, "samples = {}", cfg.dispersion.samples);
    }
    match solution {
        Solution::Surface(series) => {
            let _ = writeln!(s, "imag_residue = {:e}", series.meta.imag_residue);
        }
        Solution::Asymptotic { series, .. } => {
            let _ = writeln!(s, "applicability_threshold = {}", cfg.solver.threshold);
            if let Ok(sp) = find_stationary_point(d.params.drift - 0.5, &d.params) {
                let t = series.times[series.times.len() - 1];
                let r = applicability_report_with(t, &sp, &d.params, p, cfg.solver.threshold);
                let _ = writeln!(s, "strict_time = {} ({} s)", r.strict_time, r.strict_time_physical);
                let _ = writeln!(s, "relaxed_time = {} ({} s, DUBIOUS below the strict time)", r.relaxed_time, r.relaxed_time_physical);
            }
        }
        Solution::Dispersion(_) => {}
    }
    let names: Vec<String> = files
        .iter()
        .map(|f| f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
        .collect();
    let _ = writeln!(s, "files = {}", names.join(", "));
    let _ = writeln!(s, "wall_time_s = {wall:.3}");
    Ok(s)
}

/// Solves the scenario and writes its artifacts under the output directory.
pub fn run(cfg: &ScenarioConfig) -> Result<Artifacts, CliError> {
    let start = Instant::now();
    let solution = solve(cfg)?;
    let dir = &cfg.output.directory;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let prefix = &cfg.output.prefix;
    let mut files = Vec::new();
    match &solution {
        Solution::Surface(series) => {
            let out = in_units(cfg, series)?;
            for i in 0..out.times.len() {
                let path = dir.join(format!("{prefix}_t{i:03}.csv"));
                write_file(&path, &snapshot_csv(&out, i, None))?;
                files.push(path);
            }
        }
        Solution::Asymptotic { series, applicability } => {
            let out = in_units(cfg, series)?;
            for (i, app) in applicability.iter().enumerate() {
                let path = dir.join(format!("{prefix}_t{i:03}.csv"));
                write_file(&path, &snapshot_csv(&out, i, Some(app)))?;
                files.push(path);
            }
        }
        Solution::Dispersion(rows) => {
            let path = dir.join(format!("{prefix}_dispersion.csv"));
            write_file(&path, &dispersion_csv(cfg, rows))?;
            files.push(path);
        }
    }
    let wall_time = start.elapsed().as_secs_f64();
    let meta_path = dir.join(format!("{prefix}.meta.txt"));
    write_file(&meta_path, &metadata(cfg, &solution, &files, wall_time)?)?;
    files.push(meta_path);
    log::info!("{} wrote {} files in {:.3} s", cfg.solver.kind.as_str(), files.len(), wall_time);
    Ok(Artifacts {
        files,
        solution,
        wall_time,
    })
}

/// Human-readable parameter group and regime flags for `params`.
pub fn params_summary(cfg: &ScenarioConfig) -> Result<String, CliError> {
    let d = cfg.derived()?;
    let p = &cfg.physical;
    let flags = validity_report(&d.params, p, &RegimeThresholds::default());
    let mut s = String::new();
    let _ = writeln!(s, "eps   = a / d        = {}", d.params.eps);
    let _ = writeln!(s, "delta = d / lambda   = {}", d.params.delta);
    let _ = writeln!(s, "alpha                = {}", d.params.alpha);
    let _ = writeln!(s, "beta                 = {}", d.params.beta);
    let _ = writeln!(s, "C     = alpha + beta = {}", d.params.drift);
    let _ = writeln!(s, "source half-width    = {}", d.half_width);
    let _ = writeln!(s, "quake duration       = {}", d.duration);
    let _ = writeln!(s, "time scale           = {} s", p.time_scale());
    let _ = writeln!(s, "small amplitude      = {}", flags.small_amplitude);
    let _ = writeln!(s, "shallow              = {}", flags.shallow);
    let _ = writeln!(s, "subcritical drift    = {}", flags.subcritical_drift);
    let _ = writeln!(s, "T1 = time scale / delta^2 = {:.6e} s", flags.strict_asymptotic_time);
    let _ = writeln!(s, "T2 = time scale / delta   = {:.6e} s (dubious)", flags.relaxed_asymptotic_time);
    Ok(s)
}

//! Cross-method comparison and convergence ladders.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use tsunami_core::convergence::{check_ladder, fit_order};
use tsunami_core::evolve::required_half_width;
use tsunami_core::shallow::duhamel_series;
use tsunami_core::{evolve_surface, SpectralGrid, SurfaceSeries};

use crate::config::{ScenarioConfig, SolverKind};
use crate::error::CliError;
use crate::run::{evolve_options, grid_for};

/// Max-norm errors below this count as converged for an n-ladder.
pub const PLATEAU: f64 = 1e-8;

fn max_gap(a: &SurfaceSeries, b: &SurfaceSeries, i: usize) -> f64 {
    a.f[i].iter().zip(&b.f[i]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_norm(row: &[f64]) -> f64 {
    row.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub t: f64,
    /// max |spectral - shallow-duhamel|
    pub max_abs_diff: f64,
    /// max |shallow-duhamel|
    pub reference_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub delta: f64,
    pub drift: f64,
    pub rows: Vec<CompareRow>,
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "spectral vs shallow-duhamel (delta = {}, C = {})", self.delta, self.drift)?;
        writeln!(f, "{:>12} {:>14} {:>14} {:>12}", "t", "max|diff|", "max|shallow|", "relative")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>12.6} {:>14.6e} {:>14.6e} {:>12.4e}",
                r.t,
                r.max_abs_diff,
                r.reference_norm,
                r.max_abs_diff / r.reference_norm
            )?;
        }
        Ok(())
    }
}

impl CompareReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,max_abs_diff,reference_norm\n");
        for r in &self.rows {
            let _ = writeln!(s, "{:.16e},{:.16e},{:.16e}", r.t, r.max_abs_diff, r.reference_norm);
        }
        s
    }
}

/// Spectral evolution against the shallow-water Duhamel solution on the same nodes.
pub fn compare(cfg: &ScenarioConfig) -> Result<CompareReport, CliError> {
    let mut spectral_cfg = cfg.clone();
    spectral_cfg.solver.kind = SolverKind::Spectral;
    spectral_cfg.validate()?;
    let nd = cfg.derived()?.params;
    let bed = spectral_cfg.bed_motion()?;
    let grid = grid_for(&spectral_cfg, &bed, &nd)?;
    let spectral = evolve_surface(&bed, &nd, &grid, &cfg.times, &evolve_options(cfg))?;
    let shallow = duhamel_series(&bed, &nd, &spectral.x, &cfg.times)?;
    Ok(CompareReport {
        delta: nd.delta,
        drift: nd.drift,
        rows: (0..cfg.times.len())
            .map(|i| CompareRow {
                t: cfg.times[i],
                max_abs_diff: max_gap(&spectral, &shallow, i),
                reference_norm: max_norm(&shallow.f[i]),
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ladder {
    /// Depth ratios; errors against the shallow-water Duhamel solution.
    Delta(Vec<f64>),
    /// Grid sizes; errors against a grid twice as fine as the finest entry.
    Points(Vec<usize>),
}

impl Ladder {
    fn values(&self) -> Vec<f64> {
        match self {
            Ladder::Delta(v) => v.clone(),
            Ladder::Points(v) => v.iter().map(|&n| n as f64).collect(),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Ladder::Delta(_) => "delta",
            Ladder::Points(_) => "points",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub ladder: Ladder,
    pub errors: Vec<f64>,
    /// Least-squares log-log slope of error against the ladder value; `None`
    /// when some error is exactly zero.
    pub order: Option<f64>,
    /// All errors at or below [`PLATEAU`].
    pub plateau: bool,
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>12} {:>14}", self.ladder.label(), "max|error|")?;
        for (v, e) in self.ladder.values().iter().zip(&self.errors) {
            writeln!(f, "{v:>12} {e:>14.6e}")?;
        }
        match self.order {
            Some(p) => writeln!(f, "fitted order: {p:.4}")?,
            None => writeln!(f, "fitted order: n/a")?,
        }
        if self.plateau {
            writeln!(f, "plateau: all errors <= {PLATEAU:e}")?;
        }
        Ok(())
    }
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{},error\n", self.ladder.label());
        for (v, e) in self.ladder.values().iter().zip(&self.errors) {
            let _ = writeln!(s, "{v},{e:.16e}");
        }
        s
    }
}

/// Errors of the spectral solver along a ladder, with the fitted order.
pub fn convergence_study(cfg: &ScenarioConfig, ladder: &Ladder) -> Result<ConvergenceReport, CliError> {
    check_ladder(&ladder.values())?;
    let mut base = cfg.clone();
    base.solver.kind = SolverKind::Spectral;
    base.validate()?;
    let nd = base.derived()?.params;
    let bed = base.bed_motion()?;
    let opts = evolve_options(&base);
    let t_max = base.times.iter().cloned().fold(0.0, f64::max);
    let errors: Vec<f64> = match ladder {
        Ladder::Delta(deltas) => {
            let widest = deltas.iter().cloned().fold(0.0, f64::max);
            let half = base
                .grid
                .half_width
                .unwrap_or_else(|| required_half_width(&bed, &nd.with_delta(widest), t_max, None).ceil());
            let grid = SpectralGrid::new(half, base.grid.points)?;
            deltas
                .iter()
                .map(|&d| {
                    let nd = nd.with_delta(d);
                    let s = evolve_surface(&bed, &nd, &grid, &base.times, &opts)?;
                    let r = duhamel_series(&bed, &nd, &s.x, &base.times)?;
                    Ok((0..base.times.len()).map(|i| max_gap(&s, &r, i)).fold(0.0, f64::max))
                })
                .collect::<Result<_, CliError>>()?
        }
        Ladder::Points(points) => {
            let finest = points.iter().cloned().max().unwrap_or(0);
            let mut reference_cfg = base.clone();
            reference_cfg.grid.points = 2 * finest;
            let reference_grid = grid_for(&reference_cfg, &bed, &nd)?;
            let reference = evolve_surface(&bed, &nd, &reference_grid, &base.times, &opts)?;
            points
                .iter()
                .map(|&n| {
                    let grid = SpectralGrid::new(reference_grid.x_dom, n)?;
                    let s = evolve_surface(&bed, &nd, &grid, &base.times, &opts)?;
                    let stride = reference_grid.n / n;
                    let mut err = 0.0f64;
                    for i in 0..base.times.len() {
                        for (j, v) in s.f[i].iter().enumerate() {
                            err = err.max((v - reference.f[i][j * stride]).abs());
                        }
                    }
                    Ok(err)
                })
                .collect::<Result<_, CliError>>()?
        }
    };
    let order = if errors.iter().all(|e| *e > 0.0) {
        Some(fit_order(&ladder.values(), &errors)?)
    } else {
        None
    };
    let plateau = errors.iter().all(|e| *e <= PLATEAU);
    Ok(ConvergenceReport {
        ladder: ladder.clone(),
        errors,
        order,
        plateau,
    })
}

/// Writes a report table next to the other artifacts.
pub fn write_report(cfg: &ScenarioConfig, suffix: &str, csv: &str) -> Result<PathBuf, CliError> {
    let dir = &cfg.output.directory;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(format!("{}_{suffix}.csv", cfg.output.prefix));
    fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

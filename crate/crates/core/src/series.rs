use std::fmt;

use crate::nondim::NondimParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Nondimensional,
    Physical,
}

/// Which solver produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverTag {
    Spectral,
    ShallowDuhamel,
    ShallowInstant,
    StationaryPhase,
    Oracle,
}

impl SolverTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverTag::Spectral => "spectral",
            SolverTag::ShallowDuhamel => "shallow-duhamel",
            SolverTag::ShallowInstant => "shallow-instant",
            SolverTag::StationaryPhase => "stationary-phase",
            SolverTag::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolverTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMeta {
    pub solver: SolverTag,
    pub units: Units,
    pub params: NondimParams,
    pub bed: String,
    /// Largest imaginary part left by the inverse transforms, relative to max |f|.
    pub imag_residue: f64,
}

impl SeriesMeta {
    pub fn new(solver: SolverTag, params: NondimParams, bed: impl Into<String>) -> Self {
        Self {
            solver,
            units: Units::Nondimensional,
            params,
            bed: bed.into(),
            imag_residue: 0.0,
        }
    }
}

/// Snapshots of the surface displacement: `f[i][j]` is f(x[j], times[i]).
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSeries {
    pub times: Vec<f64>,
    pub x: Vec<f64>,
    pub f: Vec<Vec<f64>>,
    pub meta: SeriesMeta,
}

impl SurfaceSeries {
    pub fn snapshot(&self, i: usize) -> &[f64] {
        &self.f[i]
    }

    /// Max-norm over all snapshots.
    pub fn max_abs(&self) -> f64 {
        self.f
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

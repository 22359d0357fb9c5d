//! Scenario files: `key = value` lines grouped in `[section]`s, `#` comments.
//!
//! An optional top-level `preset = <name>` seeds every field; explicit keys
//! then override it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use tsunami_core::nondim::STANDARD_GRAVITY;
use tsunami_core::{derive_nondim, BedMotion, BedShape, Derived, PhysicalParams, Ramp, TabulatedShape, Units};

use crate::error::CliError;

pub const PRESETS: &[&str] = &["open-sea-2004", "deep-lab"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Spectral,
    ShallowDuhamel,
    ShallowInstant,
    StationaryPhase,
    Dispersion,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Spectral => "spectral",
            SolverKind::ShallowDuhamel => "shallow-duhamel",
            SolverKind::ShallowInstant => "shallow-instant",
            SolverKind::StationaryPhase => "stationary-phase",
            SolverKind::Dispersion => "dispersion",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "spectral" => SolverKind::Spectral,
            "shallow-duhamel" => SolverKind::ShallowDuhamel,
            "shallow-instant" => SolverKind::ShallowInstant,
            "stationary-phase" => SolverKind::StationaryPhase,
            "dispersion" => SolverKind::Dispersion,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    RaisedCosine,
    SmoothBump,
    Dipole,
    /// Two-column samples (x in units of the half-width, b).
    Tabulated(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BedConfig {
    pub shape: ShapeKind,
    /// Profile amplitude in units of the amplitude scale a.
    pub amplitude: f64,
    pub power: u32,
    pub instantaneous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub kind: SolverKind,
    /// Minimum t |d2| for stationary phase.
    pub threshold: f64,
    /// Gauss-Legendre points per ramp panel (spectral solver).
    pub ramp_nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    /// Scaled half-width of the periodic domain; `None` picks the smallest safe one.
    pub half_width: Option<f64>,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionConfig {
    pub xi_max: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub prefix: String,
    pub units: Units,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub preset: Option<String>,
    pub physical: PhysicalParams,
    pub bed: BedConfig,
    pub solver: SolverConfig,
    pub grid: GridConfig,
    /// Snapshot times in units of lambda / sqrt(g d).
    pub times: Vec<f64>,
    pub dispersion: DispersionConfig,
    pub output: OutputConfig,
}

/// Fully populated scenario for a named preset.
pub fn preset(name: &str) -> Option<ScenarioConfig> {
    let base = ScenarioConfig {
        preset: Some(name.to_string()),
        physical: PhysicalParams::open_sea(),
        bed: BedConfig {
            shape: ShapeKind::RaisedCosine,
            amplitude: 1.0,
            power: 3,
            instantaneous: false,
        },
        solver: SolverConfig {
            kind: SolverKind::Spectral,
            threshold: 10.0,
            ramp_nodes: 32,
        },
        grid: GridConfig {
            half_width: None,
            points: 4096,
        },
        times: vec![1.0, 2.0, 5.0],
        dispersion: DispersionConfig {
            xi_max: 50.0,
            samples: 200,
        },
        output: OutputConfig {
            directory: PathBuf::from("out"),
            prefix: name.to_string(),
            units: Units::Nondimensional,
        },
    };
    match name {
        "open-sea-2004" => Some(base),
        // Depth half the wavelength: strongly dispersive, for stationary phase.
        "deep-lab" => Some(ScenarioConfig {
            physical: PhysicalParams {
                amplitude: 0.002,
                depth: 0.5,
                wavelength: 1.0,
                gravity: STANDARD_GRAVITY,
                vorticity: 0.0,
                bed_current: 0.0,
                source_half_width: 1.0,
                quake_duration: 0.5 / (STANDARD_GRAVITY * 0.5f64).sqrt(),
            },
            bed: BedConfig {
                shape: ShapeKind::SmoothBump,
                ..base.bed
            },
            solver: SolverConfig {
                kind: SolverKind::StationaryPhase,
                ..base.solver
            },
            grid: GridConfig {
                half_width: None,
                points: 1024,
            },
            times: vec![50.0],
            ..base
        }),
        _ => None,
    }
}

const KEYS: &[(&str, &[&str])] = &[
    ("", &["preset"]),
    (
        "physical",
        &[
            "amplitude",
            "depth",
            "wavelength",
            "gravity",
            "vorticity",
            "bed_current",
            "source_half_width",
            "quake_duration",
        ],
    ),
    ("bed", &["shape", "amplitude", "power", "file", "instantaneous"]),
    ("solver", &["kind", "threshold", "ramp_nodes"]),
    ("grid", &["half_width", "points"]),
    ("times", &["values"]),
    ("dispersion", &["xi_max", "samples"]),
    ("output", &["directory", "prefix", "units"]),
];

struct Entry {
    value: String,
    line: usize,
}

type Table = BTreeMap<(String, String), Entry>;

fn tokenize(text: &str) -> Result<Table, CliError> {
    let mut table = Table::new();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| CliError::parse(line, "", "unterminated section header"))?
                .trim();
            if !KEYS.iter().any(|(s, _)| *s == name) || name.is_empty() {
                return Err(CliError::parse(line, name, "unknown section"));
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| CliError::parse(line, content, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        let allowed = KEYS.iter().find(|(s, _)| *s == section).map(|(_, k)| *k).unwrap_or(&[]);
        if !allowed.contains(&key) {
            let field = if section.is_empty() { key.to_string() } else { format!("{section}.{key}") };
            return Err(CliError::parse(line, &field, "unknown key"));
        }
        let slot = (section.clone(), key.to_string());
        if table.contains_key(&slot) {
            return Err(CliError::parse(line, key, "duplicate key"));
        }
        table.insert(
            slot,
            Entry {
                value: value.to_string(),
                line,
            },
        );
    }
    Ok(table)
}

struct Reader {
    table: Table,
}

impl Reader {
    fn raw(&self, section: &str, key: &str) -> Option<&Entry> {
        self.table.get(&(section.to_string(), key.to_string()))
    }

    fn field(section: &str, key: &str) -> String {
        if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        }
    }

    fn get<T: std::str::FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, CliError> {
        match self.raw(section, key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse::<T>()
                .map(Some)
                .map_err(|_| CliError::parse(e.line, &Self::field(section, key), &format!("cannot parse `{}`", e.value))),
        }
    }

    fn set<T: std::str::FromStr>(&self, section: &str, key: &str, slot: &mut T) -> Result<bool, CliError> {
        match self.get(section, key)? {
            Some(v) => {
                *slot = v;
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

/// Parses and validates a scenario.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let r = Reader { table: tokenize(text)? };
    let preset_name: Option<String> = r.get("", "preset")?;
    let mut cfg = match &preset_name {
        Some(name) => preset(name).ok_or_else(|| {
            let line = r.raw("", "preset").map_or(0, |e| e.line);
            CliError::parse(line, "preset", &format!("unknown preset `{name}` (known: {})", PRESETS.join(", ")))
        })?,
        None => blank(),
    };

    let p = &mut cfg.physical;
    let mut have = [true; 3];
    have[0] = r.set("physical", "amplitude", &mut p.amplitude)?;
    have[1] = r.set("physical", "depth", &mut p.depth)?;
    have[2] = r.set("physical", "wavelength", &mut p.wavelength)?;
    if preset_name.is_none() {
        for (ok, name) in have.iter().zip(["amplitude", "depth", "wavelength"]) {
            if !ok {
                return Err(CliError::Validation(format!("physical.{name} is required without a preset")));
            }
        }
    }
    if !r.set("physical", "gravity", &mut p.gravity)? && preset_name.is_none() {
        log::info!("physical.gravity not given; using {STANDARD_GRAVITY} m/s^2");
    }
    r.set("physical", "vorticity", &mut p.vorticity)?;
    r.set("physical", "bed_current", &mut p.bed_current)?;
    if !r.set("physical", "source_half_width", &mut p.source_half_width)? && preset_name.is_none() {
        p.source_half_width = p.wavelength;
    }
    if !r.set("physical", "quake_duration", &mut p.quake_duration)? && preset_name.is_none() {
        log::info!("physical.quake_duration not given; using {} s", p.quake_duration);
    }

    if let Some(shape) = r.get::<String>("bed", "shape")? {
        let line = r.raw("bed", "shape").map_or(0, |e| e.line);
        cfg.bed.shape = match shape.as_str() {
            "raised-cosine" => ShapeKind::RaisedCosine,
            "smooth-bump" => ShapeKind::SmoothBump,
            "dipole" => ShapeKind::Dipole,
            "tabulated" => {
                let file: String = r
                    .get("bed", "file")?
                    .ok_or_else(|| CliError::parse(line, "bed.file", "tabulated shape needs `file`"))?;
                ShapeKind::Tabulated(PathBuf::from(file))
            }
            other => return Err(CliError::parse(line, "bed.shape", &format!("unknown shape `{other}`"))),
        };
    }
    if let Some(e) = r.raw("bed", "file") {
        if !matches!(cfg.bed.shape, ShapeKind::Tabulated(_)) {
            return Err(CliError::parse(e.line, "bed.file", "only used with shape = tabulated"));
        }
    }
    r.set("bed", "amplitude", &mut cfg.bed.amplitude)?;
    r.set("bed", "power", &mut cfg.bed.power)?;
    r.set("bed", "instantaneous", &mut cfg.bed.instantaneous)?;

    if let Some(kind) = r.get::<String>("solver", "kind")? {
        let line = r.raw("solver", "kind").map_or(0, |e| e.line);
        cfg.solver.kind = SolverKind::parse(&kind)
            .ok_or_else(|| CliError::parse(line, "solver.kind", &format!("unknown solver `{kind}`")))?;
    }
    r.set("solver", "threshold", &mut cfg.solver.threshold)?;
    r.set("solver", "ramp_nodes", &mut cfg.solver.ramp_nodes)?;

    if let Some(hw) = r.get::<String>("grid", "half_width")? {
        cfg.grid.half_width = if hw == "auto" {
            None
        } else {
            let line = r.raw("grid", "half_width").map_or(0, |e| e.line);
            Some(hw.parse().map_err(|_| CliError::parse(line, "grid.half_width", &format!("cannot parse `{hw}`")))?)
        };
    }
    r.set("grid", "points", &mut cfg.grid.points)?;

    if let Some(e) = r.raw("times", "values") {
        cfg.times = parse_list(&e.value).map_err(|bad| CliError::parse(e.line, "times.values", &format!("cannot parse `{bad}`")))?;
    }

    r.set("dispersion", "xi_max", &mut cfg.dispersion.xi_max)?;
    r.set("dispersion", "samples", &mut cfg.dispersion.samples)?;

    if let Some(dir) = r.get::<String>("output", "directory")? {
        cfg.output.directory = PathBuf::from(dir);
    }
    r.set("output", "prefix", &mut cfg.output.prefix)?;
    if let Some(units) = r.get::<String>("output", "units")? {
        let line = r.raw("output", "units").map_or(0, |e| e.line);
        cfg.output.units = match units.as_str() {
            "nondimensional" => Units::Nondimensional,
            "physical" => Units::Physical,
            other => return Err(CliError::parse(line, "output.units", &format!("unknown units `{other}`"))),
        };
    }
    cfg.preset = preset_name;
    cfg.validate()?;
    Ok(cfg)
}

/// Comma- or whitespace-separated numbers.
pub fn parse_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| s.to_string()))
        .collect()
}

fn blank() -> ScenarioConfig {
    let mut cfg = preset("open-sea-2004").expect("built-in preset");
    cfg.preset = None;
    cfg.output.prefix = "run".into();
    cfg
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

/// Text form accepted by [`parse_config`]; every field is written out.
pub fn emit(cfg: &ScenarioConfig) -> String {
    let mut s = String::new();
    if let Some(p) = &cfg.preset {
        let _ = writeln!(s, "preset = {p}\n");
    }
    let p = &cfg.physical;
    let _ = writeln!(s, "[physical]");
    let _ = writeln!(s, "amplitude = {}", p.amplitude);
    let _ = writeln!(s, "depth = {}", p.depth);
    let _ = writeln!(s, "wavelength = {}", p.wavelength);
    let _ = writeln!(s, "gravity = {}", p.gravity);
    let _ = writeln!(s, "vorticity = {}", p.vorticity);
    let _ = writeln!(s, "bed_current = {}", p.bed_current);
    let _ = writeln!(s, "source_half_width = {}", p.source_half_width);
    let _ = writeln!(s, "quake_duration = {}\n", p.quake_duration);

    let b = &cfg.bed;
    let _ = writeln!(s, "[bed]");
    match &b.shape {
        ShapeKind::RaisedCosine => s.push_str("shape = raised-cosine\n"),
        ShapeKind::SmoothBump => s.push_str("shape = smooth-bump\n"),
        ShapeKind::Dipole => s.push_str("shape = dipole\n"),
        ShapeKind::Tabulated(path) => {
            let _ = writeln!(s, "shape = tabulated\nfile = {}", path.display());
        }
    }
    let _ = writeln!(s, "amplitude = {}", b.amplitude);
    let _ = writeln!(s, "power = {}", b.power);
    let _ = writeln!(s, "instantaneous = {}\n", b.instantaneous);

    let _ = writeln!(s, "[solver]");
    let _ = writeln!(s, "kind = {}", cfg.solver.kind.as_str());
    let _ = writeln!(s, "threshold = {}", cfg.solver.threshold);
    let _ = writeln!(s, "ramp_nodes = {}\n", cfg.solver.ramp_nodes);

    let _ = writeln!(s, "[grid]");
    match cfg.grid.half_width {
        Some(hw) => {
            let _ = writeln!(s, "half_width = {hw}");
        }
        None => s.push_str("half_width = auto\n"),
    }
    let _ = writeln!(s, "points = {}\n", cfg.grid.points);

    let _ = writeln!(s, "[times]\nvalues = {}\n", join(&cfg.times));

    let _ = writeln!(s, "[dispersion]");
    let _ = writeln!(s, "xi_max = {}", cfg.dispersion.xi_max);
    let _ = writeln!(s, "samples = {}\n", cfg.dispersion.samples);

    let _ = writeln!(s, "[output]");
    let _ = writeln!(s, "directory = {}", cfg.output.directory.display());
    let _ = writeln!(s, "prefix = {}", cfg.output.prefix);
    let units = match cfg.output.units {
        Units::Nondimensional => "nondimensional",
        Units::Physical => "physical",
    };
    let _ = writeln!(s, "units = {units}");
    s
}

impl ScenarioConfig {
    pub fn derived(&self) -> Result<Derived, CliError> {
        derive_nondim(&self.physical).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// Bed motion in scaled variables. `instantaneous` in the config or the
    /// instant-thrust solver select the step ramp.
    pub fn bed_motion(&self) -> Result<BedMotion, CliError> {
        let d = self.derived()?;
        let amplitude = self.bed.amplitude;
        let shape = match &self.bed.shape {
            ShapeKind::RaisedCosine => BedShape::RaisedCosine { amplitude },
            ShapeKind::SmoothBump => BedShape::SmoothBump {
                amplitude,
                power: self.bed.power,
            },
            ShapeKind::Dipole => BedShape::Dipole { amplitude },
            ShapeKind::Tabulated(path) => {
                let t = TabulatedShape::load(path).map_err(|e| CliError::Validation(e.to_string()))?;
                let values = t.values.iter().map(|v| v * amplitude).collect();
                BedShape::Tabulated(TabulatedShape::new(t.knots, values).map_err(|e| CliError::Validation(e.to_string()))?)
            }
        };
        let step = self.bed.instantaneous || self.solver.kind == SolverKind::ShallowInstant;
        let ramp = if step {
            Ramp::step()
        } else {
            Ramp::smooth(d.duration).map_err(|e| CliError::Validation(format!("quake_duration: {e}")))?
        };
        BedMotion::new(shape, d.half_width, ramp).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// Checks every invariant that does not need the solver to run.
    pub fn validate(&self) -> Result<(), CliError> {
        let d = self.derived()?;
        let kind = self.solver.kind;
        let needs_smooth = matches!(
            kind,
            SolverKind::Spectral | SolverKind::ShallowDuhamel | SolverKind::StationaryPhase
        );
        if needs_smooth {
            if self.bed.instantaneous {
                return Err(CliError::Validation(format!(
                    "solver {} needs a smooth ramp (bed.instantaneous = true)",
                    kind.as_str()
                )));
            }
            if !(self.physical.quake_duration > 0.0) {
                return Err(CliError::Validation(format!(
                    "solver {} needs physical.quake_duration > 0",
                    kind.as_str()
                )));
            }
        }
        if matches!(kind, SolverKind::Spectral | SolverKind::StationaryPhase) && self.physical.vorticity != 0.0 {
            return Err(CliError::Validation(format!(
                "solver {} requires A = 0 (physical.vorticity = 0), got {}",
                kind.as_str(),
                self.physical.vorticity
            )));
        }
        if kind != SolverKind::Dispersion && !(d.params.drift.abs() < 1.0) {
            return Err(CliError::Validation(format!(
                "surface drift |C| = {} must be below 1",
                d.params.drift.abs()
            )));
        }
        if self.times.is_empty() && kind != SolverKind::Dispersion {
            return Err(CliError::Validation("times.values must list at least one time".into()));
        }
        if self.times.iter().any(|t| !t.is_finite()) || self.times.windows(2).any(|w| w[1] < w[0]) {
            return Err(CliError::Validation("times.values must be finite and sorted".into()));
        }
        if matches!(kind, SolverKind::ShallowInstant | SolverKind::StationaryPhase) && self.times.iter().any(|t| *t <= 0.0) {
            return Err(CliError::Validation(format!("solver {} needs times > 0", kind.as_str())));
        }
        if self.grid.points < 4 || !self.grid.points.is_power_of_two() {
            return Err(CliError::Validation(format!(
                "grid.points must be a power of two >= 4, got {}",
                self.grid.points
            )));
        }
        if let Some(hw) = self.grid.half_width {
            if !(hw > 0.0) || !hw.is_finite() {
                return Err(CliError::Validation(format!("grid.half_width must be positive, got {hw}")));
            }
        }
        if self.solver.ramp_nodes < 2 {
            return Err(CliError::Validation("solver.ramp_nodes must be at least 2".into()));
        }
        if !(self.solver.threshold > 0.0) {
            return Err(CliError::Validation("solver.threshold must be positive".into()));
        }
        if !(self.dispersion.xi_max > 0.0) || self.dispersion.samples == 0 {
            return Err(CliError::Validation("dispersion needs xi_max > 0 and samples >= 1".into()));
        }
        if self.output.prefix.is_empty() || self.output.prefix.contains(['/', '\\']) {
            return Err(CliError::Validation("output.prefix must be a plain file name stem".into()));
        }
        if !matches!(self.bed.shape, ShapeKind::Tabulated(_)) {
            self.bed_motion()?;
        }
        Ok(())
    }
}

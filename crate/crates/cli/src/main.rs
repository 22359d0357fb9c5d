use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tsunami_cli::config::parse_list;
use tsunami_cli::study::write_report;
use tsunami_cli::{
    compare, convergence_study, params_summary, parse_config, preset, run, CliError, Ladder, ScenarioConfig,
    SolverKind, PRESETS,
};

#[derive(Parser)]
#[command(name = "tsunami", version, about = "Linear surface response to a moving sea bed")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Scenario {
    /// Scenario file (`key = value` lines in sections).
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// Built-in scenario, used when no file is given.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    prefix: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the solver named in the scenario (spectral unless set).
    Simulate(Scenario),
    /// Shallow-water closed form.
    Shallow {
        #[command(flatten)]
        scenario: Scenario,
        /// Instantaneous-thrust limit instead of the ramped Duhamel form.
        #[arg(long)]
        instant: bool,
    },
    /// Large-time asymptotics with an applicability column.
    StationaryPhase(Scenario),
    /// Tabulate both dispersion branches.
    Dispersion(Scenario),
    /// Print the scaled parameter group and regime flags.
    Params(Scenario),
    /// Max-norm gap between the spectral and shallow-water solutions.
    Compare(Scenario),
    /// Error ladder in depth ratio or grid size with a fitted order.
    Converge {
        #[command(flatten)]
        scenario: Scenario,
        /// Comma-separated depth ratios.
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        delta: Option<String>,
        /// Comma-separated grid sizes.
        #[arg(long)]
        points: Option<String>,
    },
}

fn load(s: &Scenario) -> Result<ScenarioConfig, CliError> {
    let mut cfg = match (&s.config, &s.preset) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.clone(),
                source: e,
            })?;
            parse_config(&text)?
        }
        (None, Some(name)) => preset(name).ok_or_else(|| {
            CliError::Validation(format!("unknown preset `{name}` (known: {})", PRESETS.join(", ")))
        })?,
        (None, None) => {
            return Err(CliError::Validation(
                "give --config <file> or --preset <name>".into(),
            ))
        }
    };
    if let Some(dir) = &s.output_dir {
        cfg.output.directory = dir.clone();
    }
    if let Some(prefix) = &s.prefix {
        cfg.output.prefix = prefix.clone();
    }
    Ok(cfg)
}

fn with_solver(s: &Scenario, kind: SolverKind) -> Result<ScenarioConfig, CliError> {
    let mut cfg = load(s)?;
    cfg.solver.kind = kind;
    Ok(cfg)
}

fn simulate(cfg: ScenarioConfig) -> Result<(), CliError> {
    let artifacts = run(&cfg)?;
    for f in &artifacts.files {
        println!("{}", f.display());
    }
    Ok(())
}

fn ladder(delta: &Option<String>, points: &Option<String>) -> Result<Ladder, CliError> {
    let values = parse_list(delta.as_deref().or(points.as_deref()).unwrap_or_default())
        .map_err(CliError::Validation)?;
    if delta.is_some() {
        return Ok(Ladder::Delta(values));
    }
    values
        .iter()
        .map(|&v| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(CliError::Validation(format!("grid size {v} is not a positive integer")))
            }
        })
        .collect::<Result<_, _>>()
        .map(Ladder::Points)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(s) => simulate(load(&s)?),
        Command::Shallow { scenario, instant } => {
            let kind = if instant {
                SolverKind::ShallowInstant
            } else {
                SolverKind::ShallowDuhamel
            };
            simulate(with_solver(&scenario, kind)?)
        }
        Command::StationaryPhase(s) => simulate(with_solver(&s, SolverKind::StationaryPhase)?),
        Command::Dispersion(s) => simulate(with_solver(&s, SolverKind::Dispersion)?),
        Command::Params(s) => {
            print!("{}", params_summary(&load(&s)?)?);
            Ok(())
        }
        Command::Compare(s) => {
            let cfg = load(&s)?;
            let report = compare(&cfg)?;
            print!("{report}");
            println!("{}", write_report(&cfg, "compare", &report.to_csv())?.display());
            Ok(())
        }
        Command::Converge { scenario, delta, points } => {
            let cfg = load(&scenario)?;
            let report = convergence_study(&cfg, &ladder(&delta, &points)?)?;
            print!("{report}");
            println!("{}", write_report(&cfg, "converge", &report.to_csv())?.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

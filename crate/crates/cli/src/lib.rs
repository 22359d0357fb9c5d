//! Scenario files, solver dispatch and output writing for the `tsunami` binary.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod run;
pub mod study;

pub use config::{emit, parse_config, preset, ScenarioConfig, SolverKind, PRESETS};
pub use error::CliError;
pub use run::{params_summary, run, solve, Artifacts, Solution};
pub use study::{compare, convergence_study, CompareReport, ConvergenceReport, Ladder};

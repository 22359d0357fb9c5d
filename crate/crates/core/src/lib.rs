//! Linear tsunami generation by a moving seabed beneath a sheared current.
//!
//! Surface displacement is computed from a prescribed bed motion
//! h(x, t) = a(t) b(x) in scaled variables: exactly (per Fourier mode) for
//! irrotational flow, in closed form in the shallow-water limit, and by
//! stationary phase for large times.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bed;
pub mod convergence;
pub mod error;
pub mod evolve;
pub mod fourier;
pub mod grid;
pub mod kernel;
pub mod nondim;
pub mod quad;
pub mod series;
pub mod shallow;
pub mod stphase;

pub use bed::{BedMotion, BedShape, Ramp, TabulatedShape};
pub use error::{Error, Result};
pub use evolve::{evolve_surface, oracle_direct, EvolveOptions, OracleOptions};
pub use grid::SpectralGrid;
pub use kernel::{branches, sqrt_tau, sqrt_tau_derivs, tau, transfer_function, BranchPair, DispersionSample};
pub use nondim::{derive_nondim, to_nondim, to_physical, Derived, NondimParams, PhysicalParams};
pub use series::{SeriesMeta, SolverTag, SurfaceSeries, Units};
pub use shallow::{duhamel_surface, instant_thrust_surface, wavefront_bounds, WaveStructure};
pub use stphase::{
    applicability_report, asymptotic_envelope, asymptotic_surface, find_stationary_point, ApplicabilityReport,
    Regime, StationaryPoint,
};

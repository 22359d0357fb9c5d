use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the solvers and parameter pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("series is already in {0} units")]
    UnitMismatch(&'static str),

    #[error("derivative of order (x: {order_x}, t: {order_t}) is not available{reason}")]
    UnsupportedDerivative {
        order_x: u8,
        order_t: u8,
        reason: &'static str,
    },

    #[error("space-time transform is distributional at zero frequency")]
    ZeroFrequency,

    #[error("operation requires a nonzero wavenumber")]
    ZeroWavenumber,

    #[error("dispersion quadratic has a vanishing leading coefficient")]
    DegenerateQuadratic,

    #[error("(xi={xi}, omega={omega}) lies on a dispersion branch")]
    OnDispersionBranch { xi: f64, omega: f64 },

    #[error("boundary system is singular at (xi={xi}, omega={omega})")]
    SingularSystem { xi: f64, omega: f64 },

    #[error("causal support needs a half-width of {required}, grid has {available}")]
    WouldWrap { required: f64, available: f64 },

    #[error("time-domain evolution is only available without vorticity (alpha = {alpha})")]
    VorticityUnsupported { alpha: f64 },

    #[error("surface drift |C| = {c} must be below 1")]
    UnitCurrent { c: f64 },

    #[error("an instantaneous ramp is not accepted here: {0}")]
    InstantaneousRamp(&'static str),

    #[error("no stationary point for X - C = {offset}")]
    NoStationaryPoint { offset: f64 },

    #[error("stationary phase not applicable: t*|d2| = {measure} is below {threshold}")]
    NotApplicable { measure: f64, threshold: f64 },

    #[error("quadrature missed tolerance {tolerance:e} (estimate {estimate:e}) after {evaluations} evaluations")]
    QuadratureFailure {
        tolerance: f64,
        estimate: f64,
        evaluations: usize,
    },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("ladder needs at least 3 points, got {0}")]
    InsufficientLadder(usize),

    #[error("invalid bed: {0}")]
    InvalidBed(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::RootFinding(_)
                | Error::OnDispersionBranch { .. }
                | Error::SingularSystem { .. }
                | Error::DegenerateQuadratic
        )
    }
}

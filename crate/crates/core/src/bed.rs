//! Separable seabed motion h(x, t) = a(t) b(x).
//!
//! The spatial profile is given on the canonical interval u = x / L in [-1, 1]
//! and stretched to the half-width L. The ramp a(t) is the quintic smoothstep
//! 10u^3 - 15u^4 + 6u^5 (u = t / t0), or the Heaviside step in the
//! instantaneous limit.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{sinc, Poly, INV_SQRT_2PI};
use crate::kernel::sech;
use crate::nondim::NondimParams;

/// Time profile of the uplift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ramp {
    pub duration: f64,
    pub instantaneous: bool,
}

impl Ramp {
    pub fn smooth(duration: f64) -> Result<Self> {
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "duration",
                value: duration,
            });
        }
        Ok(Self {
            duration,
            instantaneous: false,
        })
    }

    pub fn step() -> Self {
        Self {
            duration: 0.0,
            instantaneous: true,
        }
    }

    /// a^(order)(t).
    pub fn derivative(&self, order: u8, t: f64) -> f64 {
        if self.instantaneous {
            return match order {
                0 if t > 0.0 => 1.0,
                _ => 0.0,
            };
        }
        let t0 = self.duration;
        if t <= 0.0 {
            return 0.0;
        }
        if t >= t0 {
            return if order == 0 { 1.0 } else { 0.0 };
        }
        let u = t / t0;
        match order {
            0 => u * u * u * (10.0 + u * (-15.0 + 6.0 * u)),
            1 => 30.0 * u * u * (1.0 - u) * (1.0 - u) / t0,
            2 => 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u) / (t0 * t0),
            _ => f64::NAN,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.derivative(0, t)
    }

    /// a''(s) + 2 i C xi a'(s) - C^2 xi^2 a(s): the symbol of S^2 applied to the ramp.
    pub fn forcing_bracket(&self, xi: f64, s: f64, drift: f64) -> Complex64 {
        Complex64::new(
            self.derivative(2, s) - drift * drift * xi * xi * self.derivative(0, s),
            2.0 * drift * xi * self.derivative(1, s),
        )
    }

    /// Largest |a'| and |a''| over the ramp.
    pub fn derivative_bounds(&self) -> (f64, f64) {
        let t0 = self.duration;
        (1.875 / t0, 10.0 / 3f64.sqrt() / (t0 * t0))
    }

    /// a-hat(omega) = (2 pi)^(-1/2) * integral a'(t) exp(-i omega t) dt / (i omega).
    pub fn transform(&self, omega: f64) -> Result<Complex64> {
        if self.instantaneous {
            return Err(Error::InstantaneousRamp("space-time transform needs a smooth ramp"));
        }
        if omega == 0.0 {
            return Err(Error::ZeroFrequency);
        }
        let slope = Poly::new(vec![0.0, 0.0, 30.0, -60.0, 30.0]);
        let proper = slope.fourier_integral(0.0, 1.0, omega * self.duration);
        Ok(proper * INV_SQRT_2PI / Complex64::new(0.0, omega))
    }
}

/// User-facing description of the spatial profile b.
#[derive(Debug, Clone, PartialEq)]
pub enum BedShape {
    /// amplitude * (1 + cos(pi u)) / 2.
    RaisedCosine { amplitude: f64 },
    /// amplitude * (1 - u^2)^power; power >= 3 keeps b twice differentiable.
    SmoothBump { amplitude: f64, power: u32 },
    /// Odd down-up pair amplitude * k * u (1 - u^2)^3, normalized to peak `amplitude`.
    Dipole { amplitude: f64 },
    /// Clamped cubic spline through samples on the canonical interval.
    Tabulated(TabulatedShape),
}

impl fmt::Display for BedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BedShape::RaisedCosine { amplitude } => write!(f, "raised-cosine(amplitude={amplitude})"),
            BedShape::SmoothBump { amplitude, power } => {
                write!(f, "smooth-bump(amplitude={amplitude}, power={power})")
            }
            BedShape::Dipole { amplitude } => write!(f, "dipole(amplitude={amplitude})"),
            BedShape::Tabulated(t) => write!(f, "tabulated({} samples)", t.knots.len()),
        }
    }
}

/// Samples (u_i, b_i) with strictly increasing u_i in [-1, 1] and b = 0 at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedShape {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
}

impl TabulatedShape {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.len() != values.len() || knots.len() < 3 {
            return Err(Error::InvalidBed(
                "tabulated shape needs at least 3 (x, b) pairs".into(),
            ));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidBed("sample positions must be strictly increasing".into()));
        }
        if knots[0] < -1.0 || *knots.last().unwrap() > 1.0 {
            return Err(Error::InvalidBed(
                "sample positions must lie in [-1, 1] (units of the half-width)".into(),
            ));
        }
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = 1e-12 * scale.max(1.0);
        if values[0].abs() > tol || values.last().unwrap().abs() > tol {
            return Err(Error::InvalidBed("profile must vanish at both ends".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBed("non-finite sample".into()));
        }
        Ok(Self { knots, values })
    }

    /// Two-column plain text (x, b); blank lines and `#` comments are ignored,
    /// columns may be separated by whitespace or a comma.
    pub fn parse(text: &str) -> Result<Self> {
        let mut knots = Vec::new();
        let mut values = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if cols.len() != 2 {
                return Err(Error::InvalidBed(format!(
                    "line {}: expected two columns, found {}",
                    lineno + 1,
                    cols.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidBed(format!("line {}: cannot parse `{s}`", lineno + 1))
                })
            };
            knots.push(parse(cols[0])?);
            values.push(parse(cols[1])?);
        }
        Self::new(knots, values)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidBed(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Spline pieces in absolute coordinates.
    fn pieces(&self) -> Vec<Piece> {
        let u = &self.knots;
        let y = &self.values;
        let n = u.len() - 1;
        let h: Vec<f64> = (0..n).map(|i| u[i + 1] - u[i]).collect();
        // Clamped (zero end slope) second-derivative system, tridiagonal.
        let m = n + 1;
        let mut sub = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut sup = vec![0.0; m];
        let mut rhs = vec![0.0; m];
        diag[0] = 2.0 * h[0];
        sup[0] = h[0];
        rhs[0] = 6.0 * (y[1] - y[0]) / h[0];
        for i in 1..n {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        sub[n] = h[n - 1];
        diag[n] = 2.0 * h[n - 1];
        rhs[n] = -6.0 * (y[n] - y[n - 1]) / h[n - 1];
        // Thomas algorithm.
        for i in 1..m {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut mom = vec![0.0; m];
        mom[n] = rhs[n] / diag[n];
        for i in (0..n).rev() {
            mom[i] = (rhs[i] - sup[i] * mom[i + 1]) / diag[i];
        }
        (0..n)
            .map(|i| {
                let slope = (y[i + 1] - y[i]) / h[i] - h[i] * (2.0 * mom[i] + mom[i + 1]) / 6.0;
                let local = Poly::new(vec![
                    y[i],
                    slope,
                    0.5 * mom[i],
                    (mom[i + 1] - mom[i]) / (6.0 * h[i]),
                ]);
                Piece::new(u[i], u[i + 1], local.shifted(-u[i]))
            })
            .collect()
    }
}

/// Polynomial piece of a canonical profile on [lo, hi].
#[derive(Debug, Clone)]
struct Piece {
    lo: f64,
    hi: f64,
    p: [Poly; 3],
}

impl Piece {
    fn new(lo: f64, hi: f64, p: Poly) -> Self {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        Self {
            lo,
            hi,
            p: [p, d1, d2],
        }
    }
}

#[derive(Debug, Clone)]
enum Profile {
    Cosine,
    Pieces(Vec<Piece>),
}

impl Profile {
    fn from_shape(shape: &BedShape) -> Result<(Self, f64)> {
        let check_amp = |a: f64| {
            if a.is_finite() {
                Ok(a)
            } else {
                Err(Error::InvalidBed("amplitude must be finite".into()))
            }
        };
        Ok(match shape {
            BedShape::RaisedCosine { amplitude } => (Profile::Cosine, check_amp(*amplitude)?),
            BedShape::SmoothBump { amplitude, power } => {
                if !(3..=16).contains(power) {
                    return Err(Error::InvalidBed(format!(
                        "smooth bump power must lie in 3..=16, got {power}"
                    )));
                }
                let p = *power as usize;
                let mut coeffs = vec![0.0; 2 * p + 1];
                let mut binom = 1.0;
                for j in 0..=p {
                    coeffs[2 * j] = if j % 2 == 0 { binom } else { -binom };
                    binom = binom * (p - j) as f64 / (j + 1) as f64;
                }
                let poly = Poly::new(coeffs);
                (
                    Profile::Pieces(vec![Piece::new(-1.0, 1.0, poly)]),
                    check_amp(*amplitude)?,
                )
            }
            BedShape::Dipole { amplitude } => {
                // u (1 - u^2)^3 peaks at u = 7^(-1/2).
                let peak = 7f64.sqrt().recip() * (6.0f64 / 7.0).powi(3);
                let k = 1.0 / peak;
                let poly = Poly::new(vec![0.0, k, 0.0, -3.0 * k, 0.0, 3.0 * k, 0.0, -k]);
                (
                    Profile::Pieces(vec![Piece::new(-1.0, 1.0, poly)]),
                    check_amp(*amplitude)?,
                )
            }
            BedShape::Tabulated(t) => (Profile::Pieces(t.pieces()), 1.0),
        })
    }

    /// k-th derivative of the canonical profile at u.
    fn eval(&self, u: f64, k: usize) -> f64 {
        match self {
            Profile::Cosine => {
                if u.abs() >= 1.0 {
                    return 0.0;
                }
                match k {
                    0 => 0.5 * (1.0 + (PI * u).cos()),
                    1 => -0.5 * PI * (PI * u).sin(),
                    _ => -0.5 * PI * PI * (PI * u).cos(),
                }
            }
            Profile::Pieces(pieces) => {
                let first = pieces.first().map_or(0.0, |p| p.lo);
                let last = pieces.last().map_or(0.0, |p| p.hi);
                if u <= first || u >= last {
                    return 0.0;
                }
                let idx = pieces.partition_point(|p| p.hi <= u).min(pieces.len() - 1);
                pieces[idx].p[k].eval(u)
            }
        }
    }

    /// integral s(u) exp(-i k u) du over the support.
    fn transform(&self, k: f64) -> Complex64 {
        match self {
            Profile::Cosine => Complex64::new(cosine_transform(k), 0.0),
            Profile::Pieces(pieces) => pieces
                .iter()
                .map(|p| p.p[0].fourier_integral(p.lo, p.hi, k))
                .sum(),
        }
    }

    fn support(&self) -> (f64, f64) {
        match self {
            Profile::Cosine => (-1.0, 1.0),
            Profile::Pieces(p) => (p[0].lo, p[p.len() - 1].hi),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Profile::Cosine => vec![-1.0, 1.0],
            Profile::Pieces(p) => {
                let mut v: Vec<f64> = p.iter().map(|q| q.lo).collect();
                v.push(p[p.len() - 1].hi);
                v
            }
        }
    }
}

/// integral_{-1}^{1} (1 + cos(pi u))/2 exp(-i k u) du = pi^2 sin(k) / (k (pi^2 - k^2)).
fn cosine_transform(k: f64) -> f64 {
    let k = k.abs();
    let pi2 = PI * PI;
    if k < 0.5 * PI {
        pi2 * sinc(k) / (pi2 - k * k)
    } else if (k - PI).abs() < 0.5 * PI {
        // sin(k) = sin(pi - k)
        pi2 * sinc(PI - k) / (k * (PI + k))
    } else {
        pi2 * k.sin() / (k * (pi2 - k * k))
    }
}

/// Seabed motion h(x, t) = a(t) b(x) with b supported in [-L, L].
#[derive(Debug, Clone)]
pub struct BedMotion {
    pub shape: BedShape,
    pub half_width: f64,
    pub ramp: Ramp,
    profile: Profile,
    amplitude: f64,
}

impl BedMotion {
    pub fn new(shape: BedShape, half_width: f64, ramp: Ramp) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "half_width",
                value: half_width,
            });
        }
        if !ramp.instantaneous && !(ramp.duration > 0.0) {
            return Err(Error::NonPositiveParameter {
                name: "duration",
                value: ramp.duration,
            });
        }
        let (profile, amplitude) = Profile::from_shape(&shape)?;
        Ok(Self {
            shape,
            half_width,
            ramp,
            profile,
            amplitude,
        })
    }

    pub fn is_instantaneous(&self) -> bool {
        self.ramp.instantaneous
    }

    /// Same profile with the Heaviside ramp.
    pub fn instantaneous(&self) -> Self {
        Self {
            ramp: Ramp::step(),
            ..self.clone()
        }
    }

    pub fn description(&self) -> String {
        if self.ramp.instantaneous {
            format!("{} L={} ramp=step", self.shape, self.half_width)
        } else {
            format!(
                "{} L={} ramp=quintic(t0={})",
                self.shape, self.half_width, self.ramp.duration
            )
        }
    }

    /// b^(order)(x).
    pub fn profile(&self, order: u8, x: f64) -> f64 {
        let l = self.half_width;
        let u = x / l;
        self.amplitude * self.profile.eval(u, order as usize) / l.powi(order as i32)
    }

    /// a^(order_t)(t) * b^(order_x)(x).
    pub fn eval(&self, x: f64, t: f64, order_x: u8, order_t: u8) -> Result<f64> {
        if order_x > 2 || order_t > 2 {
            return Err(Error::UnsupportedDerivative {
                order_x,
                order_t,
                reason: " (orders above 2)",
            });
        }
        if self.ramp.instantaneous && order_t > 0 {
            return Err(Error::UnsupportedDerivative {
                order_x,
                order_t,
                reason: " for an instantaneous ramp",
            });
        }
        let a = self.ramp.derivative(order_t, t);
        if a == 0.0 {
            return Ok(0.0);
        }
        Ok(a * self.profile(order_x, x))
    }

    /// Support [x_lo, x_hi] of b.
    pub fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.profile.support();
        (lo * self.half_width, hi * self.half_width)
    }

    /// Points where b or one of its first two derivatives may fail to be smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.profile
            .breakpoints()
            .into_iter()
            .map(|u| u * self.half_width)
            .collect()
    }

    /// b-hat(xi).
    pub fn spectrum(&self, xi: f64) -> Complex64 {
        let l = self.half_width;
        self.profile.transform(xi * l) * (INV_SQRT_2PI * l * self.amplitude)
    }

    /// Spatial transform of the forcing S^2 h / cosh(delta D) at time s.
    pub fn theta_hat(&self, xi: f64, s: f64, nd: &NondimParams) -> Result<Complex64> {
        if self.ramp.instantaneous {
            return Err(Error::InstantaneousRamp("forcing needs a smooth ramp"));
        }
        let bracket = self.ramp.forcing_bracket(xi, s, nd.drift);
        Ok(bracket * self.spectrum(xi) * sech(nd.delta * xi))
    }

    /// h-tilde(xi, omega) = b-hat(xi) a-hat(omega), with a-hat built from a'.
    pub fn spacetime_transform(&self, xi: f64, omega: f64) -> Result<Complex64> {
        Ok(self.spectrum(xi) * self.ramp.transform(omega)?)
    }
}

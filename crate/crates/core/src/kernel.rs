//! Dispersion kernel tau(xi) = (xi / delta) tanh(delta xi), the derivatives of
//! its square root, dispersion branches for general vorticity, and the
//! frequency-domain transfer function from bed to surface.
//!
//! Hyperbolic functions only enter through tanh and exp(-2|z|), so nothing
//! overflows for large |delta xi|.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nondim::NondimParams;

/// Below this |delta xi| the Taylor series of tanh is used.
pub const SERIES_CUTOFF: f64 = 1e-4;

/// 1 / cosh(z) without overflow.
pub fn sech(z: f64) -> f64 {
    let e = (-z.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// z sech^2(z) without overflow.
fn z_sech2(z: f64) -> f64 {
    let s = sech(z);
    z * s * s
}

pub fn tau(xi: f64, delta: f64) -> f64 {
    let z = delta * xi;
    if z.abs() < SERIES_CUTOFF {
        let z2 = z * z;
        xi * xi * (1.0 - z2 / 3.0 + 2.0 * z2 * z2 / 15.0)
    } else {
        xi * z.tanh() / delta
    }
}

pub fn sqrt_tau(xi: f64, delta: f64) -> f64 {
    tau(xi, delta).sqrt()
}

/// tau, sqrt(tau) and the first two xi-derivatives of sqrt(tau).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSample {
    pub xi: f64,
    pub tau: f64,
    pub sqrt_tau: f64,
    pub d1: f64,
    pub d2: f64,
}

/// With z = delta xi and T = tanh z,
/// d1 = (T + z (1 - T^2)) / (2 sqrt(z T)) and
/// d2 = -delta ((T - z (1 - T^2))^2 + 4 z^2 T^2 (1 - T^2)) / (4 (z T)^(3/2)).
pub fn sqrt_tau_derivs(xi: f64, delta: f64) -> DispersionSample {
    let t = tau(xi, delta);
    let st = t.sqrt();
    let z = delta * xi;
    let (d1, d2) = if xi.abs() < 1e-12 {
        (xi.signum(), 0.0)
    } else if z.abs() < SERIES_CUTOFF {
        let z2 = z * z;
        let az = z.abs();
        (
            xi.signum() * (1.0 - 0.5 * z2 + 19.0 / 72.0 * z2 * z2),
            delta * (-az + 19.0 / 18.0 * az * z2 - 55.0 / 72.0 * az * z2 * z2),
        )
    } else {
        let th = z.tanh();
        let zs = z_sech2(z); // z (1 - T^2)
        let zt = z * th;
        let d1 = (th + zs) / (2.0 * zt.sqrt());
        let lead = th - zs;
        let d2 = -delta * (lead * lead + 4.0 * zt * th * zs) / (4.0 * zt * zt.sqrt());
        (d1, d2)
    };
    DispersionSample {
        xi,
        tau: t,
        sqrt_tau: st,
        d1,
        d2,
    }
}

/// The two real frequencies at which the transfer-function denominator vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPair {
    pub xi: f64,
    /// Root with the larger value.
    pub omega_plus: f64,
    pub omega_minus: f64,
}

/// Roots of delta Q^2 cosh(delta xi) - (xi + alpha Q) sinh(delta xi) = 0 in
/// Q = C xi + omega, returned as omega.
pub fn branches(xi: f64, nd: &NondimParams) -> Result<BranchPair> {
    if xi == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    nd.require_positive_delta()?;
    let delta = nd.delta;
    let th = (delta * xi).tanh();
    // After dividing by cosh: delta Q^2 - alpha T Q - xi T = 0.
    let a = delta;
    let b = -nd.alpha * th;
    let c = -xi * th;
    if a == 0.0 {
        return Err(Error::DegenerateQuadratic);
    }
    let (q1, q2) = if b == 0.0 {
        let r = (-c / a).sqrt();
        (r, -r)
    } else {
        let disc = (b * b - 4.0 * a * c).max(0.0);
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q == 0.0 {
            (0.0, 0.0)
        } else {
            (q / a, c / q)
        }
    };
    let w1 = q1 - nd.drift * xi;
    let w2 = q2 - nd.drift * xi;
    Ok(BranchPair {
        xi,
        omega_plus: w1.max(w2),
        omega_minus: w1.min(w2),
    })
}

/// Transfer-function denominator divided by cosh(delta xi),
/// delta^2 Q^2 - (delta xi + alpha delta Q) tanh(delta xi), with a magnitude
/// scale (sum of absolute values of its terms) for relative tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Denominator {
    pub value: f64,
    pub scale: f64,
}

pub fn denominator(xi: f64, omega: f64, nd: &NondimParams) -> Denominator {
    let delta = nd.delta;
    let q = nd.drift * xi + omega;
    let th = (delta * xi).tanh();
    let quad = delta * delta * q * q;
    let lin = delta * xi * th;
    let shear = nd.alpha * delta * q * th;
    Denominator {
        value: quad - lin - shear,
        scale: quad + lin.abs() + shear.abs(),
    }
}

/// Multiplier m with f-tilde = m h-tilde:
/// delta^2 Q (omega + beta xi) / (delta^2 Q^2 cosh(delta xi) - (delta xi + alpha delta Q) sinh(delta xi)).
pub fn transfer_function(xi: f64, omega: f64, nd: &NondimParams) -> Result<Complex64> {
    let den = denominator(xi, omega, nd);
    if den.value.abs() < 1e-13 * den.scale || den.scale == 0.0 {
        return Err(Error::OnDispersionBranch { xi, omega });
    }
    let q = nd.drift * xi + omega;
    let num = nd.delta * nd.delta * q * (omega + nd.beta * xi);
    Ok(Complex64::new(num * sech(nd.delta * xi) / den.value, 0.0))
}

/// Coefficients of psi-tilde(xi, y, omega) = D1 exp(delta xi y) + D2 exp(-delta xi y)
/// from the bed condition xi (D1 + D2) = -(omega + beta xi) h-tilde and the
/// surface condition (xi + alpha Q)(D1 e^z + D2 e^-z) = delta Q^2 (D1 e^z - D2 e^-z).
pub fn stream_function_coefficients(
    xi: f64,
    omega: f64,
    h_tilde: Complex64,
    nd: &NondimParams,
) -> Result<(Complex64, Complex64)> {
    if xi == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    let delta = nd.delta;
    let z = delta * xi;
    let q = nd.drift * xi + omega;
    let (ep, em) = (z.exp(), (-z).exp());
    let plus = xi + nd.alpha * q + delta * q * q;
    let minus = xi + nd.alpha * q - delta * q * q;
    // Rows: [xi, xi], [minus e^z, plus e^-z].
    let det = xi * plus * em - xi * minus * ep;
    let scale = (xi * plus * em).abs() + (xi * minus * ep).abs();
    if !(det.abs() >= 1e-13 * scale) || scale == 0.0 {
        return Err(Error::SingularSystem { xi, omega });
    }
    let rhs = -(omega + nd.beta * xi) * h_tilde;
    let d1 = rhs * (plus * em) / det;
    let d2 = -rhs * (minus * ep) / det;
    Ok((d1, d2))
}

/// f-tilde recovered from the stream-function coefficients, -xi/Q psi-tilde(xi, 1, omega).
pub fn surface_from_stream(
    xi: f64,
    omega: f64,
    coeffs: (Complex64, Complex64),
    nd: &NondimParams,
) -> Complex64 {
    let z = nd.delta * xi;
    let q = nd.drift * xi + omega;
    let psi = coeffs.0 * z.exp() + coeffs.1 * (-z).exp();
    psi * (-xi / q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_basics() {
        assert_eq!(tau(0.0, 0.02), 0.0);
        // tanh(0.02)/0.02
        assert!((tau(1.0, 0.02) - 0.999_866_687_996_546_6).abs() < 1e-15);
        let r = 1e-6 / sqrt_tau(1e-6, 0.02);
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn series_seam_is_continuous() {
        for &delta in &[0.02, 1.0, 3.0] {
            let xi = SERIES_CUTOFF / delta;
            let below = tau(xi * (1.0 - 1e-9), delta);
            let above = tau(xi * (1.0 + 1e-9), delta);
            assert!(((below - above) / above).abs() < 1e-8);
            let s_below = sqrt_tau_derivs(xi * (1.0 - 1e-12), delta);
            let s_above = sqrt_tau_derivs(xi * (1.0 + 1e-12), delta);
            assert!((s_below.d1 - s_above.d1).abs() < 1e-12);
            assert!((s_below.d2 - s_above.d2).abs() < 1e-12 * delta);
        }
    }

    #[test]
    fn reference_values_of_derivatives() {
        // Symbolic differentiation of sqrt(tau) at (xi, delta).
        let cases = [
            (1.0, 1.0, 0.676_966_388_475_597, -0.410_406_522_013_767),
            (0.3, 0.5, 0.988_882_158_422_361, -0.073_247_358_424_486_6),
            (2.0, 0.02, 0.999_200_675_034_458, -0.000_798_650_451_798_626),
        ];
        for (xi, delta, d1, d2) in cases {
            let s = sqrt_tau_derivs(xi, delta);
            assert!((s.d1 - d1).abs() < 1e-13, "d1 at {xi},{delta}");
            assert!((s.d2 - d2).abs() < 1e-13, "d2 at {xi},{delta}");
            let m = sqrt_tau_derivs(-xi, delta);
            assert_eq!(m.d1, -s.d1);
            assert_eq!(m.d2, s.d2);
        }
    }

    #[test]
    fn huge_arguments_stay_finite() {
        let s = sqrt_tau_derivs(1e6, 1.0);
        assert!(s.d1.is_finite() && s.d2.is_finite() && s.d1 > 0.0 && s.d2 < 0.0);
        assert!(sech(1000.0) == 0.0 && sech(-1000.0) == 0.0);
    }

    #[test]
    fn branches_reduce_without_vorticity() {
        let nd = NondimParams::irrotational(0.02, 0.0);
        let b = branches(1.5, &nd).unwrap();
        assert!((b.omega_plus - sqrt_tau(1.5, 0.02)).abs() < 1e-15);
        assert!((b.omega_minus + sqrt_tau(1.5, 0.02)).abs() < 1e-15);

        let nd = NondimParams::irrotational(0.02, 0.01);
        let b = branches(2.0, &nd).unwrap();
        assert!((b.omega_plus - (-0.02 + sqrt_tau(2.0, 0.02))).abs() < 1e-14);
        assert!((b.omega_minus - (-0.02 - sqrt_tau(2.0, 0.02))).abs() < 1e-14);
        assert_eq!(branches(0.0, &nd).unwrap_err(), Error::ZeroWavenumber);
    }

    #[test]
    fn transfer_function_cases() {
        let still = NondimParams::irrotational(0.3, 0.0);
        assert_eq!(transfer_function(1.2, 0.0, &still).unwrap().norm(), 0.0);
        let nd = NondimParams::new(1e-3, 0.4, 0.05, 0.02);
        let b = branches(0.8, &nd).unwrap();
        assert!(matches!(
            transfer_function(0.8, b.omega_plus, &nd),
            Err(Error::OnDispersionBranch { .. })
        ));
        assert!(matches!(
            stream_function_coefficients(0.8, b.omega_minus, Complex64::new(1.0, 0.0), &nd),
            Err(Error::SingularSystem { .. })
        ));
    }

    #[test]
    fn zero_forcing_gives_zero_coefficients() {
        let nd = NondimParams::new(1e-3, 0.4, 0.05, 0.02);
        let (d1, d2) =
            stream_function_coefficients(0.7, 0.3, Complex64::new(0.0, 0.0), &nd).unwrap();
        assert_eq!(d1.norm(), 0.0);
        assert_eq!(d2.norm(), 0.0);
    }
}

//! Transform conventions and exact finite Fourier integrals of polynomials.
//!
//! Spatial transforms use `hat(xi) = (2 pi)^(-1/2) * integral f(x) exp(-i x xi) dx`
//! and space-time transforms `(2 pi)^(-1) * double integral f(x, t) exp(-i (x xi + t omega))`.
//! Every spectrum in the crate follows these normalizations.

use num_complex::Complex64;

/// (2 pi)^(-1/2).
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_677_939_946_059_934_381_868_475_858_631_164_934_657_665_9;

/// sin(z)/z, accurate near zero.
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// (exp(i p) - 1) / (i p), accurate near zero.
pub fn phase_primitive(p: f64) -> Complex64 {
    Complex64::from_polar(sinc(0.5 * p), 0.5 * p)
}

/// Real polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::new(vec![0.0]);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Coefficients of `q(y) = p(c + y)`.
    pub fn shifted(&self, c: f64) -> Poly {
        let n = self.coeffs.len();
        let mut out = self.coeffs.clone();
        // Repeated synthetic division (Taylor shift).
        for i in 0..n {
            for j in (i..n - 1).rev() {
                out[j] += c * out[j + 1];
            }
        }
        Poly::new(out)
    }

    /// Coefficients of `q(y) = p(s * y)`.
    pub fn scaled(&self, s: f64) -> Poly {
        let mut f = 1.0;
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c * f;
                    f *= s;
                    v
                })
                .collect(),
        )
    }

    /// Exact value of `integral_lo^hi p(x) exp(-i xi x) dx` (no normalization).
    pub fn fourier_integral(&self, lo: f64, hi: f64, xi: f64) -> Complex64 {
        let c = 0.5 * (lo + hi);
        let w = 0.5 * (hi - lo);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // q(u) = p(c + w u) on [-1, 1]; the integral is w * exp(-i xi c) * J(xi w).
        let q = self.shifted(c).scaled(w);
        let k = xi * w;
        let j = if k.abs() <= 2.0 {
            symmetric_series(&q, k)
        } else {
            symmetric_by_parts(&q, k)
        };
        Complex64::from_polar(w, -xi * c) * j
    }
}

/// J(k) = integral_{-1}^{1} q(u) exp(-i k u) du by the moment series.
fn symmetric_series(q: &Poly, k: f64) -> Complex64 {
    // moment(m) = integral u^m du over [-1, 1].
    let moment = |m: usize| if m.is_multiple_of(2) { 2.0 / (m as f64 + 1.0) } else { 0.0 };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut factor = Complex64::new(1.0, 0.0); // (-i k)^n / n!
    let mut small_run = 0;
    for n in 0..200 {
        let m: f64 = q
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * moment(n + j))
            .sum();
        let term = factor * m;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm().max(1e-300) {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        factor *= Complex64::new(0.0, -k) / (n as f64 + 1.0);
    }
    sum
}

/// J(k) by repeated integration by parts; exact for polynomials.
fn symmetric_by_parts(q: &Poly, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    let mut deriv = q.clone();
    let mut at_hi = Complex64::new(0.0, 0.0);
    let mut at_lo = Complex64::new(0.0, 0.0);
    let mut denom = ik;
    for _ in 0..=q.degree() {
        at_hi += deriv.eval(1.0) / denom;
        at_lo += deriv.eval(-1.0) / denom;
        deriv = deriv.derivative();
        denom *= ik;
    }
    let e_hi = Complex64::from_polar(1.0, -k);
    let e_lo = Complex64::from_polar(1.0, k);
    -(e_hi * at_hi - e_lo * at_lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::GaussLegendre;

    fn brute(p: &Poly, lo: f64, hi: f64, xi: f64) -> Complex64 {
        let rule = GaussLegendre::new(64);
        rule.integrate(
            |x| Complex64::from_polar(p.eval(x), -xi * x),
            lo,
            hi,
            64,
        )
    }

    #[test]
    fn shift_and_scale() {
        let p = Poly::new(vec![1.0, -2.0, 0.5, 3.0]);
        let q = p.shifted(0.7).scaled(1.3);
        for &y in &[-1.0, -0.2, 0.4, 1.0] {
            assert!((q.eval(y) - p.eval(0.7 + 1.3 * y)).abs() < 1e-12);
        }
    }

    #[test]
    fn fourier_integral_matches_quadrature_across_regimes() {
        let bump = Poly::new(vec![1.0, 0.0, -3.0, 0.0, 3.0, 0.0, -1.0]); // (1-x^2)^3
        let ramp = Poly::new(vec![0.0, 0.0, 30.0, -60.0, 30.0]);
        for &(lo, hi) in &[(-1.0, 1.0), (0.0, 1.0), (0.3, 2.5)] {
            for &xi in &[0.0, 1e-7, 0.3, 1.9, 2.1, 4.0, 17.0, 230.0] {
                for p in [&bump, &ramp] {
                    let exact = p.fourier_integral(lo, hi, xi);
                    let reference = brute(p, lo, hi, xi);
                    assert!(
                        (exact - reference).norm() < 1e-12,
                        "lo={lo} hi={hi} xi={xi}: {exact} vs {reference}"
                    );
                }
            }
        }
    }

    #[test]
    fn phase_primitive_limits() {
        assert!((phase_primitive(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-16);
        let p = 0.37;
        let direct = (Complex64::new(0.0, p).exp() - 1.0) / Complex64::new(0.0, p);
        assert!((phase_primitive(p) - direct).norm() < 1e-15);
    }
}

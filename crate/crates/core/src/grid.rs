use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Periodic grid on [-x_dom, x_dom) with n (a power of two) uniform nodes and
/// wavenumbers xi_k = pi k / x_dom, k in [-n/2, n/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    pub x_dom: f64,
    pub n: usize,
}

impl SpectralGrid {
    pub fn new(x_dom: f64, n: usize) -> Result<Self> {
        if !(x_dom > 0.0) || !x_dom.is_finite() {
            return Err(Error::InvalidGrid(format!("half-width must be positive, got {x_dom}")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("point count must be a power of two >= 4, got {n}")));
        }
        Ok(Self { x_dom, n })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.x_dom / self.n as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.x_dom + self.spacing() * j as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Signed mode index stored at FFT slot `m`.
    pub fn mode_index(&self, m: usize) -> i64 {
        let n = self.n as i64;
        let m = m as i64;
        if m < n / 2 {
            m
        } else {
            m - n
        }
    }

    pub fn wavenumber(&self, k: i64) -> f64 {
        PI * k as f64 / self.x_dom
    }

    /// Wavenumbers in FFT slot order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n).map(|m| self.wavenumber(self.mode_index(m))).collect()
    }

    pub fn max_wavenumber(&self) -> f64 {
        self.wavenumber(self.n as i64 / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let g = SpectralGrid::new(4.0, 8).unwrap();
        assert_eq!(g.nodes(), vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        let k: Vec<i64> = (0..8).map(|m| g.mode_index(m)).collect();
        assert_eq!(k, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        assert!(SpectralGrid::new(4.0, 12).is_err());
        assert!(SpectralGrid::new(0.0, 16).is_err());
    }
}

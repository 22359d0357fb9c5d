//! Empirical convergence orders from error ladders.

use crate::error::{Error, Result};

/// Least-squares slope of log(err) against log(h).
pub fn fit_order(h: &[f64], err: &[f64]) -> Result<f64> {
    if h.len() != err.len() {
        return Err(Error::InvalidArgument(format!(
            "ladder has {} steps but {} errors",
            h.len(),
            err.len()
        )));
    }
    if h.len() < 3 {
        return Err(Error::InsufficientLadder(h.len()));
    }
    if h.iter().chain(err).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "steps and errors must be positive and finite".into(),
        ));
    }
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("ladder steps must differ".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Strictly increasing or strictly decreasing, with at least three entries.
pub fn check_ladder(values: &[f64]) -> Result<()> {
    if values.len() < 3 {
        return Err(Error::InsufficientLadder(values.len()));
    }
    let up = values.windows(2).all(|w| w[1] > w[0]);
    let down = values.windows(2).all(|w| w[1] < w[0]);
    if up || down {
        Ok(())
    } else {
        Err(Error::InvalidArgument("ladder must be strictly monotone".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_power_law() {
        let h = [0.1, 0.05, 0.025, 0.0125];
        let e: Vec<f64> = h.iter().map(|v: &f64| 3.0 * v.powf(2.5)).collect();
        assert!((fit_order(&h, &e).unwrap() - 2.5).abs() < 1e-12);
    }

    #[test]
    fn short_ladders_are_rejected() {
        assert_eq!(fit_order(&[0.1], &[1.0]), Err(Error::InsufficientLadder(1)));
        assert_eq!(check_ladder(&[1.0, 2.0]), Err(Error::InsufficientLadder(2)));
        assert!(check_ladder(&[1.0, 3.0, 2.0]).is_err());
        assert!(check_ladder(&[4.0, 2.0, 1.0]).is_ok());
    }
}

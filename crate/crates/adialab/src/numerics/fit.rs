//! Leading-order power-law extraction, `y ~ c * eps^(-gamma)`.

use crate::error::{Error, Result};

/// Result of a log-log least-squares fit `log y = log c - gamma * log eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticFit {
    /// Leading coefficient `c` (> 0).
    pub coefficient: f64,
    /// Decay exponent `gamma` in `c * eps^(-gamma)`.
    pub exponent: f64,
    /// Root-mean-square deviation of the fit in log space.
    pub residual: f64,
    pub n_points: usize,
}

/// Unweighted least squares in log-log coordinates. Samples are `(eps, y)`
/// pairs with `eps > 0` distinct and `y > 0`.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<AsymptoticFit> {
    if samples.len() < 2 {
        return Err(Error::invalid(format!(
            "fit_power_law: need at least 2 samples, got {}",
            samples.len()
        )));
    }
    for &(eps, y) in samples {
        if !(eps > 0.0) {
            return Err(Error::invalid(format!("fit_power_law: eps must be positive, got {eps}")));
        }
        if !(y > 0.0) {
            return Err(Error::invalid(format!("fit_power_law: y must be positive, got {y}")));
        }
    }
    for (i, &(ei, _)) in samples.iter().enumerate() {
        if samples[i + 1..].iter().any(|&(ej, _)| ej == ei) {
            return Err(Error::invalid(format!("fit_power_law: duplicate eps value {ei}")));
        }
    }

    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|&(e, _)| e.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, y)| y.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let slope = sxy / sxx;
    let exponent = -slope;
    let intercept = y_mean - slope * x_mean;

    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let r = y - (intercept + slope * x);
        ss += r * r;
    }
    let residual = (ss / n).sqrt();

    Ok(AsymptoticFit {
        coefficient: intercept.exp(),
        exponent,
        residual,
        n_points: samples.len(),
    })
}

use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{RngSeed, STREAM_SAMPLER};
use crate::error::{Error, Result};
use crate::losses::ns_weight;

/// Marginal distribution of the independent components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Marginal {
    Gaussian,
    /// Exponentiated Gaussian draws.
    LogNormal,
}

/// Monte Carlo estimate of `Cov(y_k, w(y))` for every component.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightCorrelationReport {
    pub marginal: Marginal,
    pub d: usize,
    pub n: usize,
    pub covariance: Vec<f64>,
    pub std_error: Vec<f64>,
    /// `covariance / std_error` per component.
    pub z: Vec<f64>,
    pub max_abs_z: f64,
}

impl WeightCorrelationReport {
    /// True when every component passes `|z| < threshold`.
    pub fn uncorrelated_at(&self, threshold: f64) -> bool {
        self.max_abs_z < threshold
    }
}

/// Checks that `y` and `w(y)` are uncorrelated for IID `N(1, 4)` components.
pub fn check_c3_uncorrelatedness(d: usize, n: usize, seed: RngSeed) -> Result<WeightCorrelationReport> {
    check_weight_correlation(d, n, seed, Marginal::Gaussian, 1.0, 2.0)
}

/// Same statistic for IID components with the given marginal, built from
/// `N(mean, sd²)` draws.
pub fn check_weight_correlation(
    d: usize,
    n: usize,
    seed: RngSeed,
    marginal: Marginal,
    mean: f64,
    sd: f64,
) -> Result<WeightCorrelationReport> {
    if d <= 3 {
        return Err(Error::InvalidArgument(format!(
            "the weight has a finite mean only for d > 3, got d = {d}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two draws".into()));
    }
    let normal = Normal::new(mean, sd).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = seed.stream(STREAM_SAMPLER);
    let mut draws = vec![0.0; n * d];
    let mut weights = vec![0.0; n];
    for j in 0..n {
        let y = &mut draws[j * d..(j + 1) * d];
        for v in y.iter_mut() {
            let g: f64 = normal.sample(&mut rng);
            *v = match marginal {
                Marginal::Gaussian => g,
                Marginal::LogNormal => g.exp(),
            };
        }
        weights[j] = ns_weight(y)?;
    }

    let nf = n as f64;
    let w_mean = weights.iter().sum::<f64>() / nf;
    let mut covariance = vec![0.0; d];
    let mut std_error = vec![0.0; d];
    let mut z = vec![0.0; d];
    for k in 0..d {
        let y_mean = (0..n).map(|j| draws[j * d + k]).sum::<f64>() / nf;
        let products: Vec<f64> = (0..n)
            .map(|j| (draws[j * d + k] - y_mean) * (weights[j] - w_mean))
            .collect();
        let cov = products.iter().sum::<f64>() / nf;
        let var = products.iter().map(|p| (p - cov) * (p - cov)).sum::<f64>() / (nf - 1.0);
        covariance[k] = cov;
        std_error[k] = (var / nf).sqrt();
        z[k] = cov / std_error[k];
    }
    let max_abs_z = z.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    Ok(WeightCorrelationReport {
        marginal,
        d,
        n,
        covariance,
        std_error,
        z,
        max_abs_z,
    })
}

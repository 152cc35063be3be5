use nalgebra::DMatrix;

use super::mvn::MultivariateNormal;
use super::{RngSeed, SimOutput, STREAM_SAMPLER};
use crate::error::{Error, Result};
use crate::losses::centered_sum_of_squares;
use crate::panel::{Orientation, Panel};

#[derive(Debug, Clone, Copy)]
pub struct TruncationConfig {
    /// Proposals drawn per batch.
    pub batch_size: usize,
    /// Minimum acceptance rate checked after the first batch.
    pub acceptance_floor: f64,
    /// Hard cap on the number of batches.
    pub max_batches: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            batch_size: 4096,
            acceptance_floor: 1e-4,
            max_batches: 100_000,
        }
    }
}

/// Draws from `N(mu, sigma)` restricted to `{y : Σ (μ(y) − y_i)² ≥ delta}`
/// by rejection.
///
/// Accepted draws are the columns of the returned `d × count` panel, so
/// every series has Nash-Sutcliffe weight at most `1/delta`.
pub fn sample_truncated_mvn(
    mu: &[f64],
    sigma: &DMatrix<f64>,
    delta: f64,
    count: usize,
    seed: RngSeed,
    config: TruncationConfig,
) -> Result<SimOutput> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidArgument(format!("delta must be finite and ≥ 0, got {delta}")));
    }
    if count == 0 || config.batch_size == 0 {
        return Err(Error::EmptyInput);
    }
    let mvn = MultivariateNormal::new(mu, sigma)?;
    let d = mvn.dim();
    let mut rng = seed.stream(STREAM_SAMPLER);
    let mut accepted: Vec<f64> = Vec::with_capacity(count * d);
    let (mut proposed, mut kept) = (0usize, 0usize);

    for batch in 0..config.max_batches {
        for _ in 0..config.batch_size {
            let draw = mvn.sample(&mut rng);
            proposed += 1;
            if centered_sum_of_squares(draw.as_slice())? >= delta {
                kept += 1;
                if accepted.len() < count * d {
                    accepted.extend_from_slice(draw.as_slice());
                }
            }
        }
        let rate = kept as f64 / proposed as f64;
        if batch == 0 && rate < config.acceptance_floor {
            return Err(Error::RejectionTooAggressive {
                rate,
                floor: config.acceptance_floor,
            });
        }
        if accepted.len() == count * d {
            let units = DMatrix::from_column_slice(d, count, &accepted);
            return Ok(SimOutput {
                y: Panel::from_units(units, Orientation::SeriesAsColumns)?,
                x: None,
                theta_true: None,
                acceptance_rate: Some(rate),
                component_means: None,
            });
        }
    }
    Err(Error::RejectionTooAggressive {
        rate: kept as f64 / proposed.max(1) as f64,
        floor: config.acceptance_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::losses::ns_weight;

    #[test]
    fn zero_delta_accepts_everything() {
        let out = sample_truncated_mvn(
            &[0.0; 3],
            &DMatrix::identity(3, 3),
            0.0,
            100,
            RngSeed(1),
            TruncationConfig::default(),
        )
        .unwrap();
        assert_eq!(out.acceptance_rate, Some(1.0));
        assert_eq!(out.y.series_count(), 100);
    }

    #[test]
    fn accepted_draws_respect_threshold() {
        let delta = 30.0;
        let out = sample_truncated_mvn(
            &[1.0; 10],
            &(DMatrix::identity(10, 10) * 4.0),
            delta,
            2000,
            RngSeed(2),
            TruncationConfig::default(),
        )
        .unwrap();
        let rate = out.acceptance_rate.unwrap();
        assert!(rate > 0.0 && rate < 1.0);
        for s in out.y.iter_series() {
            assert!(centered_sum_of_squares(s).unwrap() >= delta);
            assert!(ns_weight(s).unwrap() <= 1.0 / delta);
        }
    }

    #[test]
    fn hopeless_threshold_is_reported() {
        let err = sample_truncated_mvn(
            &[0.0; 3],
            &(DMatrix::identity(3, 3) * 0.01),
            1e6,
            10,
            RngSeed(3),
            TruncationConfig {
                batch_size: 256,
                ..TruncationConfig::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::RejectionTooAggressive { .. }));
    }
}

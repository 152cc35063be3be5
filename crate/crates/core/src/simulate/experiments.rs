use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use super::mvn::MultivariateNormal;
use super::{Correlation, RngSeed, Scenario, SimConfig, SimOutput, STREAM_COEFFICIENTS, STREAM_MEAN, STREAM_NOISE, STREAM_PREDICTORS};
use crate::error::{Error, Result};
use crate::panel::{Orientation, Panel};
use crate::regression::DesignMatrix;

const EXP1_VARIANCE: f64 = 4.0;

fn global_mean(m: &DMatrix<f64>) -> f64 {
    m.iter().sum::<f64>() / m.len() as f64
}

/// Simulation experiment #1, scenarios a–e, as a `d × n` panel.
///
/// * a: `N(1_d, 4I)`, then shifted to a global sample mean of exactly 1.
/// * b: a, exponentiated and scaled to overall mean 1.
/// * c: component means `μ_k ~ N(1, 1)`, covariance `4I`.
/// * d: c with covariance `4R`, `R` the `correlation` matrix with parameter `rho`.
/// * e: d, exponentiated and scaled to overall mean 1.
///
/// a–e draw their noise from the same stream, so for one seed they differ
/// only through the mean vector and the covariance factor.
pub fn generate_exp1(
    scenario: Scenario,
    d: usize,
    n: usize,
    correlation: Correlation,
    rho: f64,
    seed: RngSeed,
) -> Result<SimOutput> {
    if !scenario.is_exp1() {
        return Err(Error::InvalidArgument(format!("{scenario} is not an experiment #1 scenario")));
    }
    if d < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!("need d ≥ 2 and n ≥ 2, got d = {d}, n = {n}")));
    }
    let varying_means = matches!(scenario, Scenario::Exp1c | Scenario::Exp1d | Scenario::Exp1e);
    let dependent = matches!(scenario, Scenario::Exp1d | Scenario::Exp1e);

    let means: Vec<f64> = if varying_means {
        let normal = Normal::new(1.0, 1.0).expect("valid normal");
        let mut rng = seed.stream(STREAM_MEAN);
        (0..d).map(|_| normal.sample(&mut rng)).collect()
    } else {
        vec![1.0; d]
    };
    let sigma = if dependent {
        correlation.covariance(d, EXP1_VARIANCE, rho)
    } else {
        DMatrix::identity(d, d) * EXP1_VARIANCE
    };
    let mvn = MultivariateNormal::new(&means, &sigma)?;
    let mut values = mvn.sample_columns(n, &mut seed.stream(STREAM_NOISE));

    match scenario {
        Scenario::Exp1a | Scenario::Exp1b => {
            let shift = 1.0 - global_mean(&values);
            values.iter_mut().for_each(|v| *v += shift);
        }
        _ => {}
    }
    if matches!(scenario, Scenario::Exp1b | Scenario::Exp1e) {
        values.iter_mut().for_each(|v| *v = v.exp());
        let scale = global_mean(&values);
        values.iter_mut().for_each(|v| *v /= scale);
    }

    Ok(SimOutput {
        y: Panel::from_units(values, Orientation::SeriesAsColumns)?,
        x: None,
        theta_true: None,
        acceptance_rate: None,
        component_means: varying_means.then_some(means),
    })
}

/// Simulation experiments #2 (`d × n`) and #3 (`n × d`).
///
/// `Y = A X + b 1ᵀ + E` with standard normal predictors,
/// `a_ij ~ N(0, 0.5)`, `b_i ~ N(1, 4)` (second parameters are variances) and
/// log-normal errors `E_j = exp(ε_j)`, `ε_j ~ N(μ_ε, 4R)` where
/// `μ_ε ~ N(0, 36 I)` and `R` is the configured correlation matrix.
///
/// Both scenarios draw identical numbers; #3 is the transposed layout of #2.
pub fn generate_exp_regression(config: &SimConfig) -> Result<SimOutput> {
    let SimConfig { scenario, d, n, p, rho, correlation, seed, zero_noise, .. } = *config;
    if !scenario.is_regression() {
        return Err(Error::InvalidArgument(format!("{scenario} is not a regression scenario")));
    }
    if d < 2 || n < p + 2 {
        return Err(Error::InvalidArgument(format!(
            "need d ≥ 2 and n ≥ p + 2, got d = {d}, n = {n}, p = {p}"
        )));
    }

    // n × p, one row per observation
    let mut rng = seed.stream(STREAM_PREDICTORS);
    let mut predictors = DMatrix::zeros(n, p);
    for j in 0..n {
        for c in 0..p {
            predictors[(j, c)] = rng.sample::<f64, _>(StandardNormal);
        }
    }

    let mut rng = seed.stream(STREAM_COEFFICIENTS);
    let slope = Normal::new(0.0, 0.5_f64.sqrt()).expect("valid normal");
    let intercept = Normal::new(1.0, 2.0).expect("valid normal");
    let mut theta = DMatrix::zeros(d, p + 1);
    for i in 0..d {
        for c in 0..p {
            theta[(i, c)] = slope.sample(&mut rng);
        }
    }
    for i in 0..d {
        theta[(i, p)] = intercept.sample(&mut rng);
    }

    let mut rng = seed.stream(STREAM_MEAN);
    let error_mean: Vec<f64> = (0..d).map(|_| 6.0 * rng.sample::<f64, _>(StandardNormal)).collect();
    let errors = if zero_noise {
        DMatrix::zeros(d, n)
    } else {
        let mvn = MultivariateNormal::new(&error_mean, &correlation.covariance(d, 4.0, rho))?;
        mvn.sample_columns(n, &mut seed.stream(STREAM_NOISE)).map(f64::exp)
    };

    let design = DesignMatrix::from_observations(predictors, Orientation::SeriesAsColumns)?;
    let units = &theta * design.augmented().transpose() + errors;
    let mut y = Panel::from_units(units, Orientation::SeriesAsColumns)?;
    let mut x = design;
    if scenario == Scenario::Exp3 {
        y = y.transpose_orientation();
        x = DesignMatrix::from_observations(x.observation_matrix().clone(), Orientation::SeriesAsRows)?;
    }

    Ok(SimOutput {
        y,
        x: Some(x),
        theta_true: Some(theta),
        acceptance_rate: None,
        component_means: Some(error_mean),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regression::fit_multi_ols;

    #[test]
    fn exp1a_global_mean_is_one() {
        let out = generate_exp1(Scenario::Exp1a, 20, 50, Correlation::Ar1, 0.5, RngSeed(3)).unwrap();
        let m = out.y.series_matrix();
        assert!((global_mean(m) - 1.0).abs() < 1e-12);
        assert_eq!((out.y.nrows(), out.y.ncols()), (20, 50));
    }

    #[test]
    fn lognormal_scenarios_positive_with_unit_mean() {
        for s in [Scenario::Exp1b, Scenario::Exp1e] {
            let out = generate_exp1(s, 10, 30, Correlation::Ar1, 0.5, RngSeed(4)).unwrap();
            let m = out.y.series_matrix();
            assert!(m.iter().all(|&v| v > 0.0));
            assert!((global_mean(m) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exp1a_and_exp1c_share_noise() {
        let a = generate_exp1(Scenario::Exp1a, 8, 12, Correlation::Ar1, 0.5, RngSeed(5)).unwrap();
        let c = generate_exp1(Scenario::Exp1c, 8, 12, Correlation::Ar1, 0.5, RngSeed(5)).unwrap();
        let mu = c.component_means.unwrap();
        // (a − c + μ) is the constant global shift applied to a
        let offset = a.y.get(0, 0) - c.y.get(0, 0) + mu[0];
        for j in 0..12 {
            for (k, m) in mu.iter().enumerate() {
                let diff = a.y.get(j, k) - c.y.get(j, k) + m;
                assert!((diff - offset).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn regression_noiseless_recovers_theta() {
        let mut cfg = SimConfig::new(Scenario::Exp2).with_dims(5, 40).with_seed(9);
        cfg.p = 3;
        cfg.zero_noise = true;
        let out = generate_exp_regression(&cfg).unwrap();
        let fit = fit_multi_ols(out.x.as_ref().unwrap(), &out.y).unwrap();
        let truth = out.theta_true.unwrap();
        assert!((fit.theta - truth).amax() < 1e-8);
    }

    #[test]
    fn exp3_is_transposed_exp2() {
        let mut cfg = SimConfig::new(Scenario::Exp2).with_dims(6, 20).with_seed(11);
        cfg.p = 2;
        let two = generate_exp_regression(&cfg).unwrap();
        cfg.scenario = Scenario::Exp3;
        let three = generate_exp_regression(&cfg).unwrap();
        assert_eq!((two.y.nrows(), two.y.ncols()), (6, 20));
        assert_eq!((three.y.nrows(), three.y.ncols()), (20, 6));
        assert_eq!(three.y, two.y.transpose_orientation());
        assert_eq!(three.x.unwrap().to_matrix(), two.x.unwrap().to_matrix().transpose());
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(generate_exp1(Scenario::Exp1a, 1, 10, Correlation::Ar1, 0.5, RngSeed(1)).is_err());
        assert!(generate_exp1(Scenario::Exp2, 10, 10, Correlation::Ar1, 0.5, RngSeed(1)).is_err());
        let mut cfg = SimConfig::new(Scenario::Exp2).with_dims(4, 5);
        cfg.p = 6;
        assert!(generate_exp_regression(&cfg).is_err());
    }
}

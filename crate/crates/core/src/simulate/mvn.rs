use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Multivariate normal `N(μ, Σ)` sampled as `μ + L z` with `L Lᵀ = Σ`.
///
/// `L` is the Cholesky factor when `Σ` is positive definite. Singular but
/// positive semidefinite matrices fall back to `V diag(√λ)` from the
/// symmetric eigendecomposition.
#[derive(Debug, Clone)]
pub struct MultivariateNormal {
    mean: DVector<f64>,
    factor: DMatrix<f64>,
}

impl MultivariateNormal {
    pub fn new(mean: &[f64], covariance: &DMatrix<f64>) -> Result<Self> {
        let d = mean.len();
        if d == 0 {
            return Err(Error::EmptyInput);
        }
        if covariance.shape() != (d, d) {
            return Err(Error::InvalidCovariance(format!(
                "expected {d}×{d}, got {}×{}",
                covariance.nrows(),
                covariance.ncols()
            )));
        }
        if covariance.iter().any(|v| !v.is_finite()) || mean.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCovariance("non-finite entries".into()));
        }
        let scale = covariance.amax().max(f64::MIN_POSITIVE);
        for i in 0..d {
            for j in 0..i {
                if (covariance[(i, j)] - covariance[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::InvalidCovariance(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        let factor = match covariance.clone().cholesky() {
            Some(chol) => chol.unpack(),
            None => {
                let eig = covariance.clone().symmetric_eigen();
                let max = eig.eigenvalues.amax();
                if let Some(min) = eig.eigenvalues.iter().copied().find(|&l| l < -1e-10 * max.max(1.0)) {
                    return Err(Error::InvalidCovariance(format!("negative eigenvalue {min:e}")));
                }
                let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
                &eig.eigenvectors * DMatrix::from_diagonal(&roots)
            }
        };
        Ok(Self {
            mean: DVector::from_column_slice(mean),
            factor,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// One draw; consumes exactly `d` standard normals from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        let z = DVector::from_fn(self.dim(), |_, _| rng.sample::<f64, _>(StandardNormal));
        &self.mean + &self.factor * z
    }

    /// `count` draws as the columns of a `d × count` matrix.
    pub fn sample_columns<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim(), count);
        for j in 0..count {
            out.set_column(j, &self.sample(rng));
        }
        out
    }
}

/// AR(1) correlation matrix (`rho^|i−j|`) scaled to the given variance.
pub fn ar1_covariance(d: usize, variance: f64, rho: f64) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |i, j| variance * rho.powi(i.abs_diff(j) as i32))
}

/// Exchangeable correlation matrix (`1` on the diagonal, `rho` elsewhere)
/// scaled to the given variance.
pub fn exchangeable_covariance(d: usize, variance: f64, rho: f64) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |i, j| if i == j { variance } else { variance * rho })
}

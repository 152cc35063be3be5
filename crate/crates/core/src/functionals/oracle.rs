//! Numeric minimization used to cross-check the closed-form estimators.
//!
//! Nothing here calls the closed forms. The objectives evaluate realized
//! losses directly and supply analytic gradients; [`minimize`] runs a
//! Barzilai-Borwein gradient iteration until the gradient norm drops below
//! the tolerance. The iteration has no line search, which is sound for the
//! strictly convex quadratics it is used on.

use crate::error::{Error, Result};
use crate::functionals::series_weights;
use crate::losses::Loss;
use crate::panel::Panel;
use crate::regression::DesignMatrix;

pub trait Objective {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
}

#[derive(Debug, Clone, Copy)]
pub struct MinimizeConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for MinimizeConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200_000,
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gradient descent with Barzilai-Borwein steps.
pub fn minimize(objective: &dyn Objective, start: &[f64], config: MinimizeConfig) -> Result<Vec<f64>> {
    if start.len() != objective.dim() {
        return Err(Error::ShapeMismatch(format!(
            "start point of length {} for objective of dimension {}",
            start.len(),
            objective.dim()
        )));
    }
    let mut x = start.to_vec();
    let mut g = objective.gradient(&x);
    let mut gnorm = norm(&g);
    if gnorm < config.tol {
        return Ok(x);
    }
    // first step: unit-length move along the negative gradient, capped
    let mut step = (1.0 / gnorm).min(1e-2);
    for _ in 0..config.max_iter {
        let x_next: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
        let g_next = objective.gradient(&x_next);
        let s: Vec<f64> = x_next.iter().zip(&x).map(|(a, b)| a - b).collect();
        let yk: Vec<f64> = g_next.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &yk);
        x = x_next;
        g = g_next;
        gnorm = norm(&g);
        if gnorm < config.tol {
            return Ok(x);
        }
        step = if sy > 0.0 {
            dot(&s, &s) / sy
        } else {
            (1.0 / gnorm).min(1e-2)
        };
    }
    Err(Error::NoConvergence {
        iterations: config.max_iter,
        grad_norm: gnorm,
        last: x,
    })
}

/// Central finite differences with per-coordinate step `h·(1 + |x_i|)`.
pub fn central_difference_gradient(objective: &dyn Objective, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            let step = h * (1.0 + x[i].abs());
            probe[i] = x[i] + step;
            let up = objective.value(&probe);
            probe[i] = x[i] - step;
            let down = objective.value(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * step)
        })
        .collect()
}

fn loss_weights(y: &Panel, loss: Loss) -> Result<Vec<f64>> {
    match loss {
        Loss::Euclidean => Ok(vec![1.0; y.series_count()]),
        Loss::SquaredError => Ok(vec![1.0 / y.series_len() as f64; y.series_count()]),
        Loss::NashSutcliffe => series_weights(y, 0.0),
        Loss::NashSutcliffeExtended(a) => series_weights(y, a),
    }
}

/// Realized loss of the constant prediction `θ 1ᵀ`, as a function of `θ`.
///
/// ```text
/// f(θ)   = (1/n) Σ_j w_j ‖θ − y_j‖²
/// ∇f(θ)  = (2/n) Σ_j w_j (θ − y_j)
/// ```
pub struct ConstantPredictionObjective<'a> {
    y: &'a Panel,
    weights: Vec<f64>,
}

impl<'a> ConstantPredictionObjective<'a> {
    pub fn new(y: &'a Panel, loss: Loss) -> Result<Self> {
        Ok(Self {
            y,
            weights: loss_weights(y, loss)?,
        })
    }
}

impl Objective for ConstantPredictionObjective<'_> {
    fn dim(&self) -> usize {
        self.y.series_len()
    }

    fn value(&self, theta: &[f64]) -> f64 {
        let mut total = 0.0;
        for (s, w) in self.y.iter_series().zip(&self.weights) {
            let sq: f64 = theta.iter().zip(s).map(|(t, v)| (t - v) * (t - v)).sum();
            total += w * sq;
        }
        total / self.y.series_count() as f64
    }

    fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; theta.len()];
        for (s, w) in self.y.iter_series().zip(&self.weights) {
            for k in 0..theta.len() {
                g[k] += w * (theta[k] - s[k]);
            }
        }
        let scale = 2.0 / self.y.series_count() as f64;
        g.iter_mut().for_each(|v| *v *= scale);
        g
    }
}

/// Realized loss of the linear predictor `z_j = θ x̃_j` with `θ` flattened
/// row-major (`d` rows of `p + 1` coefficients, intercept last).
///
/// ```text
/// f(θ)        = (1/n) Σ_j w_j ‖θ x̃_j − y_j‖²
/// ∂f/∂θ_{ic}  = (2/n) Σ_j w_j (θ x̃_j − y_j)_i x̃_{jc}
/// ```
pub struct RegressionObjective<'a> {
    y: &'a Panel,
    augmented: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl<'a> RegressionObjective<'a> {
    pub fn new(x: &DesignMatrix, y: &'a Panel, loss: Loss) -> Result<Self> {
        if x.observations() != y.series_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} design observations vs {} series",
                x.observations(),
                y.series_count()
            )));
        }
        let aug = x.augmented();
        let augmented = (0..aug.nrows())
            .map(|j| aug.row(j).iter().copied().collect())
            .collect();
        Ok(Self {
            y,
            augmented,
            weights: loss_weights(y, loss)?,
        })
    }

    fn width(&self) -> usize {
        self.augmented[0].len()
    }

    fn residual(&self, theta: &[f64], j: usize) -> Vec<f64> {
        let q = self.width();
        let xj = &self.augmented[j];
        let yj = self.y.series(j);
        (0..self.y.series_len())
            .map(|i| {
                let row = &theta[i * q..(i + 1) * q];
                dot(row, xj) - yj[i]
            })
            .collect()
    }
}

impl Objective for RegressionObjective<'_> {
    fn dim(&self) -> usize {
        self.y.series_len() * self.width()
    }

    fn value(&self, theta: &[f64]) -> f64 {
        let mut total = 0.0;
        for j in 0..self.y.series_count() {
            let r = self.residual(theta, j);
            total += self.weights[j] * dot(&r, &r);
        }
        total / self.y.series_count() as f64
    }

    fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        let q = self.width();
        let mut g = vec![0.0; theta.len()];
        for j in 0..self.y.series_count() {
            let r = self.residual(theta, j);
            let xj = &self.augmented[j];
            let w = self.weights[j];
            for (i, ri) in r.iter().enumerate() {
                for c in 0..q {
                    g[i * q + c] += w * ri * xj[c];
                }
            }
        }
        let scale = 2.0 / self.y.series_count() as f64;
        g.iter_mut().for_each(|v| *v *= scale);
        g
    }
}

/// Minimizes the realized loss over constant predictions starting at `start`.
pub fn numeric_minimize(y: &Panel, loss: Loss, start: &[f64], tol: f64) -> Result<Vec<f64>> {
    let objective = ConstantPredictionObjective::new(y, loss)?;
    minimize(
        &objective,
        start,
        MinimizeConfig {
            tol,
            ..MinimizeConfig::default()
        },
    )
}

/// Minimizes the realized loss of a linear predictor; returns `θ` row-major.
pub fn numeric_minimize_regression(
    x: &DesignMatrix,
    y: &Panel,
    loss: Loss,
    start: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    let objective = RegressionObjective::new(x, y, loss)?;
    minimize(
        &objective,
        start,
        MinimizeConfig {
            tol,
            ..MinimizeConfig::default()
        },
    )
}

//! Closed-form linear regression: one-dimensional OLS, multi-dimensional OLS
//! and Nash-Sutcliffe (weighted) regression.
//!
//! Every estimator works on `n` observations, each with a predictor vector
//! `x_j ∈ ℝᵖ` and a response vector `y_j ∈ ℝᵈ` (series `j` of the response
//! [`Panel`]). With the augmented design `X̃ = [X 1]` (`n × (p+1)`) and the
//! diagonal weight matrix `W`, the coefficient matrix `θ = [A | b]`
//! (`d × (p+1)`) solves
//!
//! ```text
//! θ = Yᵀ W X̃ (X̃ᵀ W X̃)⁻¹
//! ```
//!
//! with `W = I` for OLS and `W = diag(w(y_1), …, w(y_n))` for Nash-Sutcliffe
//! regression. The inverse is never formed: the weighted design is factored
//! by QR (see [`solve`]).

mod solve;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::series_weights;
use crate::losses::{centered_sum_of_squares, VARIANCE_FLOOR};
use crate::panel::{Orientation, Panel, SplitAxis, SplitSpec};

pub use solve::RANK_TOLERANCE;

/// Predictor matrix, one row per observation.
///
/// The orientation tag records the raw layout the predictors came in:
/// `p × n` for [`Orientation::SeriesAsColumns`] and `n × p` for
/// [`Orientation::SeriesAsRows`].
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    // n × p
    observations: DMatrix<f64>,
    orientation: Orientation,
}

/// `[X 1]`: appends a ones column to an `n × p` predictor matrix.
pub fn augment(predictors: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, p) = predictors.shape();
    DMatrix::from_fn(n, p + 1, |j, c| if c < p { predictors[(j, c)] } else { 1.0 })
}

impl DesignMatrix {
    /// From the raw matrix in the given orientation.
    pub fn new(raw: DMatrix<f64>, orientation: Orientation) -> Result<Self> {
        let observations = match orientation {
            Orientation::SeriesAsRows => raw,
            Orientation::SeriesAsColumns => raw.transpose(),
        };
        Self::from_observations(observations, orientation)
    }

    /// From an `n × p` matrix regardless of orientation.
    pub fn from_observations(observations: DMatrix<f64>, orientation: Orientation) -> Result<Self> {
        if observations.nrows() == 0 {
            return Err(Error::EmptyInput);
        }
        for j in 0..observations.nrows() {
            for c in 0..observations.ncols() {
                let value = observations[(j, c)];
                if !value.is_finite() {
                    let (row, col) = match orientation {
                        Orientation::SeriesAsRows => (j, c),
                        Orientation::SeriesAsColumns => (c, j),
                    };
                    return Err(Error::NonFinite { row, col, value });
                }
            }
        }
        Ok(Self {
            observations,
            orientation,
        })
    }

    /// No predictors at all: the augmented design is the ones vector.
    pub fn intercept_only(n: usize, orientation: Orientation) -> Result<Self> {
        Self::from_observations(DMatrix::zeros(n, 0), orientation)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Number of observations `n`.
    pub fn observations(&self) -> usize {
        self.observations.nrows()
    }

    /// Number of predictors `p`.
    pub fn predictors(&self) -> usize {
        self.observations.ncols()
    }

    /// The `n × p` predictor matrix.
    pub fn observation_matrix(&self) -> &DMatrix<f64> {
        &self.observations
    }

    /// The raw matrix in this design's orientation.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        match self.orientation {
            Orientation::SeriesAsRows => self.observations.clone(),
            Orientation::SeriesAsColumns => self.observations.transpose(),
        }
    }

    /// `X̃`, `n × (p+1)`.
    pub fn augmented(&self) -> DMatrix<f64> {
        augment(&self.observations)
    }

    /// Splits observations `0..boundary` from the rest.
    pub fn split_observations(&self, boundary: usize) -> Result<(Self, Self)> {
        let n = self.observations();
        SplitSpec::new(boundary, SplitAxis::Time).validate(n)?;
        Ok((
            Self {
                observations: self.observations.rows(0, boundary).into_owned(),
                orientation: self.orientation,
            },
            Self {
                observations: self.observations.rows(boundary, n - boundary).into_owned(),
                orientation: self.orientation,
            },
        ))
    }

    /// Keeps only the listed predictor columns, in the given order.
    pub fn select_predictors(&self, columns: &[usize]) -> Result<Self> {
        if let Some(&c) = columns.iter().find(|&&c| c >= self.predictors()) {
            return Err(Error::ShapeMismatch(format!(
                "predictor {c} out of range for p = {}",
                self.predictors()
            )));
        }
        let n = self.observations();
        Ok(Self {
            observations: DMatrix::from_fn(n, columns.len(), |j, c| self.observations[(j, columns[c])]),
            orientation: self.orientation,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FitMethod {
    Ols1d,
    MultiOls,
    NsRegression,
    NsExtended(f64),
    /// Row-oriented model fitted by the column-oriented Nash-Sutcliffe loss.
    ColumnwiseNs,
}

impl FitMethod {
    pub fn name(&self) -> &'static str {
        match self {
            FitMethod::Ols1d => "ols1d",
            FitMethod::MultiOls => "multiols",
            FitMethod::NsRegression => "nsreg",
            FitMethod::NsExtended(_) => "nsreg-ext",
            FitMethod::ColumnwiseNs => "columnwise-ns",
        }
    }
}

/// Estimated `θ = [A | b]` with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// `d × (p+1)`, intercept in the last column.
    pub theta: DMatrix<f64>,
    pub method: FitMethod,
    pub orientation: Orientation,
    /// Ratio of extreme singular values of the (weighted) augmented design.
    pub condition_estimate: f64,
    /// Per-observation weights used by the solve, when not uniform.
    pub weights: Option<Vec<f64>>,
}

impl FitResult {
    pub fn response_dim(&self) -> usize {
        self.theta.nrows()
    }

    pub fn predictors(&self) -> usize {
        self.theta.ncols() - 1
    }

    /// `A`, `d × p`.
    pub fn slopes(&self) -> DMatrix<f64> {
        self.theta.columns(0, self.predictors()).into_owned()
    }

    /// `b`, length `d`.
    pub fn intercepts(&self) -> Vec<f64> {
        self.theta.column(self.predictors()).iter().copied().collect()
    }
}

fn check_design(x: &DesignMatrix, y: &Panel) -> Result<()> {
    if x.orientation() != y.orientation() {
        return Err(Error::OrientationMismatch(format!(
            "design is {} but responses are {}",
            x.orientation(),
            y.orientation()
        )));
    }
    if x.observations() != y.series_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} design observations vs {} response series",
            x.observations(),
            y.series_count()
        )));
    }
    Ok(())
}

/// `n × d` response matrix with one row per observation.
fn response_rows(y: &Panel) -> DMatrix<f64> {
    y.series_matrix().transpose()
}

/// Ordinary least squares for a single response vector.
pub fn fit_ols_1d(x: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
    if x.observations() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} design observations vs {} responses",
            x.observations(),
            y.len()
        )));
    }
    if let Some((i, v)) = y.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { row: i, col: 0, value: *v });
    }
    let responses = DMatrix::from_column_slice(y.len(), 1, y);
    let ls = solve::weighted_least_squares(&x.augmented(), &responses, None)?;
    Ok(FitResult {
        theta: ls.coefficients.transpose(),
        method: FitMethod::Ols1d,
        orientation: x.orientation(),
        condition_estimate: ls.condition,
        weights: None,
    })
}

/// One-dimensional OLS for every response component separately.
///
/// Component `k` is regressed on the predictors listed in `columns[k]` only;
/// the other slopes of row `k` of `θ` are zero. With every component using
/// all predictors the result equals [`fit_multi_ols`] row by row.
pub fn fit_ols_1d_per_component(x: &DesignMatrix, y: &Panel, columns: &[Vec<usize>]) -> Result<FitResult> {
    check_design(x, y)?;
    let d = y.series_len();
    if columns.len() != d {
        return Err(Error::ShapeMismatch(format!(
            "{} predictor sets for {d} response components",
            columns.len()
        )));
    }
    let p = x.predictors();
    let fits: Vec<Result<FitResult>> = (0..d)
        .into_par_iter()
        .map(|k| fit_ols_1d(&x.select_predictors(&columns[k])?, &y.component(k)))
        .collect();
    let mut theta = DMatrix::zeros(d, p + 1);
    let mut condition: f64 = 0.0;
    for (k, fit) in fits.into_iter().enumerate() {
        let fit = fit?;
        for (i, &c) in columns[k].iter().enumerate() {
            theta[(k, c)] = fit.theta[(0, i)];
        }
        theta[(k, p)] = fit.theta[(0, columns[k].len())];
        condition = condition.max(fit.condition_estimate);
    }
    Ok(FitResult {
        theta,
        method: FitMethod::Ols1d,
        orientation: y.orientation(),
        condition_estimate: condition,
        weights: None,
    })
}

/// Multi-dimensional OLS: minimizes the realized Euclidean loss.
pub fn fit_multi_ols(x: &DesignMatrix, y: &Panel) -> Result<FitResult> {
    check_design(x, y)?;
    let ls = solve::weighted_least_squares(&x.augmented(), &response_rows(y), None)?;
    Ok(FitResult {
        theta: ls.coefficients.transpose(),
        method: FitMethod::MultiOls,
        orientation: y.orientation(),
        condition_estimate: ls.condition,
        weights: None,
    })
}

/// Nash-Sutcliffe regression: minimizes the realized (extended) Nash-Sutcliffe loss.
///
/// The weights `w_a(y_j)` are computed once from the observed responses and
/// returned in [`FitResult::weights`].
pub fn fit_ns_regression(x: &DesignMatrix, y: &Panel, a: f64) -> Result<FitResult> {
    check_design(x, y)?;
    if y.series_len() < 2 {
        return Err(Error::DimensionTooSmall { len: y.series_len() });
    }
    let weights = series_weights(y, a)?;
    let ls = solve::weighted_least_squares(&x.augmented(), &response_rows(y), Some(&weights))?;
    Ok(FitResult {
        theta: ls.coefficients.transpose(),
        method: if a > 0.0 {
            FitMethod::NsExtended(a)
        } else {
            FitMethod::NsRegression
        },
        orientation: y.orientation(),
        condition_estimate: ls.condition,
        weights: Some(weights),
    })
}

/// Row-oriented model estimated by minimizing the column-oriented realized
/// Nash-Sutcliffe loss `(1/d) Σ_k w(Y_·k) ‖X̃ θ_kᵀ − Y_·k‖²`.
///
/// The objective separates into `d` independent problems, one per response
/// column, each weighted by a single scalar. Each is solved on its own; the
/// scalar weight cancels, so the result coincides with [`fit_multi_ols`].
/// A constant response column has no defined weight and is solved with
/// weight 1, which gives the same minimizer.
pub fn fit_forecast_model_with_columnwise_ns(x: &DesignMatrix, y: &Panel) -> Result<FitResult> {
    if y.orientation() != Orientation::SeriesAsRows {
        return Err(Error::OrientationMismatch(
            "column-wise Nash-Sutcliffe fitting needs an n × d (rows) panel".into(),
        ));
    }
    check_design(x, y)?;
    let design = x.augmented();
    let n = y.series_count();
    let per_column: Vec<Result<(Vec<f64>, f64)>> = (0..y.series_len())
        .into_par_iter()
        .map(|k| {
            let column = y.component(k);
            let ss = centered_sum_of_squares(&column)?;
            let w = if ss >= VARIANCE_FLOOR { 1.0 / ss } else { 1.0 };
            let responses = DMatrix::from_column_slice(n, 1, &column);
            let ls = solve::weighted_least_squares(&design, &responses, Some(&vec![w; n]))?;
            Ok((ls.coefficients.column(0).iter().copied().collect(), ls.condition))
        })
        .collect();
    let q = design.ncols();
    let mut theta = DMatrix::zeros(y.series_len(), q);
    let mut condition: f64 = 0.0;
    for (k, result) in per_column.into_iter().enumerate() {
        let (coefficients, cond) = result?;
        for c in 0..q {
            theta[(k, c)] = coefficients[c];
        }
        condition = condition.max(cond);
    }
    Ok(FitResult {
        theta,
        method: FitMethod::ColumnwiseNs,
        orientation: Orientation::SeriesAsRows,
        condition_estimate: condition,
        weights: None,
    })
}

/// `z_j = θ x̃_j` for every observation of `x`, in the fit's orientation.
pub fn predict(fit: &FitResult, x: &DesignMatrix) -> Result<Panel> {
    if x.predictors() != fit.predictors() {
        return Err(Error::ShapeMismatch(format!(
            "fit expects {} predictors, design has {}",
            fit.predictors(),
            x.predictors()
        )));
    }
    let units = &fit.theta * x.augmented().transpose();
    Panel::from_units(units, fit.orientation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{componentwise_mean_climatology, ns_climatology};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn augment_examples() {
        let x = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        assert_eq!(augment(&x), DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 1.0]));
        let none = DMatrix::<f64>::zeros(3, 0);
        assert_eq!(augment(&none), DMatrix::from_element(3, 1, 1.0));
        let wide = DMatrix::<f64>::zeros(5, 4);
        assert_eq!(augment(&wide).ncols(), 5);
    }

    #[test]
    fn design_orientations_share_observations() {
        let raw = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let cols = DesignMatrix::new(raw.clone(), Orientation::SeriesAsColumns).unwrap();
        assert_eq!((cols.observations(), cols.predictors()), (3, 2));
        assert_eq!(cols.to_matrix(), raw);
        let rows = DesignMatrix::new(raw.transpose(), Orientation::SeriesAsRows).unwrap();
        assert_eq!(rows.observation_matrix(), cols.observation_matrix());
    }

    #[test]
    fn ols_1d_interpolates_two_points() {
        let x = DesignMatrix::new(DMatrix::from_row_slice(2, 1, &[0.0, 1.0]), Orientation::SeriesAsRows)
            .unwrap();
        let fit = fit_ols_1d(&x, &[1.0, 3.0]).unwrap();
        assert!(close(fit.theta[(0, 0)], 2.0, 1e-12));
        assert!(close(fit.theta[(0, 1)], 1.0, 1e-12));
        assert_eq!(fit.response_dim(), 1);

        let new = DesignMatrix::new(DMatrix::from_row_slice(1, 1, &[0.5]), Orientation::SeriesAsRows)
            .unwrap();
        let z = predict(&fit, &new).unwrap();
        assert!(close(z.get(0, 0), 2.0, 1e-12));
    }

    #[test]
    fn ols_1d_constant_and_intercept_only() {
        let x = DesignMatrix::new(
            DMatrix::from_row_slice(4, 2, &[0.0, 1.0, 1.0, -1.0, 2.0, 0.5, 3.0, 2.0]),
            Orientation::SeriesAsRows,
        )
        .unwrap();
        let fit = fit_ols_1d(&x, &[7.0; 4]).unwrap();
        assert!(close(fit.theta[(0, 0)], 0.0, 1e-12));
        assert!(close(fit.theta[(0, 1)], 0.0, 1e-12));
        assert!(close(fit.theta[(0, 2)], 7.0, 1e-12));

        let ones = DesignMatrix::intercept_only(3, Orientation::SeriesAsRows).unwrap();
        let fit = fit_ols_1d(&ones, &[1.0, 2.0, 6.0]).unwrap();
        assert!(close(fit.theta[(0, 0)], 3.0, 1e-12));
    }

    #[test]
    fn ols_residuals_are_orthogonal() {
        let x = DesignMatrix::new(
            DMatrix::from_row_slice(5, 1, &[0.0, 1.0, 2.0, 3.0, 4.0]),
            Orientation::SeriesAsRows,
        )
        .unwrap();
        let y = [1.0, 2.5, 2.0, 4.5, 3.0];
        let fit = fit_ols_1d(&x, &y).unwrap();
        let aug = x.augmented();
        let norm_y = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for c in 0..aug.ncols() {
            let dot: f64 = (0..5)
                .map(|j| (fit.theta[(0, 0)] * aug[(j, 0)] + fit.theta[(0, 1)] - y[j]) * aug[(j, c)])
                .sum();
            assert!(dot.abs() <= 1e-8 * norm_y);
        }
    }

    #[test]
    fn rank_deficient_design() {
        let x = DesignMatrix::new(DMatrix::from_row_slice(3, 1, &[2.0, 2.0, 2.0]), Orientation::SeriesAsRows)
            .unwrap();
        assert!(matches!(fit_ols_1d(&x, &[1.0, 2.0, 3.0]), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn multi_ols_exact_recovery() {
        // two responses, y1 = 2x + 1, y2 = -x + 3
        let xs = [0.0, 1.0, 2.0, 3.0];
        let x = DesignMatrix::new(DMatrix::from_row_slice(4, 1, &xs), Orientation::SeriesAsRows).unwrap();
        let series: Vec<Vec<f64>> = xs.iter().map(|&v| vec![2.0 * v + 1.0, -v + 3.0]).collect();
        let y = Panel::from_series(&series, Orientation::SeriesAsRows).unwrap();
        let fit = fit_multi_ols(&x, &y).unwrap();
        assert!(close(fit.theta[(0, 0)], 2.0, 1e-12) && close(fit.theta[(0, 1)], 1.0, 1e-12));
        assert!(close(fit.theta[(1, 0)], -1.0, 1e-12) && close(fit.theta[(1, 1)], 3.0, 1e-12));
        let z = predict(&fit, &x).unwrap();
        for j in 0..4 {
            for k in 0..2 {
                assert!(close(z.get(j, k), y.get(j, k), 1e-12));
            }
        }
    }

    #[test]
    fn intercept_only_fits_are_climatologies() {
        let y = Panel::from_series(
            &[vec![1.0, 3.0, 2.0], vec![0.0, 4.0, -1.0], vec![2.0, 2.5, 7.0]],
            Orientation::SeriesAsColumns,
        )
        .unwrap();
        let x = DesignMatrix::intercept_only(3, Orientation::SeriesAsColumns).unwrap();
        let ols = fit_multi_ols(&x, &y).unwrap();
        let mean = componentwise_mean_climatology(&y).values;
        let ns = fit_ns_regression(&x, &y, 0.0).unwrap();
        let nsclim = ns_climatology(&y, 0.0).unwrap().values;
        let ext = fit_ns_regression(&x, &y, 3.0).unwrap();
        let extclim = ns_climatology(&y, 3.0).unwrap().values;
        for k in 0..3 {
            assert!(close(ols.theta[(k, 0)], mean[k], 1e-12));
            assert!(close(ns.theta[(k, 0)], nsclim[k], 1e-12));
            assert!(close(ext.theta[(k, 0)], extclim[k], 1e-12));
        }
        assert_eq!(ext.method, FitMethod::NsExtended(3.0));
        let z = predict(&ns, &x).unwrap();
        assert!(close(z.get(2, 1), nsclim[1], 1e-12));
    }

    #[test]
    fn ns_regression_errors() {
        let x = DesignMatrix::intercept_only(2, Orientation::SeriesAsColumns).unwrap();
        let y = Panel::from_series(&[vec![1.0, 3.0], vec![2.0, 2.0]], Orientation::SeriesAsColumns).unwrap();
        assert!(matches!(
            fit_ns_regression(&x, &y, 0.0),
            Err(Error::ZeroVariance { series: Some(1) })
        ));
        assert!(fit_ns_regression(&x, &y, 0.5).is_ok());

        let short = Panel::from_series(&[vec![1.0], vec![2.0]], Orientation::SeriesAsColumns).unwrap();
        assert!(matches!(fit_ns_regression(&x, &short, 0.0), Err(Error::DimensionTooSmall { .. })));

        let rows = y.transpose_orientation();
        assert!(matches!(fit_ns_regression(&x, &rows, 0.0), Err(Error::OrientationMismatch(_))));
    }

    #[test]
    fn interpolating_fits_agree() {
        // n = p + 1 observations: both estimators interpolate exactly
        let x = DesignMatrix::new(
            DMatrix::from_row_slice(3, 2, &[0.0, 1.0, 2.0, -1.0, 0.5, 3.0]),
            Orientation::SeriesAsRows,
        )
        .unwrap();
        let y = Panel::from_series(
            &[vec![1.0, 3.0, 0.0], vec![0.0, 4.0, 2.0], vec![5.0, 2.0, 1.0]],
            Orientation::SeriesAsRows,
        )
        .unwrap();
        let ols = fit_multi_ols(&x, &y).unwrap();
        let ns = fit_ns_regression(&x, &y, 0.0).unwrap();
        for (a, b) in ols.theta.iter().zip(ns.theta.iter()) {
            assert!(close(*a, *b, 1e-9));
        }
    }

    #[test]
    fn columnwise_ns_intercept_only_is_component_mean() {
        let y = Panel::from_series(
            &[vec![1.0, 5.0], vec![2.0, 5.0], vec![6.0, 5.0]],
            Orientation::SeriesAsRows,
        )
        .unwrap();
        let x = DesignMatrix::intercept_only(3, Orientation::SeriesAsRows).unwrap();
        let fit = fit_forecast_model_with_columnwise_ns(&x, &y).unwrap();
        assert!(close(fit.theta[(0, 0)], 3.0, 1e-12));
        // constant column: weight undefined but the minimizer is still its mean
        assert!(close(fit.theta[(1, 0)], 5.0, 1e-12));
        assert!(fit_forecast_model_with_columnwise_ns(
            &DesignMatrix::intercept_only(2, Orientation::SeriesAsColumns).unwrap(),
            &y.transpose_orientation()
        )
        .is_err());
    }

    #[test]
    fn predict_checks_width() {
        let x = DesignMatrix::new(DMatrix::from_row_slice(3, 1, &[0.0, 1.0, 2.0]), Orientation::SeriesAsRows)
            .unwrap();
        let fit = fit_ols_1d(&x, &[1.0, 2.0, 4.0]).unwrap();
        let wrong = DesignMatrix::new(DMatrix::zeros(2, 2), Orientation::SeriesAsRows).unwrap();
        assert!(matches!(predict(&fit, &wrong), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn predict_orientation_follows_fit() {
        let x = DesignMatrix::new(DMatrix::from_row_slice(1, 3, &[0.0, 1.0, 2.0]), Orientation::SeriesAsColumns)
            .unwrap();
        let y = Panel::from_series(
            &[vec![1.0, 0.0], vec![3.0, 1.0], vec![5.0, 2.0]],
            Orientation::SeriesAsColumns,
        )
        .unwrap();
        let fit = fit_multi_ols(&x, &y).unwrap();
        let z = predict(&fit, &x).unwrap();
        assert_eq!(z.orientation(), Orientation::SeriesAsColumns);
        assert_eq!((z.nrows(), z.ncols()), (2, 3));
        assert_eq!(fit.slopes().shape(), (2, 1));
        assert_eq!(fit.intercepts().len(), 2);
    }

    #[test]
    fn per_component_ols_restricts_predictors() {
        // component 0 depends on predictor 0 only, component 1 on predictor 1 only
        let obs = DMatrix::from_row_slice(4, 2, &[0.0, 1.0, 1.0, 0.0, 2.0, 3.0, 3.0, 1.0]);
        let x = DesignMatrix::from_observations(obs.clone(), Orientation::SeriesAsRows).unwrap();
        let series: Vec<Vec<f64>> = (0..4)
            .map(|j| vec![2.0 * obs[(j, 0)] + 1.0, -obs[(j, 1)] + 4.0])
            .collect();
        let y = Panel::from_series(&series, Orientation::SeriesAsRows).unwrap();
        let fit = fit_ols_1d_per_component(&x, &y, &[vec![0], vec![1]]).unwrap();
        let expected = DMatrix::from_row_slice(2, 3, &[2.0, 0.0, 1.0, 0.0, -1.0, 4.0]);
        assert!((fit.theta - expected).amax() < 1e-12);

        let all = fit_ols_1d_per_component(&x, &y, &[vec![0, 1], vec![0, 1]]).unwrap();
        let multi = fit_multi_ols(&x, &y).unwrap();
        assert!((all.theta - multi.theta).amax() < 1e-12);
        assert!(fit_ols_1d_per_component(&x, &y, &[vec![0]]).is_err());
    }
}

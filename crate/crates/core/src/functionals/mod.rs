//! Climatologies, identification functions and M-estimators.
//!
//! A climatology is a constant prediction `θ` (one value per component)
//! broadcast over every series. The component-wise mean climatology
//! minimizes the realized Euclidean loss; the Nash-Sutcliffe climatology
//!
//! ```text
//! T_k = Σ_j w(y_j) y_kj / Σ_j w(y_j)
//! ```
//!
//! minimizes the realized Nash-Sutcliffe loss and is the point where the
//! empirical Nash-Sutcliffe identification vanishes. Both are computed in
//! closed form; [`oracle`] holds an independent numeric minimizer used to
//! cross-check them.

pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::losses::{ns_weight, ns_weight_extended, Loss};
use crate::panel::{sample_mean, Orientation, Panel};

pub use oracle::{numeric_minimize, MinimizeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ClimatologyKind {
    ComponentwiseMean,
    NashSutcliffe,
    NashSutcliffeExtended(f64),
}

/// A constant prediction vector of length `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Climatology {
    pub values: Vec<f64>,
    pub kind: ClimatologyKind,
}

impl Climatology {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The prediction panel `θ 1ᵀ` with `n` identical series.
    pub fn broadcast(&self, n: usize, orientation: Orientation) -> Result<Panel> {
        Panel::broadcast(&self.values, n, orientation)
    }

    /// Broadcasts over a panel shaped like `like`.
    pub fn broadcast_like(&self, like: &Panel) -> Result<Panel> {
        if like.series_len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "climatology of length {} vs series length {}",
                self.len(),
                like.series_len()
            )));
        }
        self.broadcast(like.series_count(), like.orientation())
    }
}

/// Which identification function an empirical average uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IdentificationKind {
    /// Scalar mean error pooled over every entry; a vector of length 1.
    Mean,
    /// Component-wise mean error.
    MeanD,
    NashSutcliffe,
    NashSutcliffeExtended(f64),
}

/// Component `k` averaged over series.
pub fn componentwise_mean_climatology(y: &Panel) -> Climatology {
    let n = y.series_count() as f64;
    let mut values = vec![0.0; y.series_len()];
    for s in y.iter_series() {
        for (acc, v) in values.iter_mut().zip(s) {
            *acc += v;
        }
    }
    for v in &mut values {
        *v /= n;
    }
    Climatology {
        values,
        kind: ClimatologyKind::ComponentwiseMean,
    }
}

/// Weights `w_a(y_j)` of every series, with the index of the first failure.
pub fn series_weights(y: &Panel, a: f64) -> Result<Vec<f64>> {
    y.iter_series()
        .enumerate()
        .map(|(j, s)| ns_weight_extended(s, a).map_err(|e| e.at_series(j)))
        .collect()
}

/// Weighted component-wise mean with Nash-Sutcliffe weights (extended by `a`).
pub fn ns_climatology(y: &Panel, a: f64) -> Result<Climatology> {
    let weights = series_weights(y, a)?;
    let d = y.series_len();
    let mut total = 0.0;
    let mut acc = vec![0.0; d];
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for (s, &w) in y.iter_series().zip(&weights) {
        total += w;
        for k in 0..d {
            acc[k] += w * s[k];
            lo[k] = lo[k].min(s[k]);
            hi[k] = hi[k].max(s[k]);
        }
    }
    // A convex combination stays inside the observed range; rounding can
    // push the quotient a few ulps outside.
    let values = (0..d)
        .map(|k| (acc[k] / total).clamp(lo[k], hi[k]))
        .collect();
    let kind = if a > 0.0 {
        ClimatologyKind::NashSutcliffeExtended(a)
    } else {
        ClimatologyKind::NashSutcliffe
    };
    Ok(Climatology { values, kind })
}

/// Mean of each series (the "time series means" benchmark).
pub fn per_series_means(y: &Panel) -> Vec<f64> {
    y.iter_series()
        .map(|s| sample_mean(s).expect("panel series are nonempty"))
        .collect()
}

/// Per-series means broadcast back into a panel shaped like `y`.
pub fn per_series_mean_prediction(y: &Panel) -> Panel {
    Panel::broadcast_per_series(&per_series_means(y), y.series_len(), y.orientation())
        .expect("means of a finite nonempty panel are finite")
}

/// `(z − y) · w(y)`.
pub fn identification_ns(z: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    identification_ns_extended(z, y, 0.0)
}

pub fn identification_ns_extended(z: &[f64], y: &[f64], a: f64) -> Result<Vec<f64>> {
    if z.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "prediction length {} vs observation length {}",
            z.len(),
            y.len()
        )));
    }
    let w = ns_weight_extended(y, a)?;
    Ok(z.iter().zip(y).map(|(zi, yi)| (zi - yi) * w).collect())
}

/// `z − y`.
pub fn identification_mean_d(z: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    if z.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "prediction length {} vs observation length {}",
            z.len(),
            y.len()
        )));
    }
    Ok(z.iter().zip(y).map(|(zi, yi)| zi - yi).collect())
}

/// Average of the pointwise identification function over series.
pub fn empirical_identification(z: &Panel, y: &Panel, kind: IdentificationKind) -> Result<Vec<f64>> {
    z.check_compatible(y)?;
    let n = y.series_count() as f64;
    if let IdentificationKind::Mean = kind {
        let mut total = 0.0;
        for (zs, ys) in z.iter_series().zip(y.iter_series()) {
            for (zi, yi) in zs.iter().zip(ys) {
                total += zi - yi;
            }
        }
        return Ok(vec![total / (n * y.series_len() as f64)]);
    }
    let mut acc = vec![0.0; y.series_len()];
    for (j, (zs, ys)) in z.iter_series().zip(y.iter_series()).enumerate() {
        let term = match kind {
            IdentificationKind::MeanD => identification_mean_d(zs, ys),
            IdentificationKind::NashSutcliffe => identification_ns(zs, ys),
            IdentificationKind::NashSutcliffeExtended(a) => identification_ns_extended(zs, ys, a),
            IdentificationKind::Mean => unreachable!(),
        }
        .map_err(|e| e.at_series(j))?;
        for (a, t) in acc.iter_mut().zip(term) {
            *a += t;
        }
    }
    Ok(acc.into_iter().map(|v| v / n).collect())
}

/// Minimizer of the realized loss over constant predictions.
pub fn m_estimate(y: &Panel, loss: Loss) -> Result<Climatology> {
    match loss {
        Loss::SquaredError | Loss::Euclidean => Ok(componentwise_mean_climatology(y)),
        Loss::NashSutcliffe => ns_climatology(y, 0.0),
        Loss::NashSutcliffeExtended(a) => ns_climatology(y, a),
    }
}

/// True when every series has the same Nash-Sutcliffe weight.
pub fn has_uniform_weights(y: &Panel) -> Result<bool> {
    let first = ns_weight(y.series(0)).map_err(|e| e.at_series(0))?;
    for (j, s) in y.iter_series().enumerate().skip(1) {
        if ns_weight(s).map_err(|e| e.at_series(j))? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Pointwise and realized losses.
//!
//! The Nash-Sutcliffe loss of a prediction `z` for an observed series `y` is
//! the squared Euclidean distance scaled by the series weight
//!
//! ```text
//! w(y)      = 1 / Σ (μ(y) − y_i)²
//! L_NS(z,y) = w(y) · Σ (z_i − y_i)²
//! NSE(z,y)  = 1 − L_NS(z,y)
//! ```
//!
//! and the extended variant adds a constant `a ≥ 0` to the denominator of
//! the weight. Realized losses average a pointwise loss over the series of a
//! [`Panel`]; the per-series terms are always reduced in ascending series
//! order with plain left-to-right summation, so results do not depend on
//! thread scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::panel::{sample_mean, Panel};

/// Denominators below this value are reported as [`Error::ZeroVariance`].
pub const VARIANCE_FLOOR: f64 = 1e-300;

/// Which pointwise loss a realized loss averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Loss {
    /// Squared error per entry; the realized value is the mean over all entries.
    SquaredError,
    /// Squared Euclidean norm per series.
    Euclidean,
    NashSutcliffe,
    /// Nash-Sutcliffe with `a` added to the weight denominator.
    NashSutcliffeExtended(f64),
}

impl Loss {
    /// The loss a Nash-Sutcliffe evaluation uses for a given extension constant.
    pub fn ns_with(a: f64) -> Self {
        if a > 0.0 {
            Loss::NashSutcliffeExtended(a)
        } else {
            Loss::NashSutcliffe
        }
    }
}

pub fn loss_se(z: f64, y: f64) -> f64 {
    let r = z - y;
    r * r
}

fn check_lengths(z: &[f64], y: &[f64]) -> Result<()> {
    if z.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "prediction length {} vs observation length {}",
            z.len(),
            y.len()
        )));
    }
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

pub fn loss_en(z: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(z, y)?;
    Ok(z.iter().zip(y).map(|(&zi, &yi)| loss_se(zi, yi)).sum())
}

/// `Σ (μ(y) − y_i)²`, the squared distance of `y` from its own mean.
pub fn centered_sum_of_squares(y: &[f64]) -> Result<f64> {
    let mu = sample_mean(y)?;
    Ok(y.iter().map(|&yi| loss_se(mu, yi)).sum())
}

/// `1 / (Σ (μ(y) − y_i)² + a)`.
pub fn ns_weight_extended(y: &[f64], a: f64) -> Result<f64> {
    if !a.is_finite() || a < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "extension constant must be finite and nonnegative, got {a}"
        )));
    }
    if y.len() < 2 {
        return Err(Error::DimensionTooSmall { len: y.len() });
    }
    let denom = centered_sum_of_squares(y)? + a;
    if denom < VARIANCE_FLOOR {
        return Err(Error::ZeroVariance { series: None });
    }
    Ok(1.0 / denom)
}

/// Nash-Sutcliffe weight `w(y)`.
pub fn ns_weight(y: &[f64]) -> Result<f64> {
    ns_weight_extended(y, 0.0)
}

pub fn loss_ns_extended(z: &[f64], y: &[f64], a: f64) -> Result<f64> {
    check_lengths(z, y)?;
    let w = ns_weight_extended(y, a)?;
    Ok(w * loss_en(z, y)?)
}

pub fn loss_ns(z: &[f64], y: &[f64]) -> Result<f64> {
    loss_ns_extended(z, y, 0.0)
}

/// Nash-Sutcliffe efficiency of a single series.
pub fn nse(z: &[f64], y: &[f64]) -> Result<f64> {
    Ok(1.0 - loss_ns(z, y)?)
}

fn pointwise(z: &[f64], y: &[f64], loss: Loss) -> Result<f64> {
    match loss {
        Loss::SquaredError => Ok(loss_en(z, y)? / y.len() as f64),
        Loss::Euclidean => loss_en(z, y),
        Loss::NashSutcliffe => loss_ns(z, y),
        Loss::NashSutcliffeExtended(a) => loss_ns_extended(z, y, a),
    }
}

/// The pointwise loss of every series, in series order.
pub fn series_losses(z: &Panel, y: &Panel, loss: Loss) -> Result<Vec<f64>> {
    z.check_compatible(y)?;
    let terms: Vec<Result<f64>> = (0..y.series_count())
        .into_par_iter()
        .map(|j| pointwise(z.series(j), y.series(j), loss).map_err(|e| e.at_series(j)))
        .collect();
    terms.into_iter().collect()
}

/// Mean of the pointwise loss over series.
pub fn realized_loss(z: &Panel, y: &Panel, loss: Loss) -> Result<f64> {
    let terms = series_losses(z, y, loss)?;
    let mut total = 0.0;
    for t in &terms {
        total += t;
    }
    Ok(total / terms.len() as f64)
}

/// `1 − L̄_NS(Z, Y)`.
pub fn realized_nse(z: &Panel, y: &Panel) -> Result<f64> {
    Ok(1.0 - realized_loss(z, y, Loss::NashSutcliffe)?)
}

/// `1 − L̄(Z, Y) / L̄(Z_ref, Y)`.
pub fn skill_score(z: &Panel, y: &Panel, reference: &Panel, loss: Loss) -> Result<f64> {
    reference.check_compatible(y)?;
    let reference_loss = realized_loss(reference, y, loss)?;
    if reference_loss.is_nan() || reference_loss <= 0.0 {
        return Err(Error::DegenerateReference);
    }
    Ok(1.0 - realized_loss(z, y, loss)? / reference_loss)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::panel::Orientation;

    fn cols(series: &[&[f64]]) -> Panel {
        let s: Vec<Vec<f64>> = series.iter().map(|s| s.to_vec()).collect();
        Panel::from_series(&s, Orientation::SeriesAsColumns).unwrap()
    }

    #[test]
    fn squared_error_examples() {
        assert_eq!(loss_se(2.0, 2.0), 0.0);
        assert_eq!(loss_se(3.0, 1.0), 4.0);
        assert_eq!(loss_se(-1.0, 1.0), 4.0);
    }

    #[test]
    fn euclidean_examples() {
        assert_eq!(loss_en(&[1.0, 3.0], &[1.0, 3.0]).unwrap(), 0.0);
        assert_eq!(loss_en(&[2.0, 2.0], &[1.0, 3.0]).unwrap(), 2.0);
        assert_eq!(loss_en(&[0.0, 4.0], &[1.0, 3.0]).unwrap(), 2.0);
        assert!(matches!(loss_en(&[1.0], &[1.0, 3.0]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(ns_weight(&[1.0, 3.0]).unwrap(), 0.5);
        assert_eq!(ns_weight(&[0.0, 4.0]).unwrap(), 0.125);
        assert!(matches!(ns_weight(&[7.0, 7.0]), Err(Error::ZeroVariance { series: None })));
        assert!(matches!(ns_weight(&[7.0]), Err(Error::DimensionTooSmall { len: 1 })));
    }

    #[test]
    fn near_zero_variance_is_rejected() {
        let y = [1.0, 1.0 + 1e-160];
        assert!(matches!(ns_weight(&y), Err(Error::ZeroVariance { .. })));
    }

    #[test]
    fn ns_examples() {
        assert_eq!(loss_ns(&[1.0, 3.0], &[1.0, 3.0]).unwrap(), 0.0);
        assert_eq!(loss_ns(&[2.0, 2.0], &[1.0, 3.0]).unwrap(), 1.0);
        assert_eq!(loss_ns(&[1.5, 2.5], &[1.0, 3.0]).unwrap(), 0.25);
        assert!(matches!(loss_ns(&[1.0], &[1.0]), Err(Error::DimensionTooSmall { .. })));
        assert!(matches!(loss_ns(&[1.0, 2.0, 3.0], &[1.0, 3.0]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn extended_examples() {
        assert_eq!(loss_ns_extended(&[2.0, 2.0], &[1.0, 3.0], 0.0).unwrap(), 1.0);
        assert_eq!(loss_ns_extended(&[2.0, 2.0], &[1.0, 3.0], 2.0).unwrap(), 0.5);
        assert_eq!(loss_ns_extended(&[7.0, 7.0], &[7.0, 7.0], 1.0).unwrap(), 0.0);
        assert!(matches!(
            loss_ns_extended(&[7.0, 7.0], &[7.0, 7.0], 0.0),
            Err(Error::ZeroVariance { .. })
        ));
        assert!(loss_ns_extended(&[1.0, 2.0], &[1.0, 3.0], -1.0).is_err());
    }

    #[test]
    fn extended_decreases_in_a() {
        let (z, y) = ([0.3, 2.0, -1.0], [1.0, 3.0, 0.5]);
        let mut prev = f64::INFINITY;
        for a in [0.0, 0.1, 1.0, 10.0, 1e3] {
            let v = loss_ns_extended(&z, &y, a).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn nse_examples() {
        assert_eq!(nse(&[1.0, 3.0], &[1.0, 3.0]).unwrap(), 1.0);
        assert_eq!(nse(&[2.0, 2.0], &[1.0, 3.0]).unwrap(), 0.0);
        assert_eq!(nse(&[1.5, 2.5], &[1.0, 3.0]).unwrap(), 0.75);
        assert_eq!(nse(&[3.0, 5.0], &[2.0, 6.0]).unwrap(), 0.75);
    }

    #[test]
    fn realized_examples() {
        let y = cols(&[&[1.0, 3.0], &[0.0, 4.0]]);
        assert_eq!(realized_loss(&y, &y, Loss::Euclidean).unwrap(), 0.0);

        let z = cols(&[&[2.0, 2.0], &[2.0, 2.0]]);
        assert_eq!(realized_loss(&z, &y, Loss::NashSutcliffe).unwrap(), 1.0);

        let z = cols(&[&[1.5, 2.5], &[1.0, 3.0]]);
        assert_eq!(realized_nse(&z, &y).unwrap(), 0.75);
        assert_eq!(realized_nse(&y, &y).unwrap(), 1.0);
    }

    #[test]
    fn realized_reports_offending_series() {
        let y = cols(&[&[1.0, 3.0], &[5.0, 5.0], &[0.0, 1.0]]);
        let err = realized_loss(&y, &y, Loss::NashSutcliffe).unwrap_err();
        assert!(matches!(err, Error::ZeroVariance { series: Some(1) }));
    }

    #[test]
    fn realized_rejects_mismatch() {
        let y = cols(&[&[1.0, 3.0], &[0.0, 4.0]]);
        let z = y.transpose_orientation();
        assert!(matches!(
            realized_loss(&z, &y, Loss::Euclidean),
            Err(Error::OrientationMismatch(_))
        ));
        let z = cols(&[&[1.0, 3.0]]);
        assert!(matches!(realized_loss(&z, &y, Loss::Euclidean), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn skill_examples() {
        let y = cols(&[&[1.0, 3.0], &[0.0, 4.0]]);
        let z = cols(&[&[1.5, 2.5], &[1.0, 3.0]]);
        let reference = cols(&[&[2.0, 2.0], &[2.0, 2.0]]);
        assert_eq!(skill_score(&reference, &y, &reference, Loss::NashSutcliffe).unwrap(), 0.0);
        assert_eq!(skill_score(&y, &y, &reference, Loss::NashSutcliffe).unwrap(), 1.0);
        assert_eq!(
            skill_score(&z, &y, &reference, Loss::NashSutcliffe).unwrap(),
            realized_nse(&z, &y).unwrap()
        );
        assert!(matches!(
            skill_score(&z, &y, &y, Loss::Euclidean),
            Err(Error::DegenerateReference)
        ));
    }
}

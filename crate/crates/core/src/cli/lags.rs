use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::panel::{Orientation, Panel, SplitAxis, SplitSpec};
use crate::regression::DesignMatrix;

/// Lagged-response predictors for an `n × d` panel.
///
/// Row `t` of the predictor matrix holds `y_{t+lags−1}, …, y_t`, lag-major:
/// lag 1 of components `0..d`, then lag 2 of components `0..d`, and so on,
/// so `p = lags · d`. The responses are the rows `lags..n`.
pub fn build_lag_design(y: &Panel, lags: usize) -> Result<(DesignMatrix, Panel)> {
    if y.orientation() != Orientation::SeriesAsRows {
        return Err(Error::OrientationMismatch(
            "lag features need an n × d (rows) panel ordered in time".into(),
        ));
    }
    let n = y.series_count();
    if lags == 0 {
        return Ok((DesignMatrix::intercept_only(n, Orientation::SeriesAsRows)?, y.clone()));
    }
    if n <= lags {
        return Err(Error::TooShort { len: n, lags });
    }
    let d = y.series_len();
    let rows = n - lags;
    let observations = DMatrix::from_fn(rows, lags * d, |t, c| {
        let (lag, k) = (c / d + 1, c % d);
        y.get(t + lags - lag, k)
    });
    let design = DesignMatrix::from_observations(observations, Orientation::SeriesAsRows)?;
    let (_, responses) = y.split(SplitSpec::new(lags, SplitAxis::Time))?;
    Ok((design, responses))
}

/// Predictor columns of component `k`'s own lags, for every component.
pub fn own_lag_columns(d: usize, lags: usize) -> Vec<Vec<usize>> {
    (0..d).map(|k| (0..lags).map(|l| l * d + k).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_series_hand_shift() {
        let y = Panel::from_row_slice(3, 1, &[1.0, 2.0, 3.0], Orientation::SeriesAsRows).unwrap();
        let (x, r) = build_lag_design(&y, 1).unwrap();
        assert_eq!(x.observation_matrix(), &DMatrix::from_row_slice(2, 1, &[1.0, 2.0]));
        assert_eq!(r.to_matrix(), DMatrix::from_row_slice(2, 1, &[2.0, 3.0]));
    }

    #[test]
    fn lag_major_ordering() {
        let y = Panel::from_row_slice(4, 2, &[1.0, 10.0, 2.0, 20.0, 3.0, 30.0, 4.0, 40.0], Orientation::SeriesAsRows)
            .unwrap();
        let (x, r) = build_lag_design(&y, 2).unwrap();
        assert_eq!(
            x.observation_matrix(),
            &DMatrix::from_row_slice(2, 4, &[2.0, 20.0, 1.0, 10.0, 3.0, 30.0, 2.0, 20.0])
        );
        assert_eq!(r.series_count(), 2);
        assert_eq!(r.series(0), &[3.0, 30.0]);
        assert_eq!(own_lag_columns(2, 2), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn daily_record_shapes() {
        let y = Panel::new(DMatrix::from_fn(7305, 10, |i, k| (i * 10 + k) as f64), Orientation::SeriesAsRows).unwrap();
        let (x, r) = build_lag_design(&y, 2).unwrap();
        assert_eq!((x.observations(), x.predictors()), (7303, 20));
        assert_eq!(r.series_count(), 7303);
    }

    #[test]
    fn zero_lags_and_too_short() {
        let y = Panel::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0], Orientation::SeriesAsRows).unwrap();
        let (x, r) = build_lag_design(&y, 0).unwrap();
        assert_eq!(x.predictors(), 0);
        assert_eq!(r, y);
        assert!(matches!(build_lag_design(&y, 2), Err(Error::TooShort { len: 2, lags: 2 })));
        assert!(build_lag_design(&y.transpose_orientation(), 1).is_err());
    }
}

//! Orientation-aware panel storage and the small vector primitives shared by
//! every other module.
//!
//! A [`Panel`] is a rectangular matrix of finite reals together with an
//! [`Orientation`] tag. The tag decides which axis holds the *series*: the
//! unit over which a Nash-Sutcliffe weight is computed and over which
//! realized losses are averaged.
//!
//! * [`Orientation::SeriesAsColumns`]: a `d × n` matrix, column `j` is series
//!   `j` of length `d`.
//! * [`Orientation::SeriesAsRows`]: an `n × d` matrix, row `i` is a
//!   `d`-dimensional realization and plays the role of series `i`.
//!
//! Everything downstream addresses data by `(series, component)` through
//! [`Panel::series`] and [`Panel::get`], so the same formulas serve both
//! orientations. The raw matrix is only visible through [`Panel::to_matrix`]
//! and [`Panel::raw`].

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `d × n`: columns are series of length `d`.
    #[serde(rename = "columns")]
    SeriesAsColumns,
    /// `n × d`: rows are `d`-dimensional realizations.
    #[serde(rename = "rows")]
    SeriesAsRows,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::SeriesAsColumns => Orientation::SeriesAsRows,
            Orientation::SeriesAsRows => Orientation::SeriesAsColumns,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::SeriesAsColumns => "columns",
            Orientation::SeriesAsRows => "rows",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "columns" | "cols" | "series-as-columns" => Ok(Orientation::SeriesAsColumns),
            "rows" | "series-as-rows" => Ok(Orientation::SeriesAsRows),
            other => Err(Error::InvalidArgument(format!(
                "unknown orientation {other:?} (expected `columns` or `rows`)"
            ))),
        }
    }
}

/// Axis of the raw matrix along which a panel is split.
///
/// `Series` cuts between raw columns and `Time` cuts between raw rows. For a
/// `d × n` panel the series axis separates whole series; for an `n × d`
/// forecasting panel the time axis separates whole realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitAxis {
    Series,
    Time,
}

impl FromStr for SplitAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" | "columns" => Ok(SplitAxis::Series),
            "time" | "rows" => Ok(SplitAxis::Time),
            other => Err(Error::InvalidArgument(format!(
                "unknown split axis {other:?} (expected `series` or `time`)"
            ))),
        }
    }
}

/// A train/test cut: the first part holds indices `0..boundary`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub boundary: usize,
    pub axis: SplitAxis,
}

impl SplitSpec {
    pub fn new(boundary: usize, axis: SplitAxis) -> Self {
        Self { boundary, axis }
    }

    /// Checks `1 <= boundary < extent`.
    pub fn validate(&self, extent: usize) -> Result<()> {
        if self.boundary == 0 || self.boundary >= extent {
            return Err(Error::InvalidSplit {
                boundary: self.boundary,
                extent,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    // d × n, column j is series j. Independent of the orientation tag.
    units: DMatrix<f64>,
    orientation: Orientation,
}

impl Panel {
    /// Builds a panel from its raw matrix (`d × n` for columns, `n × d` for rows).
    pub fn new(values: DMatrix<f64>, orientation: Orientation) -> Result<Self> {
        let units = match orientation {
            Orientation::SeriesAsColumns => values,
            Orientation::SeriesAsRows => values.transpose(),
        };
        Self::from_units(units, orientation)
    }

    /// Builds a panel from a raw row-major buffer.
    pub fn from_row_slice(
        rows: usize,
        cols: usize,
        data: &[f64],
        orientation: Orientation,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "buffer of length {} cannot fill {rows}×{cols}",
                data.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, data), orientation)
    }

    /// Builds a panel from a list of series, each of the same length `d`.
    pub fn from_series(series: &[Vec<f64>], orientation: Orientation) -> Result<Self> {
        let n = series.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let d = series[0].len();
        if let Some((j, s)) = series.iter().enumerate().find(|(_, s)| s.len() != d) {
            return Err(Error::ShapeMismatch(format!(
                "series {j} has length {}, expected {d}",
                s.len()
            )));
        }
        let units = DMatrix::from_fn(d, n, |k, j| series[j][k]);
        Self::from_units(units, orientation)
    }

    /// Builds a panel from a `d × n` matrix whose columns are the series.
    pub fn from_units(units: DMatrix<f64>, orientation: Orientation) -> Result<Self> {
        if units.nrows() == 0 || units.ncols() == 0 {
            return Err(Error::EmptyInput);
        }
        for j in 0..units.ncols() {
            for k in 0..units.nrows() {
                let value = units[(k, j)];
                if !value.is_finite() {
                    let (row, col) = match orientation {
                        Orientation::SeriesAsColumns => (k, j),
                        Orientation::SeriesAsRows => (j, k),
                    };
                    return Err(Error::NonFinite { row, col, value });
                }
            }
        }
        Ok(Self { units, orientation })
    }

    /// The constant prediction `θ 1ᵀ`: every series equals `values`.
    pub fn broadcast(values: &[f64], n: usize, orientation: Orientation) -> Result<Self> {
        if values.is_empty() || n == 0 {
            return Err(Error::EmptyInput);
        }
        let units = DMatrix::from_fn(values.len(), n, |k, _| values[k]);
        Self::from_units(units, orientation)
    }

    /// One constant per series: series `j` is `levels[j]` repeated `d` times.
    pub fn broadcast_per_series(levels: &[f64], d: usize, orientation: Orientation) -> Result<Self> {
        if levels.is_empty() || d == 0 {
            return Err(Error::EmptyInput);
        }
        let units = DMatrix::from_fn(d, levels.len(), |_, j| levels[j]);
        Self::from_units(units, orientation)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Number of series `n`.
    pub fn series_count(&self) -> usize {
        self.units.ncols()
    }

    /// Length `d` of every series.
    pub fn series_len(&self) -> usize {
        self.units.nrows()
    }

    pub fn series(&self, j: usize) -> &[f64] {
        let d = self.series_len();
        &self.units.as_slice()[j * d..(j + 1) * d]
    }

    pub fn iter_series(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.units.as_slice().chunks_exact(self.series_len())
    }

    /// Component `k` of series `j`.
    pub fn get(&self, series: usize, k: usize) -> f64 {
        self.units[(k, series)]
    }

    /// Component `k` across all series.
    pub fn component(&self, k: usize) -> Vec<f64> {
        self.units.row(k).iter().copied().collect()
    }

    /// The `d × n` series matrix regardless of orientation.
    pub fn series_matrix(&self) -> &DMatrix<f64> {
        &self.units
    }

    pub fn nrows(&self) -> usize {
        match self.orientation {
            Orientation::SeriesAsColumns => self.units.nrows(),
            Orientation::SeriesAsRows => self.units.ncols(),
        }
    }

    pub fn ncols(&self) -> usize {
        match self.orientation {
            Orientation::SeriesAsColumns => self.units.ncols(),
            Orientation::SeriesAsRows => self.units.nrows(),
        }
    }

    /// Entry of the raw matrix.
    pub fn raw(&self, row: usize, col: usize) -> f64 {
        match self.orientation {
            Orientation::SeriesAsColumns => self.units[(row, col)],
            Orientation::SeriesAsRows => self.units[(col, row)],
        }
    }

    /// The raw matrix in this panel's orientation.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        match self.orientation {
            Orientation::SeriesAsColumns => self.units.clone(),
            Orientation::SeriesAsRows => self.units.transpose(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.units.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Transposes the raw matrix and flips the tag, so series `j` of the
    /// input is realization `j` of the output.
    pub fn transpose_orientation(&self) -> Panel {
        Panel {
            units: self.units.clone(),
            orientation: self.orientation.flipped(),
        }
    }

    /// Keeps the raw matrix and changes only the tag, so the roles of the two
    /// axes swap: what were components become series.
    pub fn reinterpret(&self, orientation: Orientation) -> Panel {
        if orientation == self.orientation {
            return self.clone();
        }
        Panel {
            units: self.units.transpose(),
            orientation,
        }
    }

    fn splits_series(&self, axis: SplitAxis) -> bool {
        matches!(
            (self.orientation, axis),
            (Orientation::SeriesAsColumns, SplitAxis::Series)
                | (Orientation::SeriesAsRows, SplitAxis::Time)
        )
    }

    /// Extent of the raw matrix along `axis`.
    pub fn extent(&self, axis: SplitAxis) -> usize {
        match axis {
            SplitAxis::Series => self.ncols(),
            SplitAxis::Time => self.nrows(),
        }
    }

    pub fn split(&self, spec: SplitSpec) -> Result<(Panel, Panel)> {
        spec.validate(self.extent(spec.axis))?;
        let b = spec.boundary;
        let (first, second) = if self.splits_series(spec.axis) {
            let n = self.series_count();
            (
                self.units.columns(0, b).into_owned(),
                self.units.columns(b, n - b).into_owned(),
            )
        } else {
            let d = self.series_len();
            (
                self.units.rows(0, b).into_owned(),
                self.units.rows(b, d - b).into_owned(),
            )
        };
        Ok((
            Panel {
                units: first,
                orientation: self.orientation,
            },
            Panel {
                units: second,
                orientation: self.orientation,
            },
        ))
    }

    /// Inverse of [`Panel::split`].
    pub fn concat(first: &Panel, second: &Panel, axis: SplitAxis) -> Result<Panel> {
        if first.orientation != second.orientation {
            return Err(Error::OrientationMismatch(format!(
                "{} vs {}",
                first.orientation, second.orientation
            )));
        }
        let units = if first.splits_series(axis) {
            if first.series_len() != second.series_len() {
                return Err(Error::ShapeMismatch(format!(
                    "series lengths {} and {} differ",
                    first.series_len(),
                    second.series_len()
                )));
            }
            let d = first.series_len();
            let (n1, n2) = (first.series_count(), second.series_count());
            DMatrix::from_fn(d, n1 + n2, |k, j| {
                if j < n1 {
                    first.units[(k, j)]
                } else {
                    second.units[(k, j - n1)]
                }
            })
        } else {
            if first.series_count() != second.series_count() {
                return Err(Error::ShapeMismatch(format!(
                    "series counts {} and {} differ",
                    first.series_count(),
                    second.series_count()
                )));
            }
            let n = first.series_count();
            let (d1, d2) = (first.series_len(), second.series_len());
            DMatrix::from_fn(d1 + d2, n, |k, j| {
                if k < d1 {
                    first.units[(k, j)]
                } else {
                    second.units[(k - d1, j)]
                }
            })
        };
        Ok(Panel {
            units,
            orientation: first.orientation,
        })
    }

    /// Requires `other` to have the same orientation and shape.
    pub fn check_compatible(&self, other: &Panel) -> Result<()> {
        if self.orientation != other.orientation {
            return Err(Error::OrientationMismatch(format!(
                "{} vs {}",
                self.orientation, other.orientation
            )));
        }
        if self.units.shape() != other.units.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} vs {}×{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        Ok(())
    }
}

/// Arithmetic mean, summed in index order.
pub fn sample_mean(v: &[f64]) -> Result<f64> {
    if v.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(v.iter().sum::<f64>() / v.len() as f64)
}

/// `v - mean(v)·1`.
pub fn center(v: &[f64]) -> Result<Vec<f64>> {
    let mu = sample_mean(v)?;
    Ok(v.iter().map(|x| x - mu).collect())
}

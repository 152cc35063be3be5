use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use csv::{ReaderBuilder, StringRecord, Trim, WriterBuilder};
use nalgebra::DMatrix;

use super::lags::build_lag_design;
use crate::error::{Error, Result};
use crate::panel::{Orientation, Panel};
use crate::regression::DesignMatrix;

/// How to read a response CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct IngestSpec {
    pub path: PathBuf,
    pub orientation: Orientation,
    pub has_header: bool,
    /// Header name of a column to drop (typically a date column).
    pub time_column: Option<String>,
    /// Per-series lag order; the first `lags` time steps are dropped from
    /// the responses.
    pub lags: usize,
}

impl IngestSpec {
    pub fn new(path: impl Into<PathBuf>, orientation: Orientation) -> Self {
        Self {
            path: path.into(),
            orientation,
            has_header: false,
            time_column: None,
            lags: 0,
        }
    }

    pub fn with_header(mut self) -> Self {
        self.has_header = true;
        self
    }

    pub fn with_time_column(mut self, name: impl Into<String>) -> Self {
        self.has_header = true;
        self.time_column = Some(name.into());
        self
    }

    pub fn with_lags(mut self, lags: usize) -> Self {
        self.lags = lags;
        self
    }
}

/// A numeric CSV body with its (optional) header.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Option<Vec<String>>,
    pub values: DMatrix<f64>,
}

/// Reads a rectangular numeric CSV.
///
/// Cell coordinates in errors are zero-based: `row` counts data records
/// (the header excluded) and `col` counts columns of the file as written,
/// including a dropped time column.
pub fn read_csv_matrix(path: &Path, has_header: bool, time_column: Option<&str>) -> Result<CsvTable> {
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_path(path)?;
    let mut records = reader.records();

    let header: Option<StringRecord> = if has_header {
        match records.next() {
            Some(r) => Some(r?),
            None => return Err(Error::EmptyInput),
        }
    } else {
        None
    };
    let dropped = match (time_column, &header) {
        (None, _) => None,
        (Some(name), Some(h)) => Some(h.iter().position(|c| c == name).ok_or_else(|| {
            Error::InvalidArgument(format!("time column {name:?} not found in header"))
        })?),
        (Some(_), None) => {
            return Err(Error::InvalidArgument("a time column can only be named in a file with a header".into()))
        }
    };

    let mut expected = header.as_ref().map(|h| h.len());
    let mut cells: Vec<f64> = Vec::new();
    let mut rows = 0;
    for (row, record) in records.enumerate() {
        let record = record?;
        let width = *expected.get_or_insert(record.len());
        if record.len() != width {
            return Err(Error::RaggedRows {
                record: row,
                expected: width,
                found: record.len(),
            });
        }
        for (col, cell) in record.iter().enumerate() {
            if Some(col) == dropped {
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| Error::NonNumericCell {
                row,
                col,
                value: cell.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::NonNumericCell {
                    row,
                    col,
                    value: cell.to_string(),
                });
            }
            cells.push(value);
        }
        rows += 1;
    }
    let width = expected.unwrap_or(0) - usize::from(dropped.is_some());
    if rows == 0 || width == 0 {
        return Err(Error::EmptyInput);
    }
    let header = header.map(|h| {
        h.iter()
            .enumerate()
            .filter(|(c, _)| Some(*c) != dropped)
            .map(|(_, name)| name.to_string())
            .collect()
    });
    Ok(CsvTable {
        header,
        values: DMatrix::from_row_slice(rows, width, &cells),
    })
}

/// Reads the responses of `spec` as a panel, with the first `spec.lags`
/// time steps dropped.
pub fn ingest_csv(spec: &IngestSpec) -> Result<Panel> {
    Ok(load_dataset(spec, None)?.1)
}

/// Reads responses and predictors.
///
/// Predictors come from `x` (same layout and header settings as the
/// responses), from the lagged responses when `spec.lags > 0`, or are
/// absent (intercept-only design).
pub fn load_dataset(spec: &IngestSpec, x: Option<&Path>) -> Result<(DesignMatrix, Panel)> {
    let table = read_csv_matrix(&spec.path, spec.has_header, spec.time_column.as_deref())?;
    let y = Panel::new(table.values, spec.orientation)?;
    match (x, spec.lags) {
        (Some(_), l) if l > 0 => Err(Error::InvalidArgument(
            "lagged predictors and a predictor file cannot be combined".into(),
        )),
        (Some(path), _) => {
            let table = read_csv_matrix(path, spec.has_header, spec.time_column.as_deref())?;
            let design = DesignMatrix::new(table.values, spec.orientation)?;
            if design.observations() != y.series_count() {
                return Err(Error::ShapeMismatch(format!(
                    "{} predictor observations vs {} response series",
                    design.observations(),
                    y.series_count()
                )));
            }
            Ok((design, y))
        }
        (None, 0) => Ok((DesignMatrix::intercept_only(y.series_count(), spec.orientation)?, y)),
        (None, lags) => build_lag_design(&y, lags),
    }
}

/// Shortest decimal text that parses back to the same `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:?}")
}

/// Writes `values` as CSV, one matrix row per record.
pub fn write_csv_matrix<W: Write>(writer: W, values: &DMatrix<f64>, header: Option<&[String]>) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(writer);
    if let Some(h) = header {
        if h.len() != values.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "{} header names for {} columns",
                h.len(),
                values.ncols()
            )));
        }
        w.write_record(h)?;
    }
    for i in 0..values.nrows() {
        w.write_record(values.row(i).iter().map(|&v| format_value(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the raw matrix of `panel` to `path`.
pub fn emit_panel(panel: &Panel, path: &Path) -> Result<()> {
    write_csv_matrix(File::create(path)?, &panel.to_matrix(), None)
}

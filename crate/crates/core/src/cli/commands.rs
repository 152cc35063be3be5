use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::Args;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::ingest::{load_dataset, read_csv_matrix, write_csv_matrix, IngestSpec};
use super::lags::own_lag_columns;
use super::report::{ComparisonBlock, ComparisonDocument, ReportDocument, COMPARISON_SCHEMA};
use super::Method;
use crate::error::{Error, Result};
use crate::functionals::{componentwise_mean_climatology, ns_climatology, per_series_mean_prediction};
use crate::losses::{realized_loss, Loss};
use crate::panel::{Orientation, Panel, SplitAxis, SplitSpec};
use crate::regression::{
    fit_multi_ols, fit_ns_regression, fit_ols_1d_per_component, predict, DesignMatrix, FitMethod, FitResult,
};
use crate::simulate::{generate, Correlation, Scenario, SimConfig};

/// Input files shared by `fit` and `eval`.
#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// Response CSV.
    #[arg(long)]
    pub y: PathBuf,
    /// Predictor CSV in the same orientation as the responses.
    #[arg(long)]
    pub x: Option<PathBuf>,
    /// `columns` (d × n, one series per column) or `rows` (n × d, one realization per row).
    #[arg(long)]
    pub orientation: Orientation,
    /// The CSV files start with a header row.
    #[arg(long)]
    pub header: bool,
    /// Header name of a column to drop, such as a date column.
    #[arg(long)]
    pub time_column: Option<String>,
    /// Use this many lags of every response series as predictors (rows orientation).
    #[arg(long, default_value_t = 0)]
    pub lags: usize,
}

impl DataArgs {
    pub fn ingest_spec(&self) -> IngestSpec {
        IngestSpec {
            path: self.y.clone(),
            orientation: self.orientation,
            has_header: self.header || self.time_column.is_some(),
            time_column: self.time_column.clone(),
            lags: self.lags,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Constant added to the Nash-Sutcliffe weight denominator.
    #[arg(long, default_value_t = 0.0)]
    pub extended_a: f64,
    /// Fit on the first `SPLIT` observations only.
    #[arg(long)]
    pub split: Option<usize>,
    /// Fit file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Observations, plus predictors or lags when evaluating a fit file.
    #[command(flatten)]
    pub data: DataArgs,
    /// Prediction CSV laid out like the observations.
    #[arg(long, conflicts_with = "fit", required_unless_present = "fit")]
    pub pred: Option<PathBuf>,
    /// Fit file whose predictions are evaluated.
    #[arg(long)]
    pub fit: Option<PathBuf>,
    /// Evaluate only observations from index `SPLIT` on.
    #[arg(long)]
    pub split: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub extended_a: f64,
    /// Free-text units recorded in the report.
    #[arg(long)]
    pub units: Option<String>,
    /// Method label for external predictions.
    #[arg(long, default_value = "external")]
    pub label: String,
    /// Report file; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Generator settings; unset values keep the scenario defaults.
#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// `ar1` or `exchangeable`.
    #[arg(long)]
    pub correlation: Option<Correlation>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Drop the error term of the regression scenarios.
    #[arg(long)]
    pub zero_noise: bool,
}

impl SimArgs {
    pub fn config(&self, scenario: Scenario) -> SimConfig {
        let mut c = SimConfig::new(scenario).with_seed(self.seed);
        c.d = self.d.unwrap_or(c.d);
        c.n = self.n.unwrap_or(c.n);
        c.p = self.p.unwrap_or(c.p);
        c.delta = self.delta.unwrap_or(c.delta);
        c.rho = self.rho.unwrap_or(c.rho);
        c.correlation = self.correlation.unwrap_or(c.correlation);
        c.zero_noise = self.zero_noise;
        c
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub scenario: Scenario,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    /// Simulated scenario to run.
    #[arg(long, conflicts_with = "y", required_unless_present = "y")]
    pub scenario: Option<Scenario>,
    /// Response CSV for a real-data comparison.
    #[arg(long)]
    pub y: Option<PathBuf>,
    #[arg(long, requires = "y")]
    pub x: Option<PathBuf>,
    /// Required with `--y`.
    #[arg(long)]
    pub orientation: Option<Orientation>,
    #[arg(long)]
    pub header: bool,
    #[arg(long)]
    pub time_column: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub lags: usize,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Training observations; the rest form the test block.
    #[arg(long)]
    pub split: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub extended_a: f64,
    #[arg(long)]
    pub units: Option<String>,
    /// Output directory for `report.json` and `manifest.json`; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Persisted regression fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitFile {
    pub method: String,
    pub orientation: Orientation,
    pub d: usize,
    pub p: usize,
    pub lags: usize,
    /// `d × (p+1)` row-major, intercept last.
    pub theta: Vec<Vec<f64>>,
    pub condition_estimate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extended_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub train_observations: usize,
    pub train_realized_en: f64,
    /// Absent when some training series has zero variance.
    pub train_realized_ns: Option<f64>,
}

impl FitFile {
    pub fn to_fit_result(&self) -> Result<FitResult> {
        let method = match self.method.as_str() {
            "ols1d" => FitMethod::Ols1d,
            "multiols" => FitMethod::MultiOls,
            "nsreg" => FitMethod::NsRegression,
            "nsreg-ext" => FitMethod::NsExtended(self.extended_a.unwrap_or(0.0)),
            "columnwise-ns" => FitMethod::ColumnwiseNs,
            other => return Err(Error::InvalidArgument(format!("unknown method {other:?} in fit file"))),
        };
        if self.theta.len() != self.d || self.theta.iter().any(|r| r.len() != self.p + 1) {
            return Err(Error::ShapeMismatch(format!("theta is not {} × {}", self.d, self.p + 1)));
        }
        let flat: Vec<f64> = self.theta.iter().flatten().copied().collect();
        Ok(FitResult {
            theta: DMatrix::from_row_slice(self.d, self.p + 1, &flat),
            method,
            orientation: self.orientation,
            condition_estimate: self.condition_estimate,
            weights: self.weights.clone(),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        if !path.is_file() {
            return Err(Error::MissingFile(path.to_path_buf()));
        }
        Ok(serde_json::from_reader(File::open(path)?)?)
    }
}

/// Run record written next to generated files; the only place a timestamp appears.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<SimConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub files: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acceptance_rate: Option<f64>,
    pub created_unix_seconds: u64,
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn write_matrix(path: &Path, values: &DMatrix<f64>) -> Result<()> {
    write_csv_matrix(BufWriter::new(File::create(path)?), values, None)
}

/// Splits design and responses after observation `boundary`.
pub fn split_observations(
    x: &DesignMatrix,
    y: &Panel,
    boundary: usize,
) -> Result<((DesignMatrix, Panel), (DesignMatrix, Panel))> {
    let axis = match y.orientation() {
        Orientation::SeriesAsColumns => SplitAxis::Series,
        Orientation::SeriesAsRows => SplitAxis::Time,
    };
    let (y1, y2) = y.split(SplitSpec::new(boundary, axis))?;
    let (x1, x2) = x.split_observations(boundary)?;
    Ok(((x1, y1), (x2, y2)))
}

/// Fits `method`. For `ols1d` with `lags > 0` each component is regressed
/// on its own lags only; otherwise on every predictor.
pub fn fit_with_method(method: Method, x: &DesignMatrix, y: &Panel, lags: usize, a: f64) -> Result<FitResult> {
    match method {
        Method::Ols1d => {
            let d = y.series_len();
            let columns = if lags > 0 {
                if x.predictors() != lags * d {
                    return Err(Error::ShapeMismatch(format!(
                        "{} predictors do not match {lags} lags of {d} series",
                        x.predictors()
                    )));
                }
                own_lag_columns(d, lags)
            } else {
                vec![(0..x.predictors()).collect(); d]
            };
            fit_ols_1d_per_component(x, y, &columns)
        }
        Method::MultiOls => fit_multi_ols(x, y),
        Method::NsReg => fit_ns_regression(x, y, a),
        Method::NsRegExt => {
            if a.is_nan() || a <= 0.0 {
                return Err(Error::InvalidArgument("nsreg-ext needs --extended-a > 0".into()));
            }
            fit_ns_regression(x, y, a)
        }
    }
}

/// Fits a model and writes the fit file.
pub fn cmd_fit(args: &FitArgs) -> Result<FitFile> {
    let (x, y) = load_dataset(&args.data.ingest_spec(), args.data.x.as_deref())?;
    let (x, y) = match args.split {
        Some(b) => split_observations(&x, &y, b)?.0,
        None => (x, y),
    };
    let fit = fit_with_method(args.method, &x, &y, args.data.lags, args.extended_a)?;
    let z = predict(&fit, &x)?;
    let a = match fit.method {
        FitMethod::NsExtended(a) => Some(a),
        _ => None,
    };
    let file = FitFile {
        method: fit.method.name().to_string(),
        orientation: fit.orientation,
        d: fit.response_dim(),
        p: fit.predictors(),
        lags: args.data.lags,
        theta: fit.theta.row_iter().map(|r| r.iter().copied().collect()).collect(),
        condition_estimate: fit.condition_estimate,
        extended_a: a,
        weights: fit.weights.clone(),
        train_observations: y.series_count(),
        train_realized_en: realized_loss(&z, &y, Loss::Euclidean)?,
        train_realized_ns: realized_loss(&z, &y, Loss::ns_with(args.extended_a)).ok(),
    };
    write_json(&args.out, &file)?;
    Ok(file)
}

/// Evaluates predictions (from a CSV or a fit file) against observations.
pub fn cmd_eval(args: &EvalArgs) -> Result<ReportDocument> {
    let data = &args.data;
    let (method, z, y, p) = match (&args.pred, &args.fit) {
        (Some(pred), _) => {
            if data.lags > 0 || data.x.is_some() {
                return Err(Error::InvalidArgument(
                    "--lags and --x only apply when evaluating a fit file".into(),
                ));
            }
            let spec = data.ingest_spec();
            let (_, y) = load_dataset(&spec, None)?;
            let table = read_csv_matrix(pred, spec.has_header, spec.time_column.as_deref())?;
            let z = Panel::new(table.values, data.orientation)?;
            let (z, y) = match args.split {
                Some(b) => {
                    let axis = match y.orientation() {
                        Orientation::SeriesAsColumns => SplitAxis::Series,
                        Orientation::SeriesAsRows => SplitAxis::Time,
                    };
                    z.check_compatible(&y)?;
                    (z.split(SplitSpec::new(b, axis))?.1, y.split(SplitSpec::new(b, axis))?.1)
                }
                None => (z, y),
            };
            (args.label.clone(), z, y, 0)
        }
        (None, Some(fit_path)) => {
            let file = FitFile::read(fit_path)?;
            if data.lags != 0 && data.lags != file.lags {
                return Err(Error::InvalidArgument(format!(
                    "--lags {} contradicts the fit file ({} lags)",
                    data.lags, file.lags
                )));
            }
            if data.orientation != file.orientation {
                return Err(Error::OrientationMismatch(format!(
                    "fit is {} but --orientation is {}",
                    file.orientation, data.orientation
                )));
            }
            let spec = IngestSpec {
                lags: file.lags,
                ..data.ingest_spec()
            };
            let (x, y) = load_dataset(&spec, data.x.as_deref())?;
            let (x, y) = match args.split {
                Some(b) => split_observations(&x, &y, b)?.1,
                None => (x, y),
            };
            let fit = file.to_fit_result()?;
            (file.method.clone(), predict(&fit, &x)?, y, file.p)
        }
        (None, None) => return Err(Error::InvalidArgument("either --pred or --fit is required".into())),
    };
    let report =
        ReportDocument::evaluate(&method, &z, &y, p, args.extended_a, None)?.with_units(args.units.clone());
    if let Some(out) = &args.out {
        write_json(out, &report)?;
    }
    Ok(report)
}

/// Generates a scenario and writes `y.csv` (plus `x.csv` and
/// `theta_true.csv` for regression scenarios) and `manifest.json`.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<Manifest> {
    let config = args.sim.config(args.scenario);
    let out = generate(&config)?;
    fs::create_dir_all(&args.out)?;
    let mut files = vec!["y.csv".to_string()];
    write_matrix(&args.out.join("y.csv"), &out.y.to_matrix())?;
    if let Some(x) = &out.x {
        write_matrix(&args.out.join("x.csv"), &x.to_matrix())?;
        files.push("x.csv".into());
    }
    if let Some(theta) = &out.theta_true {
        write_matrix(&args.out.join("theta_true.csv"), theta)?;
        files.push("theta_true.csv".into());
    }
    let manifest = Manifest {
        command: "simulate".into(),
        config: Some(config),
        source: None,
        files,
        acceptance_rate: out.acceptance_rate,
        created_unix_seconds: now_unix(),
    };
    write_json(&args.out.join("manifest.json"), &manifest)?;
    Ok(manifest)
}

fn regression_blocks(
    methods: &[Method],
    x: &DesignMatrix,
    y: &Panel,
    lags: usize,
    split: Option<usize>,
    a: f64,
    seed: Option<u64>,
) -> Result<Vec<ComparisonBlock>> {
    let ((x_train, y_train), test) = match split {
        Some(b) => {
            let (train, test) = split_observations(x, y, b)?;
            (train, Some(test))
        }
        None => ((x.clone(), y.clone()), None),
    };
    let fits = methods
        .iter()
        .map(|&m| fit_with_method(m, &x_train, &y_train, lags, a))
        .collect::<Result<Vec<_>>>()?;
    let p = x.predictors();
    let evaluate = |xs: &DesignMatrix, ys: &Panel| -> Result<Vec<ReportDocument>> {
        fits.iter()
            .map(|fit| ReportDocument::evaluate(fit.method.name(), &predict(fit, xs)?, ys, p, a, seed))
            .collect()
    };
    let mut blocks = Vec::new();
    match test {
        Some((x_test, y_test)) => {
            blocks.push(ComparisonBlock::new("train", evaluate(&x_train, &y_train)?)?);
            blocks.push(ComparisonBlock::new("test", evaluate(&x_test, &y_test)?)?);
        }
        None => blocks.push(ComparisonBlock::new("in-sample", evaluate(&x_train, &y_train)?)?),
    }
    Ok(blocks)
}

/// Runs the comparison for a simulated scenario.
///
/// Experiment #1 scenarios (and the truncated sampler) compare the
/// component-wise mean climatology, the Nash-Sutcliffe climatology and the
/// per-series means in sample. Regression scenarios fit multi-dimensional
/// OLS and Nash-Sutcliffe regression on the first `split` observations
/// (default `n/2`) and evaluate both blocks.
pub fn simulated_comparison(config: &SimConfig, split: Option<usize>, a: f64) -> Result<ComparisonDocument> {
    let out = generate(config)?;
    let seed = Some(config.seed.0);
    let y = &out.y;
    let blocks = match &out.x {
        Some(x) => {
            let boundary = split.unwrap_or(y.series_count() / 2);
            regression_blocks(&[Method::MultiOls, Method::NsReg], x, y, 0, Some(boundary), a, seed)?
        }
        None => {
            let candidates = [
                ("componentwise-mean-climatology", componentwise_mean_climatology(y).broadcast_like(y)?),
                ("ns-climatology", ns_climatology(y, a)?.broadcast_like(y)?),
                ("series-means", per_series_mean_prediction(y)),
            ];
            let reports = candidates
                .iter()
                .map(|(name, z)| ReportDocument::evaluate(name, z, y, 0, a, seed))
                .collect::<Result<Vec<_>>>()?;
            vec![ComparisonBlock::new("in-sample", reports)?]
        }
    };
    Ok(ComparisonDocument {
        schema: COMPARISON_SCHEMA.into(),
        source: config.scenario.to_string(),
        orientation: y.orientation().to_string(),
        seed,
        blocks,
    })
}

/// Compares one-dimensional OLS, multi-dimensional OLS and Nash-Sutcliffe
/// regression on a dataset.
pub fn dataset_comparison(
    source: &str,
    x: &DesignMatrix,
    y: &Panel,
    lags: usize,
    split: Option<usize>,
    a: f64,
) -> Result<ComparisonDocument> {
    let blocks = regression_blocks(&[Method::Ols1d, Method::MultiOls, Method::NsReg], x, y, lags, split, a, None)?;
    Ok(ComparisonDocument {
        schema: COMPARISON_SCHEMA.into(),
        source: source.to_string(),
        orientation: y.orientation().to_string(),
        seed: None,
        blocks,
    })
}

/// Runs an end-to-end comparison; writes `report.json` and `manifest.json`
/// when `--out` is given.
pub fn cmd_experiment(args: &ExperimentArgs) -> Result<ComparisonDocument> {
    let (mut doc, config, source) = match (&args.scenario, &args.y) {
        (Some(scenario), _) => {
            let config = args.sim.config(*scenario);
            (simulated_comparison(&config, args.split, args.extended_a)?, Some(config), None)
        }
        (None, Some(path)) => {
            let orientation = args
                .orientation
                .ok_or_else(|| Error::InvalidArgument("--orientation is required with --y".into()))?;
            let spec = IngestSpec {
                path: path.clone(),
                orientation,
                has_header: args.header || args.time_column.is_some(),
                time_column: args.time_column.clone(),
                lags: args.lags,
            };
            let (x, y) = load_dataset(&spec, args.x.as_deref())?;
            let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let doc = dataset_comparison(&name, &x, &y, args.lags, args.split, args.extended_a)?;
            (doc, None, Some(path.display().to_string()))
        }
        (None, None) => return Err(Error::InvalidArgument("either --scenario or --y is required".into())),
    };
    if args.units.is_some() {
        for report in doc.blocks.iter_mut().flat_map(|b| b.reports.iter_mut()) {
            report.units = args.units.clone();
        }
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        write_json(&dir.join("report.json"), &doc)?;
        let manifest = Manifest {
            command: "experiment".into(),
            config,
            source,
            files: vec!["report.json".into()],
            acceptance_rate: None,
            created_unix_seconds: now_unix(),
        };
        write_json(&dir.join("manifest.json"), &manifest)?;
    }
    Ok(doc)
}

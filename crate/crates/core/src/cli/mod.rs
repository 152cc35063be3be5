//! Command-line front end: CSV ingestion, lag features, the `fit`, `eval`,
//! `simulate` and `experiment` commands, and their JSON documents.
//!
//! The argument structs derive [`clap::Args`] so the `ns-learn` binary is a
//! thin dispatcher; every command is also callable as a library function.

mod commands;
mod ingest;
mod lags;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use commands::{
    cmd_eval, cmd_experiment, cmd_fit, cmd_simulate, dataset_comparison, fit_with_method, simulated_comparison,
    split_observations, DataArgs, EvalArgs, ExperimentArgs, FitArgs, FitFile, Manifest, SimArgs, SimulateArgs,
};
pub use ingest::{
    emit_panel, format_value, ingest_csv, load_dataset, read_csv_matrix, write_csv_matrix, CsvTable, IngestSpec,
};
pub use lags::{build_lag_design, own_lag_columns};
pub use report::{
    zero_variance_series, ComparisonBlock, ComparisonDocument, Dims, ReportDocument, COMPARISON_SCHEMA,
    REPORT_SCHEMA,
};

/// Environment variable capping the worker threads (`0` or unset: automatic).
pub const THREADS_ENV: &str = "NS_LEARN_THREADS";

/// Sizes the global rayon pool from [`THREADS_ENV`]; returns the thread count.
pub fn configure_threads() -> Result<usize> {
    let requested = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
        _ => 0,
    };
    if requested > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(requested)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    Ok(rayon::current_num_threads())
}

/// Estimators selectable with `--method`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Method {
    /// One univariate OLS fit per response component.
    #[value(name = "ols1d")]
    #[serde(rename = "ols1d")]
    Ols1d,
    #[value(name = "multiols")]
    #[serde(rename = "multiols")]
    MultiOls,
    #[value(name = "nsreg")]
    #[serde(rename = "nsreg")]
    NsReg,
    /// Nash-Sutcliffe regression with the extended weight; needs `--extended-a > 0`.
    #[value(name = "nsreg-ext")]
    #[serde(rename = "nsreg-ext")]
    NsRegExt,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Ols1d, Method::MultiOls, Method::NsReg, Method::NsRegExt];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ols1d => "ols1d",
            Method::MultiOls => "multiols",
            Method::NsReg => "nsreg",
            Method::NsRegExt => "nsreg-ext",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

//! One-step-ahead forecasts from lagged values of a multi-site CSV.
//!
//! `cargo run --example lag_forecast -- data.csv 2` reads a matrix with one
//! time step per row; without arguments a simulated file is used.

use std::path::PathBuf;

use ns_learn::cli::{emit_panel, fit_with_method, load_dataset, split_observations, IngestSpec, Method, ReportDocument};
use ns_learn::regression::predict;
use ns_learn::simulate::{generate, Scenario, SimConfig};
use ns_learn::Orientation;

fn main() -> ns_learn::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = match args.next() {
        Some(p) => PathBuf::from(p),
        None => {
            let sim = generate(&SimConfig::new(Scenario::Exp1d).with_dims(500, 6).with_seed(5))?;
            let path = std::env::temp_dir().join("ns-learn-lag-forecast.csv");
            emit_panel(&sim.y, &path)?;
            path
        }
    };
    let lags = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);

    let spec = IngestSpec::new(&path, Orientation::SeriesAsRows).with_lags(lags);
    let (x, y) = load_dataset(&spec, None)?;
    let boundary = y.series_count() * 2 / 3;
    let ((x_train, y_train), (x_test, y_test)) = split_observations(&x, &y, boundary)?;

    for method in [Method::Ols1d, Method::MultiOls, Method::NsReg] {
        let fit = fit_with_method(method, &x_train, &y_train, lags, 0.0)?;
        let z = predict(&fit, &x_test)?;
        let r = ReportDocument::evaluate(method.name(), &z, &y_test, x.predictors(), 0.0, None)?;
        println!("{:<9} test EN {:.4}  NS {:.4}  NSE {:.4}", r.method, r.realized_en, r.realized_ns, r.realized_nse);
    }
    Ok(())
}

//! Multivariate OLS against Nash-Sutcliffe regression on simulated data.

use ns_learn::losses::{realized_loss, Loss};
use ns_learn::regression::{fit_multi_ols, fit_ns_regression, predict};
use ns_learn::simulate::{generate, Scenario, SimConfig};

fn main() -> ns_learn::Result<()> {
    let mut config = SimConfig::new(Scenario::Exp2).with_dims(20, 400).with_seed(3);
    config.p = 5;
    let sim = generate(&config)?;
    let x = sim.x.expect("regression scenario has predictors");
    let y = sim.y;

    for (name, fit) in [("multiols", fit_multi_ols(&x, &y)?), ("nsreg", fit_ns_regression(&x, &y, 0.0)?)] {
        let z = predict(&fit, &x)?;
        println!(
            "{name:<9} EN {:>12.4e}  NS {:.4}  cond {:.1e}",
            realized_loss(&z, &y, Loss::Euclidean)?,
            realized_loss(&z, &y, Loss::NashSutcliffe)?,
            fit.condition_estimate
        );
    }
    Ok(())
}

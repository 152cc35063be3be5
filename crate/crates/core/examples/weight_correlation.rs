//! Monte Carlo check that the Nash-Sutcliffe weight is uncorrelated with
//! each component for IID normal data, and correlated for log-normal data.

use ns_learn::simulate::{check_c3_uncorrelatedness, check_weight_correlation, Marginal, RngSeed};

fn main() -> ns_learn::Result<()> {
    let normal = check_c3_uncorrelatedness(10, 200_000, RngSeed(42))?;
    println!("normal     max |z| {:.2}", normal.max_abs_z);
    let skewed = check_weight_correlation(10, 200_000, RngSeed(42), Marginal::LogNormal, 0.0, 1.0)?;
    println!("log-normal max |z| {:.2}", skewed.max_abs_z);
    Ok(())
}

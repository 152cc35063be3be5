//! Rejection sampling from a multivariate normal truncated to series with
//! sample variance above a threshold.

use ns_learn::simulate::{ar1_covariance, sample_truncated_mvn, RngSeed, TruncationConfig};

fn main() -> ns_learn::Result<()> {
    let d = 50;
    let mu = vec![1.0; d];
    let sigma = ar1_covariance(d, 4.0, 0.5);
    for delta in [0.0, 150.0, 200.0, 250.0] {
        let out = sample_truncated_mvn(&mu, &sigma, delta, 500, RngSeed(42), TruncationConfig::default())?;
        println!(
            "delta {delta:<5} accepted {} series, acceptance rate {:.3}",
            out.y.series_count(),
            out.acceptance_rate.unwrap_or(1.0)
        );
    }
    Ok(())
}

//! Estimator comparison on every simulation scenario.
//!
//! `cargo run --release --example simulated_experiments -- 42`

use ns_learn::cli::simulated_comparison;
use ns_learn::simulate::{Scenario, SimConfig};

fn main() -> ns_learn::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    for scenario in Scenario::ALL {
        let mut config = SimConfig::new(scenario).with_seed(seed);
        if matches!(scenario, Scenario::Exp2 | Scenario::Exp3) {
            config = config.with_dims(100, 1000);
        }
        let doc = simulated_comparison(&config, None, 0.0)?;
        for block in &doc.blocks {
            println!("{scenario} / {}", block.name);
            for r in &block.reports {
                println!("  {:<32} EN {:>12.4e}  NS {:>10.4}", r.method, r.realized_en, r.realized_ns);
            }
            println!("  best EN {}, best NS {}", block.best_en, block.best_ns);
        }
    }
    Ok(())
}

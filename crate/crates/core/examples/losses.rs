//! Pointwise and realized losses on a three-series panel.

use ns_learn::functionals::per_series_mean_prediction;
use ns_learn::losses::{loss_en, loss_ns, loss_ns_extended, ns_weight, nse, realized_loss, skill_score, Loss};
use ns_learn::{Orientation, Panel};

fn main() -> ns_learn::Result<()> {
    let y = [1.0, 3.0, 2.0, 6.0];
    let z = [1.5, 2.5, 2.0, 5.0];
    println!("EN loss        {:.6}", loss_en(&z, &y)?);
    println!("NS weight      {:.6}", ns_weight(&y)?);
    println!("NS loss        {:.6}", loss_ns(&z, &y)?);
    println!("NSE            {:.6}", nse(&z, &y)?);
    for a in [0.0, 1.0, 10.0] {
        println!("NS loss, a={a:<4} {:.6}", loss_ns_extended(&z, &y, a)?);
    }

    // series with very different spread: EN is dominated by the wide one
    let obs = Panel::from_series(
        &[vec![1.0, 3.0, 2.0, 6.0], vec![100.0, 140.0, 90.0, 170.0], vec![0.1, 0.2, 0.1, 0.3]],
        Orientation::SeriesAsColumns,
    )?;
    let pred = Panel::from_series(
        &[vec![1.5, 2.5, 2.0, 5.0], vec![110.0, 130.0, 100.0, 150.0], vec![0.2, 0.2, 0.2, 0.2]],
        Orientation::SeriesAsColumns,
    )?;
    let reference = per_series_mean_prediction(&obs);
    println!();
    println!("realized EN    {:.4}", realized_loss(&pred, &obs, Loss::Euclidean)?);
    println!("realized NS    {:.4}", realized_loss(&pred, &obs, Loss::NashSutcliffe)?);
    println!("NS skill vs series means {:.4}", skill_score(&pred, &obs, &reference, Loss::NashSutcliffe)?);
    Ok(())
}

//! Mean and Nash-Sutcliffe climatologies, their identification functions,
//! and the extended weight moving one toward the other.

use ns_learn::functionals::{
    componentwise_mean_climatology, empirical_identification, m_estimate, ns_climatology, numeric_minimize,
    series_weights, IdentificationKind,
};
use ns_learn::losses::Loss;
use ns_learn::{Orientation, Panel};

fn main() -> ns_learn::Result<()> {
    let y = Panel::from_series(&[vec![1.0, 3.0], vec![0.0, 4.0]], Orientation::SeriesAsColumns)?;
    let mean = componentwise_mean_climatology(&y);
    let ns = ns_climatology(&y, 0.0)?;
    println!("weights          {:?}", series_weights(&y, 0.0)?);
    println!("mean climatology {:?}", mean.values);
    println!("NS climatology   {:?}", ns.values);

    let z = ns.broadcast_like(&y)?;
    println!("NS identification at NS climatology {:?}", empirical_identification(&z, &y, IdentificationKind::NashSutcliffe)?);

    let closed = m_estimate(&y, Loss::NashSutcliffe)?;
    let numeric = numeric_minimize(&y, Loss::NashSutcliffe, &[0.0, 0.0], 1e-10)?;
    println!("closed form {:?}  gradient descent {:?}", closed.values, numeric);

    for a in [0.0, 1.0, 10.0, 1e6] {
        println!("a = {a:<9} {:?}", ns_climatology(&y, a)?.values);
    }
    Ok(())
}

//! The same matrix read with series as columns or as rows, and splits.

use nalgebra::DMatrix;
use ns_learn::losses::{realized_loss, Loss};
use ns_learn::{Orientation, Panel, SplitAxis, SplitSpec};

fn main() -> ns_learn::Result<()> {
    // 4 time steps (rows) at 3 sites (columns)
    let raw = DMatrix::from_row_slice(4, 3, &[1.0, 10.0, 0.5, 2.0, 14.0, 0.7, 4.0, 9.0, 0.2, 3.0, 11.0, 0.4]);

    let by_site = Panel::new(raw.clone(), Orientation::SeriesAsColumns)?;
    let by_time = Panel::new(raw.clone(), Orientation::SeriesAsRows)?;
    println!("columns: {} series of length {}", by_site.series_count(), by_site.series_len());
    println!("rows:    {} series of length {}", by_time.series_count(), by_time.series_len());

    let pred = raw.map(|v| v * 0.9 + 0.1);
    for (name, y) in [("columns", &by_site), ("rows", &by_time)] {
        let z = Panel::new(pred.clone(), y.orientation())?;
        println!(
            "{name:<8} EN {:.5}  NS {:.5}",
            realized_loss(&z, y, Loss::Euclidean)?,
            realized_loss(&z, y, Loss::NashSutcliffe)?
        );
    }

    let (train, test) = by_time.split(SplitSpec::new(3, SplitAxis::Time))?;
    println!("time split: {} + {} rows", train.series_count(), test.series_count());
    let back = Panel::concat(&train, &test, SplitAxis::Time)?;
    assert_eq!(back, by_time);
    Ok(())
}

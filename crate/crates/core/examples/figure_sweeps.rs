//! Bound against C^2 for each figure series, printing where the curves meet.

use bellbound::family::{has_interior_extremum, series_rows, sweep, SweepConfig};

fn main() -> bellbound::Result<()> {
    for (number, config) in [(1, SweepConfig::figure1()), (2, SweepConfig::figure2())] {
        let rows = sweep(&config)?;
        println!("figure {number}: {} rows", rows.len());
        for &value in &config.series {
            let series = series_rows(&rows, config.fix, value);
            let bounds: Vec<f64> = series.iter().filter_map(|r| r.bound).collect();
            let last = series.last().expect("csq = 1 is always in gamut");
            println!(
                "  series {value:.2}: {} in-gamut points from C^2 = {:.3}, bound at C^2 = 1: {:.12}, interior extremum: {}",
                series.len(),
                series[0].csq,
                last.bound.unwrap_or(f64::NAN),
                has_interior_extremum(&bounds)
            );
        }
    }
    Ok(())
}

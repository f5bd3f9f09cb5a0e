//! The equal-weight point is a stationary saddle of the bound.

use bellbound::family::{classify_critical_point, stationarity_ratio, FamilyCoeffs};

fn main() -> bellbound::Result<()> {
    let critical = FamilyCoeffs::critical();
    let report = classify_critical_point(&critical, 1e-3)?;
    println!("bound            {:.12}", report.bound);
    println!("gradient norm    {:e}", report.gradient_norm);
    println!("hessian spectrum {:?}", report.hessian_eigenvalues);
    println!("classification   {:?}", report.classification);
    if let Some(w) = report.witness_up {
        println!(
            "ascent along     {:?} ({:+.6})",
            w.direction, w.second_difference
        );
    }
    if let Some(w) = report.witness_down {
        println!(
            "descent along    {:?} ({:+.6})",
            w.direction, w.second_difference
        );
    }
    // Differences shrink like eps^2 at a stationary point.
    println!(
        "step ratio 1e-2 / 1e-3: {:.3}",
        stationarity_ratio(&critical, 1e-2, 1e-3)?
    );
    Ok(())
}

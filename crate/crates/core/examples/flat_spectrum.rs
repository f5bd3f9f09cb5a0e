//! Flat-spectrum verdicts for three members of the seven-qubit family.

use bellbound::entanglement::{flat_spectrum_report, spectrum_report};
use bellbound::family::{state_from_coeffs, FamilyCoeffs};
use bellbound::Bipartition;

fn main() -> bellbound::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let points = [
        ("critical", [0.5; 4]),
        ("ghz-like", [h, h, 0.0, 0.0]),
        ("uneven", [0.5f64.sqrt(), 0.3f64.sqrt(), 0.2f64.sqrt(), 0.0]),
    ];
    for (name, alpha) in points {
        let state = state_from_coeffs(&FamilyCoeffs::new(alpha)?)?;
        let report = flat_spectrum_report(&state);
        let flat = report.cuts.iter().filter(|c| c.is_flat).count();
        println!(
            "{name:>9}: {flat}/{} cuts flat, maximally entangled = {}",
            report.cuts.len(),
            report.maximally_entangled
        );
        let last = spectrum_report(&state, &Bipartition::new(7, &[7])?)?;
        println!(
            "           A = {{7}}: spectrum {:?}, S = {:.6}, S2 = {:.6}",
            last.eigenvalues, last.von_neumann, last.renyi2
        );
    }
    Ok(())
}

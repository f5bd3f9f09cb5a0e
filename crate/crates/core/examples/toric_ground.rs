//! The equal-weight family state is the unique ground state of the disk
//! toric code.

use bellbound::family::{state_from_coeffs, FamilyCoeffs};
use bellbound::toric::{verify_with, ToricHamiltonian, STABILIZER_NAMES};

fn main() -> bellbound::Result<()> {
    let spectrum = ToricHamiltonian::new().spectrum();
    println!(
        "ground energy {:.9}, degeneracy {}",
        spectrum.ground_energy(),
        spectrum.ground_degeneracy()
    );
    for alpha in [[0.5; 4], [0.5, -0.5, 0.5, -0.5]] {
        let state = state_from_coeffs(&FamilyCoeffs::new(alpha)?)?;
        let report = verify_with(&state, &spectrum)?;
        let stabilizers: Vec<String> = STABILIZER_NAMES
            .iter()
            .zip(report.stabilizer_expectations)
            .map(|(name, e)| format!("{name}={e:+.0}"))
            .collect();
        println!("alpha = {alpha:?}");
        println!("  {}", stabilizers.join(" "));
        println!(
            "  energy {:.9}, overlap {:.9}, ground state: {}",
            report.energy, report.overlap_with_ground, report.is_ground_state
        );
    }
    Ok(())
}

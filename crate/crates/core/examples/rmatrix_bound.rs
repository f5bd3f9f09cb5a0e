//! The two-eigenvalue R-matrix bound on the family, brute force against
//! the closed-form diagonal.

use bellbound::bell::{bell_bound, r_matrix};
use bellbound::family::{rtr_diagonal, state_from_coeffs, FamilyCoeffs};

fn main() -> bellbound::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for alpha in [[0.5; 4], [h, h, 0.0, 0.0], [0.6, 0.0, 0.8, 0.0]] {
        let coeffs = FamilyCoeffs::new(alpha)?;
        let report = bell_bound(&r_matrix(&state_from_coeffs(&coeffs)?)?);
        let closed = rtr_diagonal(&coeffs);
        println!("alpha = {alpha:?}");
        println!(
            "  R^T R eigenvalues {:?} (closed form xx = yy = {}, zz = {})",
            report.eigenvalues, closed.xx, closed.zz
        );
        println!(
            "  bound {:.12} (closed form {:.12}), violates 2: {}",
            report.bound,
            closed.bound(),
            report.classical_violation
        );
    }
    Ok(())
}

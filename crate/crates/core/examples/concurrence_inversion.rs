//! Coefficients from concurrences and back.

use bellbound::family::{concurrences_from_coeffs, invert_concurrences, ConcurrenceTriple};

fn main() -> bellbound::Result<()> {
    for (c1sq, c2sq, csq) in [
        (0.75, 0.75, 1.0),
        (1.0, 1.0, 1.0),
        (0.75, 0.96, 1.0),
        (0.9, 0.5, 0.7),
    ] {
        let triple = ConcurrenceTriple::new(c1sq, c2sq, csq)?;
        match invert_concurrences(&triple) {
            Ok(inv) => {
                let back = concurrences_from_coeffs(&inv.coeffs).triple;
                println!(
                    "({c1sq}, {c2sq}, {csq}) -> alpha^2 = {:?} -> ({:.12}, {:.12}, {:.12})",
                    inv.coeffs.probabilities(),
                    back.c1sq,
                    back.c2sq,
                    back.csq
                );
            }
            Err(e) => println!("({c1sq}, {c2sq}, {csq}) -> {e}"),
        }
    }
    Ok(())
}

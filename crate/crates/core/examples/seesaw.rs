//! See-saw lower bounds next to the R-matrix upper bound.
//!
//! Products of the first n-1 measurements form one +-1 observable, so the
//! see-saw value stays at or below 2 sqrt(2) for every n while the upper
//! bound can be larger.

use bellbound::bell::{
    maximize_bell, theorem_gamma, theorem_state, DEFAULT_RESTARTS, DEFAULT_SEED,
};
use bellbound::PureState;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> bellbound::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases: Vec<(String, PureState)> = vec![
        ("bell pair".into(), theorem_state(1, 1.0, 0)?),
        ("ghz, 4 qubits".into(), theorem_state(2, 1.0, 0)?),
    ];
    for n in 2..=5 {
        cases.push((
            format!("random, {n} qubits"),
            PureState::random(n, &mut rng)?,
        ));
    }
    for (name, state) in &cases {
        let g = maximize_bell(state, DEFAULT_RESTARTS, DEFAULT_SEED)?;
        println!(
            "{name:>18}: see-saw {:.9} <= bound {:.9} (converged: {})",
            g.lower, g.upper, g.converged
        );
    }
    for c in [0.3, 0.6, 1.0] {
        let g = maximize_bell(&theorem_state(2, c, 0)?, DEFAULT_RESTARTS, DEFAULT_SEED)?;
        println!(
            "4-qubit GHZ-type, C = {c}: see-saw {:.9}, closed form {:.9}",
            g.lower,
            theorem_gamma(c, 2)?
        );
    }
    Ok(())
}

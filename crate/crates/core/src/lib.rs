//! Entanglement and Bell-violation analysis of n-qubit pure states.
//!
//! - [`state`], [`density`], [`entanglement`]: pure states, reduced density
//!   matrices, purities, entropies, concurrences and flat-spectrum reports.
//! - [`pauli`], [`bell`]: Pauli correlation tensors, the two-eigenvalue Bell
//!   bound, Bell operator values and see-saw maximization.
//! - [`family`]: a seven-qubit family parametrized by angles, coefficients or
//!   concurrences, with closed-form bounds, sweeps and saddle classification.
//! - [`toric`]: the seven-qubit disk toric code and ground-state checks.

pub mod bell;
pub mod density;
pub mod eigen3;
pub mod entanglement;
pub mod error;
pub mod family;
pub mod io;
pub mod pauli;
pub mod state;
pub mod toric;

pub use error::{Error, Result};
pub use state::{Bipartition, PureState};

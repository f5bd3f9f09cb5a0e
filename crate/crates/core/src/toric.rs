//! Seven-qubit toric code on a disk.
//!
//! `H = -(A1 + ... + A6) - (B1 + B2)` with vertex terms
//! `A1 = Z1 Z2`, `A2 = Z1 Z3`, `A3 = Z2 Z4 Z5`, `A4 = Z3 Z4 Z6`, `A5 = Z5 Z7`,
//! `A6 = Z6 Z7` and plaquette terms `B1 = X1 X2 X3 X4`, `B2 = X4 X5 X6 X7`.
//! Every site lies in exactly two vertex terms, so `A1 ... A6 = 1` and seven
//! of the eight generators are independent.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::state::PureState;

pub const SITES: usize = 7;
pub const DIM: usize = 1 << SITES;

/// Eigenvalues within this of the minimum count toward the ground degeneracy.
pub const DEGENERACY_TOL: f64 = 1e-9;

pub const STABILIZER_NAMES: [&str; 8] = ["A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2"];

const VERTEX_SUPPORTS: [&[usize]; 6] = [&[1, 2], &[1, 3], &[2, 4, 5], &[3, 4, 6], &[5, 7], &[6, 7]];
const PLAQUETTE_SUPPORTS: [&[usize]; 2] = [&[1, 2, 3, 4], &[4, 5, 6, 7]];

/// The eight stabilizers in `A1..A6, B1, B2` order.
pub fn stabilizers() -> Vec<PauliString> {
    VERTEX_SUPPORTS
        .iter()
        .map(|s| PauliString::on_sites(SITES, Pauli::Z, s))
        .chain(
            PLAQUETTE_SUPPORTS
                .iter()
                .map(|s| PauliString::on_sites(SITES, Pauli::X, s)),
        )
        .collect()
}

/// Matrix-free handle on the Hamiltonian.
#[derive(Debug, Clone)]
pub struct ToricHamiltonian {
    terms: Vec<PauliString>,
}

impl Default for ToricHamiltonian {
    fn default() -> Self {
        Self::new()
    }
}

impl ToricHamiltonian {
    pub fn new() -> Self {
        Self {
            terms: stabilizers(),
        }
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    /// `H psi` for a 128-amplitude vector.
    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for term in &self.terms {
            term.apply_add(psi, -1.0, &mut out)?;
        }
        Ok(out)
    }

    /// Dense real matrix; every term is a real permutation-with-signs.
    pub fn dense(&self) -> DMatrix<f64> {
        let mut h = DMatrix::zeros(DIM, DIM);
        let mut basis = vec![Complex64::new(0.0, 0.0); DIM];
        for col in 0..DIM {
            basis[col] = Complex64::new(1.0, 0.0);
            let column = self.apply(&basis).expect("128 amplitudes");
            for (row, v) in column.iter().enumerate() {
                h[(row, col)] = v.re;
            }
            basis[col] = Complex64::new(0.0, 0.0);
        }
        h
    }

    /// Full spectrum by dense diagonalization, ascending.
    pub fn spectrum(&self) -> ToricSpectrum {
        let eig = SymmetricEigen::new(self.dense());
        let mut order: Vec<usize> = (0..DIM).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let ground_energy = eigenvalues[0];
        let ground_vectors: Vec<Vec<f64>> = order
            .iter()
            .take_while(|&&i| eig.eigenvalues[i] - ground_energy <= DEGENERACY_TOL)
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect();
        ToricSpectrum {
            eigenvalues,
            ground_vectors,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ToricSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal basis of the ground space.
    pub ground_vectors: Vec<Vec<f64>>,
}

impl ToricSpectrum {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn ground_degeneracy(&self) -> usize {
        self.ground_vectors.len()
    }

    /// Weight of `psi` in the ground space.
    pub fn ground_overlap(&self, psi: &[Complex64]) -> f64 {
        self.ground_vectors
            .iter()
            .map(|g| {
                g.iter()
                    .zip(psi)
                    .map(|(g, a)| a * *g)
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum()
    }
}

fn check_size(state: &PureState) -> Result<()> {
    if state.n() != SITES {
        return Err(Error::WrongSize {
            expected: SITES,
            got: state.n(),
        });
    }
    Ok(())
}

/// `<psi|S|psi>` for the eight stabilizers, `A1..A6, B1, B2`.
pub fn stabilizer_expectations(state: &PureState) -> Result<[f64; 8]> {
    check_size(state)?;
    let mut out = [0.0; 8];
    for (slot, s) in out.iter_mut().zip(stabilizers()) {
        *slot = s.expectation(state.amplitudes())?.re;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ToricReport {
    pub stabilizer_expectations: [f64; 8],
    pub energy: f64,
    pub is_ground_state: bool,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
    pub overlap_with_ground: f64,
}

/// Checks a seven-qubit state against the exactly diagonalized Hamiltonian.
pub fn verify_toric_ground(state: &PureState) -> Result<ToricReport> {
    verify_with(state, &ToricHamiltonian::new().spectrum())
}

/// As [`verify_toric_ground`], reusing a precomputed spectrum.
pub fn verify_with(state: &PureState, spectrum: &ToricSpectrum) -> Result<ToricReport> {
    check_size(state)?;
    let expectations = stabilizer_expectations(state)?;
    let h = ToricHamiltonian::new();
    let hpsi = h.apply(state.amplitudes())?;
    let energy: f64 = state
        .amplitudes()
        .iter()
        .zip(&hpsi)
        .map(|(a, b)| (a.conj() * b).re)
        .sum();
    let ground_energy = spectrum.ground_energy();
    Ok(ToricReport {
        stabilizer_expectations: expectations,
        energy,
        is_ground_state: (energy - ground_energy).abs() <= 1e-9
            && expectations.iter().all(|e| (e - 1.0).abs() <= 1e-9),
        ground_energy,
        ground_degeneracy: spectrum.ground_degeneracy(),
        overlap_with_ground: spectrum.ground_overlap(state.amplitudes()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn family(alpha: [f64; 4]) -> PureState {
        let keys = ["0000000", "0001111", "1111000", "1110111"];
        let entries: Vec<_> = keys
            .iter()
            .zip(alpha)
            .map(|(k, a)| (*k, Complex64::new(a, 0.0)))
            .collect();
        PureState::from_entries(7, &entries).unwrap()
    }

    #[test]
    fn stabilizer_layout() {
        let names: Vec<String> = stabilizers().iter().map(|s| s.to_string()).collect();
        assert_eq!(
            names,
            [
                "ZZIIIII", "ZIZIIII", "IZIZZII", "IIZZIZI", "IIIIZIZ", "IIIIIZZ", "XXXXIII",
                "IIIXXXX"
            ]
        );
    }

    #[test]
    fn hamiltonian_on_all_zeros() {
        let zero = PureState::basis(7, "0000000").unwrap();
        let out = ToricHamiltonian::new().apply(zero.amplitudes()).unwrap();
        assert_eq!(out[0], Complex64::new(-6.0, 0.0));
        assert_eq!(out[0b1111000], Complex64::new(-1.0, 0.0));
        assert_eq!(out[0b0001111], Complex64::new(-1.0, 0.0));
        let nonzero = out.iter().filter(|a| a.norm() > 0.0).count();
        assert_eq!(nonzero, 3);
    }

    #[test]
    fn vertex_terms_multiply_to_identity() {
        let mut psi = PureState::random(7, &mut rand::rng())
            .unwrap()
            .amplitudes()
            .to_vec();
        let original = psi.clone();
        for a in &stabilizers()[..6] {
            psi = a.apply(&psi).unwrap();
        }
        for (a, b) in psi.iter().zip(&original) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn expectations_examples() {
        let e = stabilizer_expectations(&family([0.5; 4])).unwrap();
        for v in e {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
        }
        let e = stabilizer_expectations(&PureState::basis(7, "0000000").unwrap()).unwrap();
        assert_eq!(e, [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let e = stabilizer_expectations(&family([h, h, 0.0, 0.0])).unwrap();
        for v in &e[..6] {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(e[6], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[7], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn ground_state_checks() {
        let spectrum = ToricHamiltonian::new().spectrum();
        let r = verify_with(&family([0.5; 4]), &spectrum).unwrap();
        assert_abs_diff_eq!(r.energy, -8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.ground_energy, -8.0, epsilon = 1e-9);
        assert_eq!(r.ground_degeneracy, 1);
        assert_abs_diff_eq!(r.overlap_with_ground, 1.0, epsilon = 1e-10);
        assert!(r.is_ground_state);

        let r = verify_with(&PureState::basis(7, "0000000").unwrap(), &spectrum).unwrap();
        assert_abs_diff_eq!(r.energy, -6.0, epsilon = 1e-12);
        assert!(!r.is_ground_state);

        let r = verify_with(&family([0.5, -0.5, 0.5, -0.5]), &spectrum).unwrap();
        assert_abs_diff_eq!(r.stabilizer_expectations[7], -1.0, epsilon = 1e-15);
        assert!(r.stabilizer_expectations[..6]
            .iter()
            .all(|e| (e - 1.0).abs() < 1e-15));
        assert!(!r.is_ground_state);
    }

    #[test]
    fn wrong_size_is_rejected() {
        let s = PureState::basis(6, "000000").unwrap();
        assert_eq!(
            verify_toric_ground(&s),
            Err(Error::WrongSize {
                expected: 7,
                got: 6
            })
        );
    }
}

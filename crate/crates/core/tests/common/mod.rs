//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's linear algebra: Pauli strings act
//! by direct bit manipulation and partial traces are explicit index sums.

#![allow(dead_code)]

use bellbound::family::{state_from_coeffs, ConcurrenceTriple, FamilyCoeffs};
use bellbound::PureState;
use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;
use rand::Rng;

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;

/// `<psi| s_1 (x) ... (x) s_n |psi>` with `axes[k]` in {X, Y, Z} for site k+1.
pub fn pauli_expectation(psi: &[Complex64], axes: &[usize]) -> Complex64 {
    let n = axes.len();
    let i = Complex64::new(0.0, 1.0);
    let mut total = Complex64::new(0.0, 0.0);
    for (b, amp) in psi.iter().enumerate() {
        let mut image = b;
        let mut phase = Complex64::new(1.0, 0.0);
        for (k, &axis) in axes.iter().enumerate() {
            let bit = (b >> (n - 1 - k)) & 1;
            match axis {
                X => image ^= 1 << (n - 1 - k),
                Y => {
                    image ^= 1 << (n - 1 - k);
                    phase *= if bit == 0 { i } else { -i };
                }
                _ => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        total += psi[image].conj() * phase * amp;
    }
    total
}

/// All `3^n` correlations, multi-index `i_1 ... i_n` in base 3 with site 1 most significant.
pub fn correlation_tensor(psi: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..3usize.pow(n as u32))
        .map(|mut idx| {
            let mut axes = vec![0; n];
            for slot in axes.iter_mut().rev() {
                *slot = idx % 3;
                idx /= 3;
            }
            pauli_expectation(psi, &axes)
        })
        .collect()
}

/// `R^T R` for the `3^(n-1) x 3` reshaping of the correlation tensor.
pub fn rtr_oracle(psi: &[Complex64], n: usize) -> [[f64; 3]; 3] {
    let t = correlation_tensor(psi, n);
    let mut out = [[0.0; 3]; 3];
    for row in t.chunks(3) {
        for a in 0..3 {
            for b in 0..3 {
                out[a][b] += row[a].re * row[b].re;
            }
        }
    }
    out
}

pub fn sym_eigenvalues_desc(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let e = Matrix3::from_fn(|i, j| m[i][j]).symmetric_eigenvalues();
    let mut v = [e[0], e[1], e[2]];
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// `rho_A` by summing over the complement; `region` holds 1-based sites.
pub fn reduced_oracle(psi: &[Complex64], n: usize, region: &[usize]) -> DMatrix<Complex64> {
    let complement: Vec<usize> = (1..=n).filter(|s| !region.contains(s)).collect();
    let index = |a: usize, b: usize| {
        let mut full = 0usize;
        for (k, &site) in region.iter().enumerate() {
            let bit = (a >> (region.len() - 1 - k)) & 1;
            full |= bit << (n - site);
        }
        for (k, &site) in complement.iter().enumerate() {
            let bit = (b >> (complement.len() - 1 - k)) & 1;
            full |= bit << (n - site);
        }
        full
    };
    let da = 1 << region.len();
    let db = 1 << complement.len();
    DMatrix::from_fn(da, da, |i, j| {
        (0..db)
            .map(|b| psi[index(i, b)] * psi[index(j, b)].conj())
            .sum()
    })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn family_state(alpha: [f64; 4]) -> PureState {
    state_from_coeffs(&FamilyCoeffs::new(alpha).unwrap()).unwrap()
}

/// Uniform point on the probability simplex.
pub fn random_simplex<R: Rng>(rng: &mut R) -> [f64; 4] {
    let mut e: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.random::<f64>()).ln());
    let total: f64 = e.iter().sum();
    e.iter_mut().for_each(|x| *x /= total);
    e
}

/// Random real family coefficients with random signs.
pub fn random_family_alpha<R: Rng>(rng: &mut R) -> [f64; 4] {
    let p = random_simplex(rng);
    let mut alpha = p.map(f64::sqrt);
    for a in alpha.iter_mut() {
        if rng.random::<bool>() {
            *a = -*a;
        }
    }
    let norm: f64 = alpha.iter().map(|a| a * a).sum::<f64>().sqrt();
    alpha.map(|a| a / norm)
}

/// Triple with a principal-branch preimage: any `C1^2, C2^2` and `C^2 >= C2^2`.
pub fn random_admissible_triple<R: Rng>(rng: &mut R) -> ConcurrenceTriple {
    let c1sq = rng.random::<f64>();
    let c2sq = rng.random::<f64>();
    let csq = c2sq + (1.0 - c2sq) * rng.random::<f64>();
    ConcurrenceTriple::new(c1sq, c2sq, csq).unwrap()
}

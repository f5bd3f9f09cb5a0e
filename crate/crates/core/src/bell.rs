//! Pauli correlation tensors, the two-eigenvalue Bell bound, and see-saw
//! maximization of the n-site two-setting Bell operator
//!
//! ```text
//! B_n = A_1 ... A_{n-1} (A_n + A'_n) + A'_1 ... A'_{n-1} (A_n - A'_n)
//! ```
//!
//! with `A_k = a_k . sigma`. The value `Tr(rho B_n)` is multilinear in the
//! Bloch vectors, so the see-saw updates each vector (or the final pair) to
//! its exact block maximizer and never decreases the objective.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen3::{symmetric_eigen, Mat3};
use crate::error::{Error, Result};
use crate::pauli::{product_expectation, Pauli};
use crate::state::PureState;

/// Largest register accepted by [`maximize_bell`].
pub const MAX_SEESAW_QUBITS: usize = 10;
pub const DEFAULT_RESTARTS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed_0b11;
pub const SEESAW_TOL: f64 = 1e-10;
pub const SEESAW_MAX_SWEEPS: usize = 500;

/// Full correlation tensor `R[i_1 ... i_n] = <sigma_{i_1} (x) ... (x) sigma_{i_n}>`,
/// stored row-major as a `3^(n-1) x 3` matrix with axes ordered (x, y, z).
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.entries.len() / 3
    }

    /// Flat entries; the index of `(i_1, ..., i_n)` is their base-3 number.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[3 * row + col]
    }

    /// Correlation for one all-axis Pauli string (no identities).
    pub fn correlation(&self, axes: &[Pauli]) -> Option<f64> {
        if axes.len() != self.n {
            return None;
        }
        let mut index = 0;
        for p in axes {
            index = 3 * index
                + match p {
                    Pauli::X => 0,
                    Pauli::Y => 1,
                    Pauli::Z => 2,
                    Pauli::I => return None,
                };
        }
        Some(self.entries[index])
    }

    /// `R^T R`.
    pub fn rtr(&self) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for row in self.entries.chunks_exact(3) {
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += row[i] * row[j];
                }
            }
        }
        m
    }
}

/// In-place Walsh-Hadamard transform: `v[z] <- sum_j (-1)^{popcount(j & z)} v[j]`.
fn walsh_hadamard(v: &mut [Complex64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Builds the R-matrix of a pure state.
///
/// For each flip pattern `x`, the expectations of every Pauli string with that
/// pattern are the Walsh-Hadamard transform of `conj(psi[j ^ x]) psi[j]`,
/// times `i^{#Y}`. Only strings without identity factors are kept.
pub fn r_matrix(state: &PureState) -> Result<RMatrix> {
    let n = state.n();
    let psi = state.amplitudes();
    let dim = psi.len();
    let full = dim - 1;
    let pow3: Vec<usize> = (0..n).map(|k| 3usize.pow(k as u32)).collect();
    // ternary weight of the bit belonging to site k (site 1 = msb = most significant digit)
    let digit_weight = |bit: usize| pow3[bit];

    let per_flip: Vec<Result<Vec<(usize, f64)>>> = (0..dim)
        .into_par_iter()
        .map(|x| {
            let mut c: Vec<Complex64> = (0..dim).map(|j| psi[j ^ x].conj() * psi[j]).collect();
            walsh_hadamard(&mut c);
            let mut out = Vec::new();
            // strings with no identity: z must cover every site outside x
            let forced = full & !x;
            let mut sub = x;
            loop {
                let z = forced | sub;
                let ys = (x & z).count_ones();
                let phase = match ys % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                };
                let value = phase * c[z];
                if value.im.abs() > 1e-10 {
                    return Err(Error::OutOfRange {
                        name: "imaginary part of a Pauli correlation",
                        value: value.im,
                        range: "[-1e-10, 1e-10]",
                    });
                }
                let mut index = 0;
                for bit in 0..n {
                    let digit = match (x >> bit & 1, z >> bit & 1) {
                        (1, 0) => 0,
                        (1, 1) => 1,
                        _ => 2,
                    };
                    index += digit * digit_weight(bit);
                }
                out.push((index, value.re));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & x;
            }
            Ok(out)
        })
        .collect();

    let mut entries = vec![0.0; 3usize.pow(n as u32)];
    for chunk in per_flip {
        for (index, value) in chunk? {
            entries[index] = value;
        }
    }
    Ok(RMatrix { n, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    /// Eigenvalues `(u1^2, u2^2, u3^2)` of `R^T R`, descending.
    pub eigenvalues: [f64; 3],
    /// `2 sqrt(u1^2 + u2^2)`.
    pub bound: f64,
    /// The bound equals the maximal Bell value (two qubits).
    pub is_exact: bool,
    /// The bound exceeds the local-realistic value 2.
    pub classical_violation: bool,
}

pub fn bell_bound(r: &RMatrix) -> BoundReport {
    bound_from_rtr(&r.rtr(), r.n() == 2)
}

pub fn bound_from_rtr(rtr: &Mat3, is_exact: bool) -> BoundReport {
    let eigenvalues = symmetric_eigen(rtr).values;
    let bound = 2.0 * (eigenvalues[0] + eigenvalues[1]).max(0.0).sqrt();
    BoundReport {
        eigenvalues,
        bound,
        is_exact,
        classical_violation: bound > 2.0 + 1e-12,
    }
}

/// Measurement directions for `A_k` and `A'_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BellSettings {
    pub a: Vec<[f64; 3]>,
    pub a_prime: Vec<[f64; 3]>,
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl BellSettings {
    pub fn new(a: Vec<[f64; 3]>, a_prime: Vec<[f64; 3]>) -> Result<Self> {
        if a.len() != a_prime.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: a_prime.len(),
            });
        }
        for (index, v) in a.iter().chain(&a_prime).enumerate() {
            let nv = norm(*v);
            if (nv - 1.0).abs() > 1e-12 {
                return Err(Error::NotUnitVector { index, norm: nv });
            }
        }
        Ok(Self { a, a_prime })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut draw = || -> Vec<[f64; 3]> { (0..n).map(|_| UnitSphere.sample(rng)).collect() };
        let a = draw();
        let a_prime = draw();
        Self { a, a_prime }
    }
}

fn add(u: [f64; 3], v: [f64; 3], s: f64) -> [f64; 3] {
    [u[0] + s * v[0], u[1] + s * v[1], u[2] + s * v[2]]
}

/// `Tr(rho B_n)` from two product-observable expectations on the state vector.
pub fn bell_operator_value(state: &PureState, s: &BellSettings) -> Result<f64> {
    let n = state.n();
    if s.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s.n(),
        });
    }
    let psi = state.amplitudes();
    let mut first = s.a.clone();
    first[n - 1] = add(s.a[n - 1], s.a_prime[n - 1], 1.0);
    let mut second = s.a_prime.clone();
    second[n - 1] = add(s.a[n - 1], s.a_prime[n - 1], -1.0);
    Ok(product_expectation(psi, n, &first) + product_expectation(psi, n, &second))
}

/// Contracts the first site of a `3^k` tensor with `v`.
fn contract_first(t: &[f64], v: [f64; 3]) -> Vec<f64> {
    let m = t.len() / 3;
    (0..m)
        .map(|j| v[0] * t[j] + v[1] * t[m + j] + v[2] * t[2 * m + j])
        .collect()
}

/// Contracts the last site of a `3^k` tensor with `v`.
fn contract_last(t: &[f64], v: [f64; 3]) -> Vec<f64> {
    t.chunks_exact(3)
        .map(|c| v[0] * c[0] + v[1] * c[1] + v[2] * c[2])
        .collect()
}

/// Contracts every site except `keep` (0-based) with the given vectors.
fn contract_except(t: &[f64], vectors: &[[f64; 3]], keep: usize) -> [f64; 3] {
    let n = vectors.len();
    let mut cur: Vec<f64> = t.to_vec();
    for v in vectors[keep + 1..n].iter().rev() {
        cur = contract_last(&cur, *v);
    }
    for v in &vectors[..keep] {
        cur = contract_first(&cur, *v);
    }
    [cur[0], cur[1], cur[2]]
}

fn full_contraction(t: &[f64], vectors: &[[f64; 3]]) -> f64 {
    let g = contract_except(t, vectors, vectors.len() - 1);
    let v = vectors[vectors.len() - 1];
    g[0] * v[0] + g[1] * v[1] + g[2] * v[2]
}

/// `Tr(rho B_n)` evaluated on the correlation tensor.
pub fn bell_value_from_tensor(r: &RMatrix, s: &BellSettings) -> f64 {
    let n = r.n();
    let mut first = s.a.clone();
    first[n - 1] = add(s.a[n - 1], s.a_prime[n - 1], 1.0);
    let mut second = s.a_prime.clone();
    second[n - 1] = add(s.a[n - 1], s.a_prime[n - 1], -1.0);
    full_contraction(r.entries(), &first) + full_contraction(r.entries(), &second)
}

fn normalized_or(v: [f64; 3], fallback: [f64; 3]) -> [f64; 3] {
    let nv = norm(v);
    if nv > 1e-14 {
        [v[0] / nv, v[1] / nv, v[2] / nv]
    } else {
        fallback
    }
}

/// One see-saw ascent from a given starting point.
#[derive(Debug, Clone)]
pub struct SeesawRun {
    pub value: f64,
    pub settings: BellSettings,
    /// Objective after each sweep, starting with the initial value.
    pub history: Vec<f64>,
    pub converged: bool,
}

pub fn seesaw(r: &RMatrix, start: BellSettings, tol: f64, max_sweeps: usize) -> SeesawRun {
    let n = r.n();
    let t = r.entries();
    let mut s = start;
    let mut value = bell_value_from_tensor(r, &s);
    let mut history = vec![value];
    let mut converged = false;
    for _ in 0..max_sweeps {
        let last = n - 1;
        let plus = add(s.a[last], s.a_prime[last], 1.0);
        let minus = add(s.a[last], s.a_prime[last], -1.0);
        for k in 0..last {
            let mut first = s.a.clone();
            first[last] = plus;
            s.a[k] = normalized_or(contract_except(t, &first, k), s.a[k]);
        }
        for k in 0..last {
            let mut second = s.a_prime.clone();
            second[last] = minus;
            s.a_prime[k] = normalized_or(contract_except(t, &second, k), s.a_prime[k]);
        }
        // a_n . (u + v) + a'_n . (u - v)
        let u = contract_except(t, &s.a, last);
        let v = contract_except(t, &s.a_prime, last);
        s.a[last] = normalized_or(add(u, v, 1.0), s.a[last]);
        s.a_prime[last] = normalized_or(add(u, v, -1.0), s.a_prime[last]);

        let next = bell_value_from_tensor(r, &s);
        history.push(next);
        let gain = next - value;
        value = next.max(value);
        if gain.abs() < tol {
            converged = true;
            break;
        }
    }
    SeesawRun {
        value,
        settings: s,
        history,
        converged,
    }
}

/// Best see-saw value beside the two-eigenvalue upper bound.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GammaSandwich {
    pub lower: f64,
    pub upper: f64,
    pub settings: BellSettings,
    pub restarts: usize,
    pub converged: bool,
}

/// Maximizes `Tr(rho B_n)` by see-saw from `restarts` random starts.
///
/// Restart `k` draws its start from a ChaCha stream `k` of `seed`, so the
/// result does not depend on how restarts are scheduled across threads.
pub fn maximize_bell(state: &PureState, restarts: usize, seed: u64) -> Result<GammaSandwich> {
    let n = state.n();
    if n > MAX_SEESAW_QUBITS {
        return Err(Error::TooLarge {
            got: n,
            min: 2,
            max: MAX_SEESAW_QUBITS,
        });
    }
    if restarts == 0 {
        return Err(Error::NoRestarts);
    }
    let r = r_matrix(state)?;
    let upper = bell_bound(&r).bound;
    let runs: Vec<SeesawRun> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let start = BellSettings::random(n, &mut rng);
            seesaw(&r, start, SEESAW_TOL, SEESAW_MAX_SWEEPS)
        })
        .collect();
    let best = runs
        .into_iter()
        .reduce(|best, run| if run.value > best.value { run } else { best })
        .expect("at least one restart");
    Ok(GammaSandwich {
        lower: best.value,
        upper,
        settings: best.settings,
        restarts,
        converged: best.converged,
    })
}

fn check_concurrence(c: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::BadConcurrence(c));
    }
    Ok(())
}

/// Closed-form maximal Bell value `2 f` of a padded `2 alpha`-qubit
/// GHZ-type state with last-site concurrence `c`.
pub fn theorem_gamma(c: f64, alpha_half_qubits: u32) -> Result<f64> {
    check_concurrence(c)?;
    if alpha_half_qubits == 0 {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: 0.0,
            range: ">= 1",
        });
    }
    let a = alpha_half_qubits as i32;
    let threshold = 2f64.powi(2 - 2 * a);
    let c2 = c * c;
    let f = if c2 <= threshold {
        (1.0 + 2f64.powi(2 * a - 2) * c2).sqrt()
    } else {
        2f64.powf((2 * a - 1) as f64 / 2.0) * c
    };
    Ok(2.0 * f)
}

/// `|0>^pad (x) (l+ |1...1>|1> + l- |0...0>|0>)` on `pad + 2 alpha` qubits with
/// `l+^2 = (1 + sqrt(1 - c^2)) / 2`, `l-^2 = (1 - sqrt(1 - c^2)) / 2`.
pub fn theorem_state(alpha_half_qubits: u32, c: f64, pad: usize) -> Result<PureState> {
    check_concurrence(c)?;
    let block = 2 * alpha_half_qubits as usize;
    let n = pad + block;
    let s = (1.0 - c * c).max(0.0).sqrt();
    let plus = ((1.0 + s) / 2.0).sqrt();
    let minus = ((1.0 - s) / 2.0).sqrt();
    let zeros = "0".repeat(n);
    let ones = format!("{}{}", "0".repeat(pad), "1".repeat(block));
    let mut entries = vec![(ones, Complex64::new(plus, 0.0))];
    if minus > 0.0 {
        entries.push((zeros, Complex64::new(minus, 0.0)));
    }
    PureState::from_entries(n, &entries)
}

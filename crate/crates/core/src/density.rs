//! Reduced density matrices and the spectral quantities derived from them.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{site_bit, Bipartition, PureState};

/// Eigenvalues below this are treated as exact zeros in entropies.
pub const EIGEN_CUTOFF: f64 = 1e-12;

/// Hermitian, unit-trace, positive semidefinite matrix on `2^k` levels.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
    // descending
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    /// Validates `entries` and caches its spectrum.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two(),
                got: entries.ncols(),
            });
        }
        for i in 0..dim {
            for j in 0..=i {
                let d = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if d > 1e-12 {
                    return Err(Error::OutOfRange {
                        name: "Hermitian residual",
                        value: d,
                        range: "[0, 1e-12]",
                    });
                }
            }
        }
        let trace: f64 = (0..dim).map(|i| entries[(i, i)].re).sum();
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "trace",
                value: trace,
                range: "1 +/- 1e-12",
            });
        }
        let mut eigenvalues: Vec<f64> = SymmetricEigen::new(entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        if let Some(&min) = eigenvalues.last() {
            if min < -1e-10 {
                return Err(Error::OutOfRange {
                    name: "smallest eigenvalue",
                    value: min,
                    range: ">= -1e-10",
                });
            }
        }
        Ok(Self {
            entries,
            eigenvalues,
        })
    }

    /// Diagonal density matrix with the given probabilities.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let diag: Vec<Complex64> = probs.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Spectrum in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvalues above [`EIGEN_CUTOFF`].
    pub fn support(&self) -> impl Iterator<Item = f64> + Clone + '_ {
        self.eigenvalues
            .iter()
            .copied()
            .filter(|&l| l > EIGEN_CUTOFF)
    }

    pub fn rank(&self) -> usize {
        self.support().count()
    }
}

/// Coefficient matrix `M[a, b] = <a b|psi>`, so that `rho_A = M M^dagger`.
fn schmidt_matrix(state: &PureState, part: &Bipartition) -> DMatrix<Complex64> {
    let n = state.n();
    let a_bits: Vec<usize> = part.region_a().iter().map(|&s| site_bit(s, n)).collect();
    let b_bits: Vec<usize> = part.region_b().iter().map(|&s| site_bit(s, n)).collect();
    let gather = |index: usize, bits: &[usize]| {
        bits.iter()
            .fold(0usize, |acc, &bit| (acc << 1) | (index >> bit & 1))
    };
    let mut m = DMatrix::zeros(1 << a_bits.len(), 1 << b_bits.len());
    for (index, amp) in state.amplitudes().iter().enumerate() {
        m[(gather(index, &a_bits), gather(index, &b_bits))] = *amp;
    }
    m
}

/// `rho_A = Tr_B |psi><psi|`, with A's sites ordered as in the full register.
pub fn reduced_density(state: &PureState, part: &Bipartition) -> Result<DensityMatrix> {
    part.check(state)?;
    let m = schmidt_matrix(state, part);
    let mut rho = &m * m.adjoint();
    // exact Hermitian symmetry before validation
    let dim = rho.nrows();
    for i in 0..dim {
        rho[(i, i)].im = 0.0;
        for j in 0..i {
            let avg = (rho[(i, j)] + rho[(j, i)].conj()) * 0.5;
            rho[(i, j)] = avg;
            rho[(j, i)] = avg.conj();
        }
    }
    DensityMatrix::new(rho)
}

/// `Tr rho^2`.
pub fn purity(dm: &DensityMatrix) -> f64 {
    dm.entries().iter().map(|z| z.norm_sqr()).sum()
}

/// `-Tr rho ln rho` in nats.
pub fn von_neumann_entropy(dm: &DensityMatrix) -> f64 {
    let s: f64 = dm.support().map(|l| -l * l.ln()).sum();
    s.max(0.0)
}

/// `ln Tr rho^alpha / (1 - alpha)` in nats; the von Neumann entropy at `alpha = 1`.
pub fn renyi_entropy(dm: &DensityMatrix, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 || alpha.is_infinite() {
        return Err(Error::BadAlpha(alpha));
    }
    if (alpha - 1.0).abs() <= 1e-12 {
        return Ok(von_neumann_entropy(dm));
    }
    Ok(renyi_from_spectrum(dm.support(), alpha))
}

/// Renyi entropy of a (renormalized) spectrum. Written as
/// `ln(1 + sum p (p^(a-1) - 1))` so orders near one keep full precision.
pub(crate) fn renyi_from_spectrum(spectrum: impl Iterator<Item = f64> + Clone, alpha: f64) -> f64 {
    let total: f64 = spectrum.clone().sum();
    let excess: f64 = spectrum
        .map(|l| {
            let p = l / total;
            p * ((alpha - 1.0) * p.ln()).exp_m1()
        })
        .sum();
    (excess.ln_1p() / (1.0 - alpha)).max(0.0)
}

//! Pure n-qubit states and bipartitions.
//!
//! Basis indices use site 1 as the most significant bit, so the basis string
//! `"0001111"` is written left to right from site 1 to site n.

use std::collections::HashSet;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 12;

/// Tolerance on |sum |a|^2 - 1| accepted from callers.
pub const NORM_TOL: f64 = 1e-9;

/// A normalized vector of `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from `(basis, amplitude)` pairs. Unlisted basis states
    /// are zero. The input is checked, never renormalized.
    pub fn from_entries<S: AsRef<str>>(n: usize, entries: &[(S, Complex64)]) -> Result<Self> {
        check_qubits(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        let mut seen = HashSet::with_capacity(entries.len());
        for (basis, amp) in entries {
            let basis = basis.as_ref();
            let index = parse_basis(basis, n)?;
            if !seen.insert(index) {
                return Err(Error::DuplicateBasis(basis.to_string()));
            }
            amplitudes[index] = *amp;
        }
        Self::from_amplitudes(n, amplitudes)
    }

    /// Wraps a dense amplitude vector after checking its length and norm.
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::BadAmplitudeCount {
                got: amplitudes.len(),
                expected: 1 << n,
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n, amplitudes })
    }

    /// Computational basis state `|bits>`.
    pub fn basis(n: usize, basis: &str) -> Result<Self> {
        Self::from_entries(n, &[(basis, Complex64::new(1.0, 0.0))])
    }

    /// Haar-random state: i.i.d. complex Gaussians, normalized.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n)?;
        let mut amplitudes: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        Self::from_amplitudes(n, amplitudes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, basis: &str) -> Result<Complex64> {
        Ok(self.amplitudes[parse_basis(basis, self.n)?])
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Nonzero amplitudes as `(basis string, amplitude)`, in index order.
    pub fn support(&self, cutoff: f64) -> Vec<(String, Complex64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > cutoff)
            .map(|(i, a)| (basis_string(i, self.n), *a))
            .collect()
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::TooLarge {
            got: n,
            min: MIN_QUBITS,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Parses a site-1-leftmost bit string into a basis index.
pub fn parse_basis(basis: &str, n: usize) -> Result<usize> {
    if basis.len() != n {
        return Err(Error::BadLength {
            basis: basis.to_string(),
            got: basis.len(),
            expected: n,
        });
    }
    basis.bytes().try_fold(0usize, |acc, b| match b {
        b'0' => Ok(acc << 1),
        b'1' => Ok((acc << 1) | 1),
        _ => Err(Error::BadBasis(basis.to_string())),
    })
}

pub fn basis_string(index: usize, n: usize) -> String {
    (0..n)
        .map(|k| {
            if index >> (n - 1 - k) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Bit position (from the least significant end) of 1-based `site`.
#[inline]
pub(crate) fn site_bit(site: usize, n: usize) -> usize {
    n - site
}

/// Region A of an A|B split, as sorted 1-based site labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Bipartition {
    n: usize,
    region_a: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, sites: &[usize]) -> Result<Self> {
        let mut region_a = sites.to_vec();
        region_a.sort_unstable();
        region_a.dedup();
        if region_a.len() != sites.len() {
            return Err(Error::BadRegion(format!("repeated site in {sites:?}")));
        }
        if region_a.is_empty() {
            return Err(Error::BadRegion("region A is empty".into()));
        }
        if region_a.len() >= n {
            return Err(Error::BadRegion(format!(
                "region A {sites:?} covers all {n} sites"
            )));
        }
        if let Some(&bad) = region_a.iter().find(|&&s| s == 0 || s > n) {
            return Err(Error::BadRegion(format!("site {bad} outside 1..={n}")));
        }
        Ok(Self { n, region_a })
    }

    /// Builds the split from a bit mask over sites (bit `k-1` set means site `k` in A).
    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        let sites: Vec<usize> = (1..=n).filter(|s| mask >> (s - 1) & 1 == 1).collect();
        Self::new(n, &sites)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn region_a(&self) -> &[usize] {
        &self.region_a
    }

    pub fn region_b(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|s| !self.region_a.contains(s))
            .collect()
    }

    pub fn size_a(&self) -> usize {
        self.region_a.len()
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            region_a: self.region_b(),
        }
    }

    pub(crate) fn check(&self, state: &PureState) -> Result<()> {
        if self.n != state.n() {
            return Err(Error::BadRegion(format!(
                "split is for {} qubits, state has {}",
                self.n,
                state.n()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn bell_pair() {
        let s = PureState::from_entries(2, &[("00", c(FRAC_1_SQRT_2)), ("11", c(FRAC_1_SQRT_2))])
            .unwrap();
        assert_eq!(s.amplitudes()[0], c(FRAC_1_SQRT_2));
        assert_eq!(s.amplitudes()[3], c(FRAC_1_SQRT_2));
        assert_eq!(s.amplitudes()[1], c(0.0));
    }

    #[test]
    fn site_one_is_most_significant() {
        let s = PureState::basis(3, "100").unwrap();
        assert_eq!(s.amplitudes()[4], c(1.0));
        assert_eq!(basis_string(4, 3), "100");
        assert_eq!(parse_basis("0001111", 7).unwrap(), 15);
    }

    #[test]
    fn critical_family_state() {
        let s = PureState::from_entries(
            7,
            &[
                ("0000000", c(0.5)),
                ("0001111", c(0.5)),
                ("1111000", c(0.5)),
                ("1110111", c(0.5)),
            ],
        )
        .unwrap();
        assert_eq!(s.support(0.0).len(), 4);
    }

    #[test]
    fn rejects_duplicates_and_bad_input() {
        let dup = PureState::from_entries(2, &[("00", c(1.0)), ("00", c(0.1))]);
        assert_eq!(dup, Err(Error::DuplicateBasis("00".into())));
        assert!(matches!(
            PureState::from_entries(2, &[("000", c(1.0))]),
            Err(Error::BadLength { got: 3, .. })
        ));
        assert!(matches!(
            PureState::from_entries(2, &[("00", c(0.5))]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            PureState::from_entries(2, &[("0a", c(1.0))]),
            Err(Error::BadBasis(_))
        ));
        assert!(matches!(
            PureState::basis(13, &"0".repeat(13)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(3, &[]).is_err());
        assert!(Bipartition::new(3, &[1, 2, 3]).is_err());
        assert!(Bipartition::new(3, &[4]).is_err());
        assert!(Bipartition::new(3, &[1, 1]).is_err());
        let p = Bipartition::new(4, &[3, 1]).unwrap();
        assert_eq!(p.region_a(), &[1, 3]);
        assert_eq!(p.region_b(), vec![2, 4]);
        assert_eq!(Bipartition::from_mask(4, 0b0101).unwrap(), p);
    }
}

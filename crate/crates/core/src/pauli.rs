//! Pauli strings and tensor products of single-qubit observables acting on
//! dense amplitude vectors.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Bloch axes in the fixed (x, y, z) order.
    pub const AXES: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn phases(self) -> bool {
        matches!(self, Pauli::Y | Pauli::Z)
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `sign * P_1 (x) ... (x) P_n`, site 1 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
    negative: bool,
    x_mask: usize,
    z_mask: usize,
    y_count: u32,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        let n = letters.len();
        let mut x_mask = 0;
        let mut z_mask = 0;
        for (k, p) in letters.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            if p.flips() {
                x_mask |= bit;
            }
            if p.phases() {
                z_mask |= bit;
            }
        }
        let y_count = letters.iter().filter(|&&p| p == Pauli::Y).count() as u32;
        Self {
            letters,
            negative: false,
            x_mask,
            z_mask,
            y_count,
        }
    }

    /// `letter` on each listed 1-based site, identity elsewhere.
    pub fn on_sites(n: usize, letter: Pauli, sites: &[usize]) -> Self {
        let mut letters = vec![Pauli::I; n];
        for &s in sites {
            letters[s - 1] = letter;
        }
        Self::new(letters)
    }

    pub fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn sign(&self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }

    /// Phase picked up by basis state `j`: `P|j> = phase(j) |j ^ x_mask>`.
    #[inline]
    fn phase(&self, j: usize) -> Complex64 {
        let mut ph = match self.y_count % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        if (j & self.z_mask).count_ones() % 2 == 1 {
            ph = -ph;
        }
        if self.negative {
            ph = -ph;
        }
        ph
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != 1 << self.n() {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n(),
                got: len,
            });
        }
        Ok(())
    }

    /// `out += coeff * P psi`.
    pub fn apply_add(&self, psi: &[Complex64], coeff: f64, out: &mut [Complex64]) -> Result<()> {
        self.check_len(psi.len())?;
        self.check_len(out.len())?;
        for (j, a) in psi.iter().enumerate() {
            out[j ^ self.x_mask] += self.phase(j) * a * coeff;
        }
        Ok(())
    }

    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.apply_add(psi, 1.0, &mut out)?;
        Ok(out)
    }

    /// `<psi|P|psi>`, complex for bookkeeping; real for normalized input.
    pub fn expectation(&self, psi: &[Complex64]) -> Result<Complex64> {
        self.check_len(psi.len())?;
        Ok(psi
            .iter()
            .enumerate()
            .map(|(j, a)| psi[j ^ self.x_mask].conj() * self.phase(j) * a)
            .sum())
    }

    /// Whether two strings commute: an even number of sites carry
    /// distinct non-identity letters.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let clashes = self
            .letters
            .iter()
            .zip(&other.letters)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        clashes % 2 == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        for p in &self.letters {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let letters = body
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' | '1' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::BadBasis(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        let p = PauliString::new(letters);
        Ok(if negative { p.negated() } else { p })
    }
}

/// `a . sigma` for a real 3-vector, as a 2x2 matrix in row-major order.
pub fn bloch_observable(a: [f64; 3]) -> [[Complex64; 2]; 2] {
    [
        [Complex64::new(a[2], 0.0), Complex64::new(a[0], -a[1])],
        [Complex64::new(a[0], a[1]), Complex64::new(-a[2], 0.0)],
    ]
}

/// Applies a 2x2 operator to 1-based `site` of an `n`-qubit vector in place.
pub fn apply_local(psi: &mut [Complex64], n: usize, site: usize, op: &[[Complex64; 2]; 2]) {
    let bit = 1usize << (n - site);
    for j in 0..psi.len() {
        if j & bit == 0 {
            let a0 = psi[j];
            let a1 = psi[j | bit];
            psi[j] = op[0][0] * a0 + op[0][1] * a1;
            psi[j | bit] = op[1][0] * a0 + op[1][1] * a1;
        }
    }
}

/// `<psi| (a_1 . sigma) (x) ... (x) (a_n . sigma) |psi>`.
pub fn product_expectation(psi: &[Complex64], n: usize, axes: &[[f64; 3]]) -> f64 {
    debug_assert_eq!(axes.len(), n);
    let mut phi = psi.to_vec();
    for (k, a) in axes.iter().enumerate() {
        apply_local(&mut phi, n, k + 1, &bloch_observable(*a));
    }
    psi.iter().zip(&phi).map(|(a, b)| (a.conj() * b).re).sum()
}

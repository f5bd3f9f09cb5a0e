//! Concurrences and per-bipartition entanglement spectra.
//!
//! A state is reported as maximally entangled when every bipartition has a
//! flat entanglement spectrum, i.e. all nonzero Schmidt weights coincide. On
//! such cuts every Renyi entropy equals the von Neumann entropy. Each cut
//! also records whether it reaches `min(|A|, |B|) ln 2`, the stricter reading.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::density::{purity, reduced_density, renyi_from_spectrum, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::state::{Bipartition, PureState};

/// Relative spread allowed between nonzero eigenvalues of a flat spectrum.
pub const FLAT_TOL: f64 = 1e-9;

/// `sqrt(2 (1 - Tr rho_A^2))`, radicand clamped at zero.
pub fn concurrence(state: &PureState, part: &Bipartition) -> Result<f64> {
    let p = purity(&reduced_density(state, part)?);
    Ok((2.0 * (1.0 - p)).max(0.0).sqrt())
}

/// `sqrt(2 (1 - 2^(m-1) Tr rho_A^2))` with `m = |A|`.
///
/// A reduction that is more pure than an `m`-qubit flat spectrum allows gives
/// a negative radicand, reported as [`Error::NegativeRadicand`].
pub fn generalized_concurrence(state: &PureState, part: &Bipartition) -> Result<f64> {
    let m = part.size_a();
    let p = purity(&reduced_density(state, part)?);
    generalized_concurrence_from_purity(p, m)
}

pub fn generalized_concurrence_from_purity(purity: f64, m: usize) -> Result<f64> {
    let radicand = 2.0 * (1.0 - (1u64 << (m - 1)) as f64 * purity);
    if radicand < -1e-9 {
        return Err(Error::NegativeRadicand { m, radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Spectrum and entropies of one cut.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub region_a: Vec<usize>,
    /// Eigenvalues of `rho_A`, descending.
    pub eigenvalues: Vec<f64>,
    pub rank: usize,
    pub von_neumann: f64,
    pub renyi2: f64,
    pub renyi3: f64,
    pub is_flat: bool,
    /// Flat, and of the largest rank seen among cuts of the same size.
    pub is_max_flat: bool,
    /// Entropy equals `min(|A|, |B|) ln 2`.
    pub saturates_cut: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FlatnessReport {
    pub n: usize,
    pub cuts: Vec<SpectrumReport>,
    /// Every cut flat.
    pub maximally_entangled: bool,
    /// Every cut has rank one (a product state).
    pub rank_trivial: bool,
    /// Every cut reaches `min(|A|, |B|) ln 2`.
    pub saturates_all_cuts: bool,
}

pub fn is_flat(spectrum: &[f64]) -> bool {
    let nonzero = spectrum
        .iter()
        .copied()
        .filter(|&l| l > crate::density::EIGEN_CUTOFF);
    let (lo, hi) = nonzero.fold((f64::INFINITY, 0.0f64), |(lo, hi), l| {
        (lo.min(l), hi.max(l))
    });
    hi == 0.0 || hi - lo <= FLAT_TOL * hi
}

/// Analyses one cut.
pub fn spectrum_report(state: &PureState, part: &Bipartition) -> Result<SpectrumReport> {
    let rho = reduced_density(state, part)?;
    let vn = von_neumann_entropy(&rho);
    let eigenvalues = rho.eigenvalues().to_vec();
    let smaller = part.size_a().min(part.n() - part.size_a());
    Ok(SpectrumReport {
        region_a: part.region_a().to_vec(),
        rank: rho.rank(),
        von_neumann: vn,
        renyi2: renyi_from_spectrum(rho.support(), 2.0),
        renyi3: renyi_from_spectrum(rho.support(), 3.0),
        is_flat: is_flat(&eigenvalues),
        is_max_flat: false,
        saturates_cut: (vn - smaller as f64 * LN_2).abs() <= 1e-9,
        eigenvalues,
    })
}

/// One representative region per `A <-> B` pair: `|A| < n/2`, or `|A| = n/2`
/// with site 1 in A. Ordered by size, then lexicographically.
pub fn representative_cuts(n: usize) -> Vec<Bipartition> {
    let mut masks: Vec<u32> = (1u32..(1 << n) - 1)
        .filter(|m| {
            let k = m.count_ones() as usize;
            2 * k < n || (2 * k == n && m & 1 == 1)
        })
        .collect();
    let sites = |m: u32| -> Vec<usize> { (1..=n).filter(|s| m >> (s - 1) & 1 == 1).collect() };
    masks.sort_by_key(|&m| (m.count_ones(), sites(m)));
    masks
        .into_iter()
        .map(|m| Bipartition::from_mask(n, m).expect("nonempty proper mask"))
        .collect()
}

/// Entanglement spectrum of every bipartition class.
pub fn flat_spectrum_report(state: &PureState) -> FlatnessReport {
    let n = state.n();
    let mut cuts: Vec<SpectrumReport> = representative_cuts(n)
        .iter()
        .map(|part| spectrum_report(state, part).expect("split built for this state"))
        .collect();
    let mut max_rank = vec![0usize; n + 1];
    for cut in &cuts {
        let k = cut.region_a.len();
        max_rank[k] = max_rank[k].max(cut.rank);
    }
    for cut in &mut cuts {
        cut.is_max_flat = cut.is_flat && cut.rank == max_rank[cut.region_a.len()];
    }
    FlatnessReport {
        n,
        maximally_entangled: cuts.iter().all(|c| c.is_flat),
        rank_trivial: cuts.iter().all(|c| c.rank == 1),
        saturates_all_cuts: cuts.iter().all(|c| c.saturates_cut),
        cuts,
    }
}

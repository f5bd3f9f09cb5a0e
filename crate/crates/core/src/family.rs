//! The seven-qubit family
//!
//! ```text
//! |psi> = a1 |000000>|0> + a2 |000111>|1> + a3 |111100>|0> + a4 |111011>|1>
//! ```
//!
//! with region A the last qubit. The family has three coordinate systems:
//! angles `(t1, t2, t3)` with `a1 = sin t1`, `a2 = cos t1 sin t2`,
//! `a3 = cos t1 cos t2 cos t3`, `a4 = cos t1 cos t2 sin t3`; the coefficients
//! themselves; and the squared-concurrence triple `(C1^2, C2^2, C^2)`, where
//! `C1` and `C2` are last-site concurrences of the states obtained by setting
//! `t2 = pi/2, t3 = 0` and `t3 = 0` respectively.
//!
//! `R^T R` is diagonal on the family, so the Bell bound has a closed form in
//! the probabilities `p_i = a_i^2`.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::eigen3::symmetric_eigen;
use crate::error::{Error, Result};
use crate::state::PureState;

/// Basis strings of the four family terms, site 1 leftmost.
pub const FAMILY_BASIS: [&str; 4] = ["0000000", "0001111", "1111000", "1110111"];

/// Amplitude normalization tolerance for family coefficients.
pub const COEFF_NORM_TOL: f64 = 1e-12;

/// Clamp window for `cos^2` values computed from a concurrence triple.
pub const GAMUT_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyAngles {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl FamilyAngles {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        let check = |name, value: f64, hi: f64, range| {
            if (0.0..=hi).contains(&value) {
                Ok(())
            } else {
                Err(Error::OutOfRange { name, value, range })
            }
        };
        check("theta1", theta1, 2.0 * PI, "[0, 2 pi]")?;
        check("theta2", theta2, PI, "[0, pi]")?;
        check("theta3", theta3, PI, "[0, pi]")?;
        Ok(Self {
            theta1,
            theta2,
            theta3,
        })
    }
}

/// Real coefficients `(a1, a2, a3, a4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyCoeffs {
    pub alpha: [f64; 4],
}

impl FamilyCoeffs {
    pub fn new(alpha: [f64; 4]) -> Result<Self> {
        let norm: f64 = alpha.iter().map(|a| a * a).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > COEFF_NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { alpha })
    }

    /// Nonnegative coefficients `a_i = sqrt(p_i)`.
    pub fn from_probabilities(p: [f64; 4]) -> Result<Self> {
        if let Some((index, &value)) = p.iter().enumerate().find(|(_, &x)| x < 0.0) {
            return Err(Error::BoundaryPoint {
                index,
                value,
                eps: 0.0,
            });
        }
        Self::new(p.map(f64::sqrt))
    }

    /// The critical point, all `p_i = 1/4`.
    pub fn critical() -> Self {
        Self { alpha: [0.5; 4] }
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.alpha.map(|a| a * a)
    }
}

pub fn coeffs_from_angles(a: &FamilyAngles) -> FamilyCoeffs {
    let (s1, c1) = a.theta1.sin_cos();
    let (s2, c2) = a.theta2.sin_cos();
    let (s3, c3) = a.theta3.sin_cos();
    FamilyCoeffs {
        alpha: [s1, c1 * s2, c1 * c2 * c3, c1 * c2 * s3],
    }
}

pub fn state_from_coeffs(c: &FamilyCoeffs) -> Result<PureState> {
    let entries: Vec<(&str, Complex64)> = FAMILY_BASIS
        .iter()
        .zip(c.alpha)
        .filter(|(_, a)| *a != 0.0)
        .map(|(b, a)| (*b, Complex64::new(a, 0.0)))
        .collect();
    PureState::from_entries(7, &entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConcurrenceTriple {
    pub c1sq: f64,
    pub c2sq: f64,
    pub csq: f64,
}

impl ConcurrenceTriple {
    pub fn new(c1sq: f64, c2sq: f64, csq: f64) -> Result<Self> {
        for (name, value) in [("c1sq", c1sq), ("c2sq", c2sq), ("csq", csq)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    range: "[0, 1]",
                });
            }
        }
        Ok(Self { c1sq, c2sq, csq })
    }
}

/// Triple together with the principal-branch angles it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConcurrenceCoordinates {
    pub triple: ConcurrenceTriple,
    pub angles: FamilyAngles,
    /// `cos t1 = 0` or `cos t2 = 0`: a later angle is unrecoverable and set to 0.
    pub degenerate: bool,
}

/// Recovers `(t1, t2, t3)` from `|a_i|` and evaluates the three concurrences.
pub fn concurrences_from_coeffs(c: &FamilyCoeffs) -> ConcurrenceCoordinates {
    let [a1, a2, a3, a4] = c.alpha.map(f64::abs);
    let rest = (a2 * a2 + a3 * a3 + a4 * a4).sqrt();
    let theta1 = a1.atan2(rest);
    let tail = (a3 * a3 + a4 * a4).sqrt();
    let theta2 = a2.atan2(tail);
    let theta3 = a4.atan2(a3);
    let degenerate = rest <= 1e-12 || tail <= 1e-12;

    let (b1, b2) = theta1.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    let g = [b1, b2 * s2, b2 * c2];
    let purity1 = b1.powi(4) + b2.powi(4);
    let purity2 = (g[0] * g[0] + g[2] * g[2]).powi(2) + g[1].powi(4);
    let p = c.probabilities();
    let purity = (p[0] + p[2]).powi(2) + (p[1] + p[3]).powi(2);
    let to_c2 = |purity: f64| (2.0 * (1.0 - purity)).clamp(0.0, 1.0);
    ConcurrenceCoordinates {
        triple: ConcurrenceTriple {
            c1sq: to_c2(purity1),
            c2sq: to_c2(purity2),
            csq: to_c2(purity),
        },
        angles: FamilyAngles {
            theta1,
            theta2: if rest <= 1e-12 { 0.0 } else { theta2 },
            theta3: if degenerate { 0.0 } else { theta3 },
        },
        degenerate,
    }
}

fn clamp_gamut(formula: &'static str, value: f64) -> Result<f64> {
    if !(-GAMUT_CLAMP..=1.0 + GAMUT_CLAMP).contains(&value) || value.is_nan() {
        return Err(Error::OutOfGamut { formula, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Intermediate quantities of the inversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Inversion {
    pub beta1_sq: f64,
    pub cos2_theta2: f64,
    pub cos2_theta3: f64,
    pub coeffs: FamilyCoeffs,
}

/// Principal-branch coefficients realizing a concurrence triple.
pub fn coeffs_from_concurrences(t: &ConcurrenceTriple) -> Result<FamilyCoeffs> {
    invert_concurrences(t).map(|inv| inv.coeffs)
}

pub fn invert_concurrences(t: &ConcurrenceTriple) -> Result<Inversion> {
    let t = ConcurrenceTriple::new(t.c1sq, t.c2sq, t.csq)?;
    let s1 = (1.0 - t.c1sq).sqrt();
    let s2 = (1.0 - t.c2sq).sqrt();
    let s3 = (1.0 - t.csq).sqrt();

    let beta1_sq = 0.5 - s1 / 2.0;
    let cos2_theta2 = clamp_gamut("cos^2(theta2)", (s1 + s2) / (1.0 + s1))?;
    let cos2_theta3 = if s1 + s2 > 0.0 {
        let inner = (s1 * s2 + 1.0 - t.c1sq) / (s1 + s2);
        clamp_gamut("cos^2(theta3)", (inner + s3) / (s1 + s2))?
    } else if s3 <= GAMUT_CLAMP {
        // a3 = a4 = 0, theta3 is free
        1.0
    } else {
        return Err(Error::OutOfGamut {
            formula: "cos^2(theta3)",
            value: f64::INFINITY,
        });
    };

    let cos2_theta1 = 1.0 - beta1_sq;
    let alpha = [
        beta1_sq.sqrt(),
        (cos2_theta1 * (1.0 - cos2_theta2)).sqrt(),
        (cos2_theta1 * cos2_theta2 * cos2_theta3).sqrt(),
        (cos2_theta1 * cos2_theta2 * (1.0 - cos2_theta3)).sqrt(),
    ];
    Ok(Inversion {
        beta1_sq,
        cos2_theta2,
        cos2_theta3,
        coeffs: FamilyCoeffs::new(alpha)?,
    })
}

/// Diagonal of `R^T R`; `yy` always equals `xx` on the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RtrDiagonal {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundBranch {
    /// `xx >= zz`: bound `2 sqrt(2 xx)`.
    XxDominant,
    /// `zz > xx`: bound `2 sqrt(xx + zz)`.
    ZzDominant,
}

impl RtrDiagonal {
    pub fn from_probabilities(p: &[f64; 4]) -> Self {
        let xx = 16.0 * (p[0] + p[2]) * (p[1] + p[3]) + 48.0 * (p[0] * p[3] + p[1] * p[2]);
        let zz = 1.0 + 32.0 * p[0] * p[2] + 32.0 * p[1] * p[3];
        Self { xx, yy: xx, zz }
    }

    pub fn branch(&self) -> BoundBranch {
        if self.xx >= self.zz {
            BoundBranch::XxDominant
        } else {
            BoundBranch::ZzDominant
        }
    }

    /// `2 sqrt` of the two largest diagonal entries.
    pub fn bound(&self) -> f64 {
        let mut d = [self.xx, self.yy, self.zz];
        d.sort_by(|a, b| b.total_cmp(a));
        2.0 * (d[0] + d[1]).sqrt()
    }
}

pub fn rtr_diagonal(c: &FamilyCoeffs) -> RtrDiagonal {
    RtrDiagonal::from_probabilities(&c.probabilities())
}

/// Closed-form bound on the family in probability coordinates.
pub fn family_bound(p: &[f64; 4]) -> f64 {
    RtrDiagonal::from_probabilities(p).bound()
}

// ---------------------------------------------------------------------------
// sweeps

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedConcurrence {
    C1,
    C2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    pub fix: FixedConcurrence,
    pub fixed_value: f64,
    pub series: Vec<f64>,
    pub csq_grid: Vec<f64>,
}

/// Points of the default `csq` grid.
pub const DEFAULT_GRID_POINTS: usize = 201;

pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => (0..points)
            .map(|i| i as f64 / (points - 1) as f64)
            .collect(),
    }
}

impl SweepConfig {
    /// Fixed `C1^2 = 0.75`, series over `C2^2`.
    pub fn figure1() -> Self {
        Self {
            fix: FixedConcurrence::C1,
            fixed_value: 0.75,
            series: vec![0.75, 0.8, 0.85, 0.9, 0.95],
            csq_grid: uniform_grid(DEFAULT_GRID_POINTS),
        }
    }

    /// Fixed `C2^2 = 0.75`, series over `C1^2`.
    pub fn figure2() -> Self {
        Self {
            fix: FixedConcurrence::C2,
            fixed_value: 0.75,
            series: vec![0.75, 0.8, 0.85, 0.9, 0.95, 1.0],
            csq_grid: uniform_grid(DEFAULT_GRID_POINTS),
        }
    }

    pub fn figure(number: u8) -> Option<Self> {
        match number {
            1 => Some(Self::figure1()),
            2 => Some(Self::figure2()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub c1sq: f64,
    pub c2sq: f64,
    pub csq: f64,
    pub rxx: Option<f64>,
    pub rzz: Option<f64>,
    pub bound: Option<f64>,
    pub gamut: bool,
}

fn sweep_point(c1sq: f64, c2sq: f64, csq: f64) -> SweepRow {
    let evaluated = ConcurrenceTriple::new(c1sq, c2sq, csq)
        .and_then(|t| coeffs_from_concurrences(&t))
        .map(|c| rtr_diagonal(&c));
    match evaluated {
        Ok(d) => SweepRow {
            c1sq,
            c2sq,
            csq,
            rxx: Some(d.xx),
            rzz: Some(d.zz),
            bound: Some(d.bound()),
            gamut: true,
        },
        Err(_) => SweepRow {
            c1sq,
            c2sq,
            csq,
            rxx: None,
            rzz: None,
            bound: None,
            gamut: false,
        },
    }
}

/// One row per `(series value, csq)` pair, series-major.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    if config.series.is_empty() || config.csq_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for &v in std::iter::once(&config.fixed_value)
        .chain(&config.series)
        .chain(&config.csq_grid)
    {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfRange {
                name: "sweep value",
                value: v,
                range: "[0, 1]",
            });
        }
    }
    let points: Vec<(f64, f64)> = config
        .series
        .iter()
        .flat_map(|&s| config.csq_grid.iter().map(move |&g| (s, g)))
        .collect();
    Ok(points
        .par_iter()
        .map(|&(s, csq)| match config.fix {
            FixedConcurrence::C1 => sweep_point(config.fixed_value, s, csq),
            FixedConcurrence::C2 => sweep_point(s, config.fixed_value, csq),
        })
        .collect())
}

pub const CSV_HEADER: &str = "c1sq,c2sq,csq,rxx,rzz,bound,gamut";

/// Fixed-point decimal with 12 fractional digits.
pub fn fmt_float(x: f64) -> String {
    let s = format!("{x:.12}");
    if s == "-0.000000000000" {
        "0.000000000000".to_string()
    } else {
        s
    }
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    let opt = |x: Option<f64>| x.map(fmt_float).unwrap_or_default();
    for r in rows {
        w.write_record([
            fmt_float(r.c1sq),
            fmt_float(r.c2sq),
            fmt_float(r.csq),
            opt(r.rxx),
            opt(r.rzz),
            opt(r.bound),
            r.gamut.to_string(),
        ])?;
    }
    w.flush()
}

/// In-gamut rows of one series, ordered by `csq`.
pub fn series_rows(rows: &[SweepRow], fix: FixedConcurrence, value: f64) -> Vec<SweepRow> {
    let mut out: Vec<SweepRow> = rows
        .iter()
        .filter(|r| r.gamut)
        .filter(|r| match fix {
            FixedConcurrence::C1 => r.c2sq == value,
            FixedConcurrence::C2 => r.c1sq == value,
        })
        .copied()
        .collect();
    out.sort_by(|a, b| a.csq.total_cmp(&b.csq));
    out
}

/// Whether a curve has a strict interior local maximum or minimum.
pub fn has_interior_extremum(values: &[f64]) -> bool {
    values
        .windows(3)
        .any(|w| (w[1] > w[0] && w[1] > w[2]) || (w[1] < w[0] && w[1] < w[2]))
}

// ---------------------------------------------------------------------------
// independence loci

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocusMode {
    /// `1 - 2 sqrt(1 - C1^2) - sqrt(1 - C^2) = 0`: the bound ignores `C2^2`.
    C2Independent,
    /// `1 - 2 sqrt(1 - C2^2) + sqrt(1 - C^2) = 0`: the bound ignores `C1^2`.
    C1Independent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocusReport {
    pub mode: LocusMode,
    pub csq: f64,
    /// Value of the concurrence pinned by the locus equation.
    pub locked: f64,
    pub bound0: Option<f64>,
    pub max_deviation: f64,
    pub evaluated: usize,
    pub out_of_gamut: usize,
    /// Free-concurrence values where `R_xx < R_zz`; excluded from the deviation.
    pub xx_below_zz: Vec<f64>,
}

/// Walks a locus at fixed `C^2`, varying the free concurrence over
/// `samples` uniform points of `free_range`.
pub fn independence_locus_check(
    mode: LocusMode,
    csq: f64,
    free_range: (f64, f64),
    samples: usize,
) -> Result<LocusReport> {
    if samples < 2 {
        return Err(Error::EmptyGrid);
    }
    let s3 = (1.0 - ConcurrenceTriple::new(0.0, 0.0, csq)?.csq).sqrt();
    let locked = match mode {
        LocusMode::C2Independent => 1.0 - ((1.0 - s3) / 2.0).powi(2),
        LocusMode::C1Independent => 1.0 - ((1.0 + s3) / 2.0).powi(2),
    };
    let (lo, hi) = free_range;
    let mut report = LocusReport {
        mode,
        csq,
        locked,
        bound0: None,
        max_deviation: 0.0,
        evaluated: 0,
        out_of_gamut: 0,
        xx_below_zz: Vec::new(),
    };
    for i in 0..samples {
        let free = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let triple = match mode {
            LocusMode::C2Independent => ConcurrenceTriple::new(locked, free, csq),
            LocusMode::C1Independent => ConcurrenceTriple::new(free, locked, csq),
        };
        let Ok(coeffs) = triple.and_then(|t| coeffs_from_concurrences(&t)) else {
            report.out_of_gamut += 1;
            continue;
        };
        let d = rtr_diagonal(&coeffs);
        if d.xx < d.zz {
            report.xx_below_zz.push(free);
            continue;
        }
        let b = d.bound();
        let b0 = *report.bound0.get_or_insert(b);
        report.max_deviation = report.max_deviation.max((b - b0).abs());
        report.evaluated += 1;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// critical point classification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    LocalMax,
    LocalMin,
    Saddle,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    /// Unit tangent direction in probability coordinates (sums to zero).
    pub direction: [f64; 4],
    /// `(f(p + eps d) - 2 f(p) + f(p - eps d)) / eps^2`.
    pub second_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalReport {
    pub point: FamilyCoeffs,
    pub bound: f64,
    pub eps: f64,
    /// Largest central first-difference quotient over the tangent basis.
    pub gradient_norm: f64,
    /// `gradient_norm <= 1e-6 * bound`.
    pub stationary: bool,
    /// Eigenvalues of the finite-difference Hessian on the tangent space.
    pub hessian_eigenvalues: [f64; 3],
    /// Magnitude below which a second difference is indistinguishable from rounding.
    pub noise_floor: f64,
    pub classification: Classification,
    pub witness_up: Option<Witness>,
    pub witness_down: Option<Witness>,
    /// Branch of the bound at the point.
    pub active_branch: BoundBranch,
    /// Every stencil point sits on the same branch.
    pub branch_stable: bool,
}

/// Orthonormal basis of the tangent space `sum dp = 0`.
pub const TANGENT_BASIS: [[f64; 4]; 3] = [
    [0.5, -0.5, -0.5, 0.5],
    [0.5, 0.5, -0.5, -0.5],
    [0.5, -0.5, 0.5, -0.5],
];

fn shifted(p: &[f64; 4], d: &[f64; 4], t: f64) -> [f64; 4] {
    [
        p[0] + t * d[0],
        p[1] + t * d[1],
        p[2] + t * d[2],
        p[3] + t * d[3],
    ]
}

fn unit(d: [f64; 4]) -> [f64; 4] {
    let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
    d.map(|x| x / n)
}

/// Second difference quotient of `f` at `p` along `d`.
pub fn second_difference<F: Fn(&[f64; 4]) -> f64>(
    f: &F,
    p: &[f64; 4],
    d: &[f64; 4],
    eps: f64,
) -> f64 {
    (f(&shifted(p, d, eps)) - 2.0 * f(p) + f(&shifted(p, d, -eps))) / (eps * eps)
}

fn check_interior(c: &FamilyCoeffs, eps: f64) -> Result<[f64; 4]> {
    if !(1e-5..=1e-1).contains(&eps) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            range: "[1e-5, 1e-1]",
        });
    }
    let p = c.probabilities();
    if let Some((index, &value)) = p.iter().enumerate().find(|(_, &x)| x < eps) {
        return Err(Error::BoundaryPoint { index, value, eps });
    }
    Ok(p)
}

/// Classifies a family point with the closed-form bound as objective.
pub fn classify_critical_point(c: &FamilyCoeffs, eps: f64) -> Result<CriticalReport> {
    classify_with(c, eps, &family_bound)
}

/// Classifies a family point for an arbitrary objective on probabilities.
pub fn classify_with<F: Fn(&[f64; 4]) -> f64>(
    c: &FamilyCoeffs,
    eps: f64,
    f: &F,
) -> Result<CriticalReport> {
    let p = check_interior(c, eps)?;
    let f0 = f(&p);
    let noise_floor = 16.0 * f64::EPSILON * f0.abs().max(1.0) / (eps * eps);
    let threshold = 10.0 * noise_floor;

    let mut branch_stable = true;
    let active_branch = RtrDiagonal::from_probabilities(&p).branch();
    let mut track = |q: &[f64; 4]| {
        if RtrDiagonal::from_probabilities(q).branch() != active_branch {
            branch_stable = false;
        }
    };

    let mut gradient_norm = 0.0f64;
    let mut h = [[0.0; 3]; 3];
    for i in 0..3 {
        let u = &TANGENT_BASIS[i];
        let (fp, fm) = (f(&shifted(&p, u, eps)), f(&shifted(&p, u, -eps)));
        track(&shifted(&p, u, eps));
        track(&shifted(&p, u, -eps));
        gradient_norm = gradient_norm.max(((fp - fm) / (2.0 * eps)).abs());
        h[i][i] = (fp - 2.0 * f0 + fm) / (eps * eps);
        for j in 0..i {
            let v = &TANGENT_BASIS[j];
            let mut corner = |si: f64, sj: f64| {
                let q = shifted(&shifted(&p, u, si * eps), v, sj * eps);
                track(&q);
                f(&q)
            };
            let mixed = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0)
                + corner(-1.0, -1.0))
                / (4.0 * eps * eps);
            h[i][j] = mixed;
            h[j][i] = mixed;
        }
    }
    let eig = symmetric_eigen(&h);
    let positive = eig.values.iter().filter(|&&l| l > threshold).count();
    let negative = eig.values.iter().filter(|&&l| l < -threshold).count();
    let classification = match (positive, negative) {
        (3, 0) => Classification::LocalMin,
        (0, 3) => Classification::LocalMax,
        (p, n) if p > 0 && n > 0 => Classification::Saddle,
        _ => Classification::Degenerate,
    };

    // simplex edges toward the last vertex first, then Hessian eigendirections
    let mut candidates: Vec<[f64; 4]> = (0..3)
        .map(|k| {
            let mut d = [0.0; 4];
            d[k] = 1.0;
            d[3] = -1.0;
            unit(d)
        })
        .collect();
    for v in eig.vectors {
        let mut d = [0.0; 4];
        for (k, basis) in TANGENT_BASIS.iter().enumerate() {
            for i in 0..4 {
                d[i] += v[k] * basis[i];
            }
        }
        candidates.push(unit(d));
    }
    let witnesses: Vec<Witness> = candidates
        .into_iter()
        .map(|direction| Witness {
            direction,
            second_difference: second_difference(f, &p, &direction, eps),
        })
        .collect();
    let witness_up = witnesses
        .iter()
        .find(|w| w.second_difference > threshold)
        .copied();
    let witness_down = witnesses
        .iter()
        .find(|w| w.second_difference < -threshold)
        .copied();

    Ok(CriticalReport {
        point: *c,
        bound: f0,
        eps,
        gradient_norm,
        stationary: gradient_norm <= 1e-6 * f0.abs(),
        hessian_eigenvalues: eig.values,
        noise_floor,
        classification,
        witness_up,
        witness_down,
        active_branch,
        branch_stable,
    })
}

/// `max_d |f(p + coarse d) - f(p)| / max_d |f(p + fine d) - f(p)|` over the
/// tangent basis in both orientations. Near `(coarse/fine)^2` at a stationary
/// point, near `coarse/fine` elsewhere.
pub fn stationarity_ratio(c: &FamilyCoeffs, coarse: f64, fine: f64) -> Result<f64> {
    let p = check_interior(c, coarse)?;
    check_interior(c, fine)?;
    let f0 = family_bound(&p);
    let spread = |eps: f64| {
        TANGENT_BASIS
            .iter()
            .flat_map(|u| [eps, -eps].map(|t| (family_bound(&shifted(&p, u, t)) - f0).abs()))
            .fold(0.0, f64::max)
    };
    Ok(spread(coarse) / spread(fine))
}

/// Principal angles reproducing a coefficient point, for display.
pub fn angles_from_coeffs(c: &FamilyCoeffs) -> FamilyAngles {
    concurrences_from_coeffs(c).angles
}

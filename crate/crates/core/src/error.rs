use thiserror::Error;

/// Errors raised by state construction and the analyses built on top of it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis string {basis:?} has length {got}, expected {expected}")]
    BadLength {
        basis: String,
        got: usize,
        expected: usize,
    },

    #[error("basis string {0:?} is not made of '0' and '1'")]
    BadBasis(String),

    #[error("basis state {0:?} listed more than once")]
    DuplicateBasis(String),

    #[error("state norm deviates from one: sum |a|^2 = {0}")]
    NotNormalized(f64),

    #[error("amplitude vector has length {got}, expected {expected}")]
    BadAmplitudeCount { got: usize, expected: usize },

    #[error("qubit count {got} outside the supported range {min}..={max}")]
    TooLarge { got: usize, min: usize, max: usize },

    #[error("invalid region: {0}")]
    BadRegion(String),

    #[error("Renyi order must be positive, got {0}")]
    BadAlpha(f64),

    #[error("generalized concurrence radicand {radicand} is negative for m = {m}")]
    NegativeRadicand { m: usize, radicand: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("settings vector {index} is not a unit vector (norm {norm})")]
    NotUnitVector { index: usize, norm: f64 },

    #[error("concurrence {0} outside [0, 1]")]
    BadConcurrence(f64),

    #[error("restart count must be at least one")]
    NoRestarts,

    #[error("{name} = {value} is out of range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("concurrence triple out of gamut: {formula} = {value}")]
    OutOfGamut { formula: &'static str, value: f64 },

    #[error("grid is empty")]
    EmptyGrid,

    #[error("point lies on the simplex boundary: p[{index}] = {value} < eps = {eps}")]
    BoundaryPoint { index: usize, value: f64, eps: f64 },

    #[error("expected a {expected}-qubit state, got {got} qubits")]
    WrongSize { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

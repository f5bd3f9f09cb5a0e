//! JSON state files:
//!
//! ```json
//! {"n": 7, "amplitudes": [{"basis": "0001111", "re": 0.5, "im": 0.0}]}
//! ```
//!
//! Basis strings are site-1-leftmost; omitted basis states are zero.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::Error;
use crate::state::PureState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeEntry {
    pub basis: String,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed state JSON at byte {offset} (line {line}, column {column}): {message}")]
    Json {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    State(#[from] Error),
}

/// Byte offset of a 1-based (line, column) position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

impl StateFile {
    pub fn from_state(state: &PureState) -> Self {
        Self {
            n: state.n(),
            amplitudes: state
                .support(0.0)
                .into_iter()
                .map(|(basis, a)| AmplitudeEntry {
                    basis,
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }

    pub fn to_state(&self) -> Result<PureState, Error> {
        let entries: Vec<(&str, Complex64)> = self
            .amplitudes
            .iter()
            .map(|e| (e.basis.as_str(), Complex64::new(e.re, e.im)))
            .collect();
        PureState::from_entries(self.n, &entries)
    }
}

pub fn parse_state(text: &str) -> Result<PureState, LoadError> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| LoadError::Json {
        offset: byte_offset(text, e.line(), e.column()),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(file.to_state()?)
}

pub fn read_state(path: &Path) -> Result<PureState, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_state(&text)
}

pub fn state_to_json(state: &PureState) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(state)).expect("plain data serializes")
}

/// Decimal places kept by report output.
pub const REPORT_DECIMALS: usize = 12;

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if !num.is_i64() && !num.is_u64() => {
            if let Some(x) = num.as_f64() {
                let rounded: f64 = format!("{x:.REPORT_DECIMALS$}")
                    .parse()
                    .expect("formatted float");
                // -0.0 prints as "-0.0"; keep zero unsigned
                let rounded = if rounded == 0.0 { 0.0 } else { rounded };
                if let Some(n) = serde_json::Number::from_f64(rounded) {
                    *num = n;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to [`REPORT_DECIMALS`] places, so
/// the last-bit noise of different summation orders never reaches the output.
pub fn report_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    round_floats(&mut v);
    serde_json::to_string_pretty(&v).expect("values serialize")
}

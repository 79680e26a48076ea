//! JSON ingestion of polynomial systems.
//!
//! ```json
//! {"qdot": [{"j": 0, "k": 1, "coeff": "1/1"}],
//!  "pdot": [{"j": 1, "k": 0, "coeff": "-1/1"}]}
//! ```

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use crate::quantize::{PolySystem, QpPoly, Side};
use crate::scalar::Rational;

#[derive(Debug, thiserror::Error)]
pub enum SystemError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed system document: {0}")]
    Malformed(String),
    #[error("{side} entry {index}: exponent {field} = {value} is negative")]
    NegativeExponent { side: &'static str, index: usize, field: &'static str, value: i64 },
    #[error("{side} entry {index}: exponent {field} = {value} is too large")]
    ExponentTooLarge { side: &'static str, index: usize, field: &'static str, value: i64 },
    #[error("{side} entry {index}: coefficient {text:?} is not an exact rational ({reason})")]
    BadCoefficient { side: &'static str, index: usize, text: String, reason: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    qdot: Vec<EntryDoc>,
    pdot: Vec<EntryDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    j: i64,
    k: i64,
    coeff: String,
}

/// Parses `"num/den"` or a bare integer. Decimals, exponents and zero
/// denominators are rejected.
pub fn parse_rational_literal(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num_digits = num.strip_prefix('-').or_else(|| num.strip_prefix('+')).unwrap_or(num);
    let valid = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !valid(num_digits) {
        return Err(if t.contains('.') { "decimals are not accepted".into() } else { "bad numerator".into() });
    }
    if !valid(den) {
        return Err("bad denominator".into());
    }
    let num: BigInt = num.parse().map_err(|_| "bad numerator".to_string())?;
    let den: BigInt = den.parse().map_err(|_| "bad denominator".to_string())?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(num, den))
}

fn exponent(side: Side, index: usize, field: &'static str, value: i64) -> Result<u32, SystemError> {
    if value < 0 {
        return Err(SystemError::NegativeExponent { side: side.name(), index, field, value });
    }
    u32::try_from(value).map_err(|_| SystemError::ExponentTooLarge { side: side.name(), index, field, value })
}

fn collect_side(side: Side, entries: &[EntryDoc]) -> Result<QpPoly, SystemError> {
    let mut out = QpPoly::new();
    for (index, e) in entries.iter().enumerate() {
        let j = exponent(side, index, "j", e.j)?;
        let k = exponent(side, index, "k", e.k)?;
        let c = parse_rational_literal(&e.coeff).map_err(|reason| SystemError::BadCoefficient {
            side: side.name(),
            index,
            text: e.coeff.clone(),
            reason,
        })?;
        *out.entry((j, k)).or_insert_with(Rational::zero) += c;
    }
    Ok(out)
}

/// Validates a system document; duplicate `(j, k)` entries are summed.
pub fn parse_system(text: &str) -> Result<PolySystem, SystemError> {
    let doc: SystemDoc = serde_json::from_str(text).map_err(|e| SystemError::Malformed(e.to_string()))?;
    Ok(PolySystem::new(collect_side(Side::Qdot, &doc.qdot)?, collect_side(Side::Pdot, &doc.pdot)?))
}

pub fn load_system(path: impl AsRef<Path>) -> Result<PolySystem, SystemError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SystemError::Io { path: path.to_path_buf(), source })?;
    parse_system(&text)
}

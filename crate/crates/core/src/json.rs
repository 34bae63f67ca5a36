//! JSON encodings. Decoders validate shape and finiteness and never panic.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::littlewood::{is_forest, CanonicalResult};
use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::schur_real::SchurRealForm;
use crate::special_forms::BlockSummary;

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<[f64; 4]>>,
}

impl TryFrom<RawMatrix> for QMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<QMatrix> {
        if raw.rows == 0 || raw.cols == 0 {
            return Err(Error::BadShape("rows and cols must be positive".into()));
        }
        if raw.entries.len() != raw.rows {
            return Err(Error::BadShape(format!(
                "declared {} rows but found {}",
                raw.rows,
                raw.entries.len()
            )));
        }
        let mut data = Vec::new();
        for (i, row) in raw.entries.iter().enumerate() {
            if row.len() != raw.cols {
                return Err(Error::BadShape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    raw.cols
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if !e.iter().all(|v| v.is_finite()) {
                    return Err(Error::BadShape(format!("entry ({i}, {j}) is not finite")));
                }
                data.push(Quaternion::new(e[0], e[1], e[2], e[3]));
            }
        }
        QMatrix::from_vec(raw.rows, raw.cols, data)
            .ok_or_else(|| Error::BadShape("entry count overflow".into()))
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMatrix {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows())
                .map(|i| self.row(i).iter().map(Quaternion::coeffs).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(d)?;
        QMatrix::try_from(raw).map_err(D::Error::custom)
    }
}

/// Parse failures from the text decoders.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ParseError(String);

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError(e.to_string())
    }
}

pub fn parse_matrix(text: &str) -> std::result::Result<QMatrix, ParseError> {
    Ok(serde_json::from_str(text)?)
}

/// A projector or square-zero block census.
pub fn parse_summary(text: &str) -> std::result::Result<BlockSummary, ParseError> {
    let s: BlockSummary = serde_json::from_str(text)?;
    if !s.is_valid() {
        return Err(ParseError("block summary violates its invariants".into()));
    }
    Ok(s)
}

/// A canonical-form report. The relation tracker is not part of the format
/// and comes back empty.
pub fn parse_canonical_result(text: &str) -> std::result::Result<CanonicalResult, ParseError> {
    let r: CanonicalResult = serde_json::from_str(text)?;
    r.validate().map_err(|e| ParseError(e.to_string()))?;
    if !is_forest(r.canon.rows(), &r.edges) {
        return Err(ParseError("edges contain a cycle".into()));
    }
    Ok(r)
}

pub fn parse_schur_form(text: &str) -> std::result::Result<SchurRealForm, ParseError> {
    let f: SchurRealForm = serde_json::from_str(text)?;
    let n = f.f.rows();
    if !f.f.is_square() || f.u.rows() != n || f.u.cols() != n {
        return Err(ParseError("U and F must be square of the same size".into()));
    }
    if f.lambdas.len() != f.sizes.len()
        || f.sizes.contains(&0)
        || f.sizes.iter().try_fold(0usize, |a, s| a.checked_add(*s)) != Some(n)
        || !f.lambdas.iter().all(|l| l.is_finite())
    {
        return Err(ParseError("lambdas and sizes do not describe F".into()));
    }
    Ok(f)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializing plain data cannot fail")
}

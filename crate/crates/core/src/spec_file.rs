//! The JSON ring-spec file.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "group": { "free_rank": 1, "torsion": [] },
//!   "basis": ["a", "b"],
//!   "degrees": [[0], [1]],
//!   "structure": [{ "i": 0, "j": 1, "k": 1, "scalar": "1" }],
//!   "grams": [
//!     { "format": "dense", "rows": [["1", "0"], ["0", "1"]] },
//!     { "format": "sparse", "entries": [[0, 0, "2"], [1, 1, "1/2"]] }
//!   ],
//!   "metadata": {}
//! }
//! ```
//!
//! Sparse Gram entries are taken literally: unlisted positions are zero and
//! nothing is mirrored.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupElement, GroupSignature};
use crate::linalg::{Matrix, Scalar};
use crate::ring::{GradedRing, StructureEntry};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}, field `{field}`: {message}")]
    Parse { line: usize, column: usize, field: String, message: String },
    #[error("invalid ring spec: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub scalar: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "lowercase", deny_unknown_fields)]
pub enum GramSpec {
    Dense { rows: Vec<Vec<Scalar>> },
    Sparse { entries: Vec<(usize, usize, Scalar)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpecFile {
    pub format_version: u32,
    pub group: GroupSpec,
    pub basis: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    pub structure: Vec<StructureSpec>,
    pub grams: Vec<GramSpec>,
    #[serde(default = "empty_object")]
    pub metadata: serde_json::Value,
}

fn empty_object() -> serde_json::Value {
    serde_json::Value::Object(Default::default())
}

impl RingSpecFile {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let spec: RingSpecFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let inner = e.into_inner();
            SpecError::Parse { line: inner.line(), column: inner.column(), field, message: inner.to_string() }
        })?;
        if spec.format_version != FORMAT_VERSION {
            return Err(SpecError::Invalid(format!(
                "format_version: expected {FORMAT_VERSION}, found {}",
                spec.format_version
            )));
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn to_ring(&self) -> Result<GradedRing, SpecError> {
        let sig = GroupSignature::new(self.group.free_rank, self.group.torsion.clone())
            .map_err(|e| SpecError::Invalid(format!("group: {e}")))?;
        let n = self.basis.len();
        let degrees = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let g = GroupElement::from_raw(d.clone());
                if sig.conforms(&g) {
                    Ok(g)
                } else {
                    Err(SpecError::Invalid(format!("degrees[{i}] = {d:?} is not a reduced element of the group")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let grams = self
            .grams
            .iter()
            .enumerate()
            .map(|(a, g)| gram_matrix(g, n).map_err(|m| SpecError::Invalid(format!("grams[{a}]: {m}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let entries = self.structure.iter().map(|e| StructureEntry::new(e.i, e.j, e.k, e.scalar.clone()));
        GradedRing::new(sig, self.basis.clone(), degrees, entries, grams).map_err(|e| SpecError::Invalid(e.to_string()))
    }

    pub fn from_ring(ring: &GradedRing, metadata: serde_json::Value) -> Self {
        RingSpecFile {
            format_version: FORMAT_VERSION,
            group: GroupSpec { free_rank: ring.signature().free_rank(), torsion: ring.signature().torsion().to_vec() },
            basis: ring.labels().to_vec(),
            degrees: ring.degrees().iter().map(|g| g.exponents().to_vec()).collect(),
            structure: ring
                .structure_entries()
                .map(|e| StructureSpec { i: e.i, j: e.j, k: e.k, scalar: e.value })
                .collect(),
            grams: ring
                .grams()
                .iter()
                .map(|g| GramSpec::Sparse { entries: g.nonzero_entries().map(|(r, c, s)| (r, c, s.clone())).collect() })
                .collect(),
            metadata,
        }
    }
}

fn gram_matrix(spec: &GramSpec, n: usize) -> Result<Matrix, String> {
    match spec {
        GramSpec::Dense { rows } => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(format!("dense Gram must be {n}x{n}"));
            }
            Matrix::from_rows(rows.clone()).map_err(|e| e.to_string())
        }
        GramSpec::Sparse { entries } => {
            let mut m = Matrix::zeros(n, n);
            let mut seen = std::collections::BTreeSet::new();
            for (idx, (r, c, s)) in entries.iter().enumerate() {
                if *r >= n || *c >= n {
                    return Err(format!("entries[{idx}] = ({r}, {c}) out of range for dimension {n}"));
                }
                if !seen.insert((*r, *c)) {
                    return Err(format!("entries[{idx}] repeats position ({r}, {c})"));
                }
                m.set(*r, *c, s.clone());
            }
            Ok(m)
        }
    }
}

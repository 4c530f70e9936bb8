//! On-disk algebra format.
//!
//! ```json
//! {
//!   "dim": 6,
//!   "basis": ["x", "y", "h", "v0", "v1", "v2"],
//!   "brackets": [{"i": 0, "j": 1, "c": {"2": "1"}}, ...],
//!   "semidirect": {"s_dim": 3, "module": 2}
//! }
//! ```
//!
//! Only i < j entries are permitted, coefficients are rational strings
//! (`"p"` or `"p/q"`), and unknown keys are rejected. The optional
//! `semidirect` block records how the algebra was built so downstream
//! analysis can apply the sl(2)-specific results; absent, analysis stays
//! generic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::LieError;
use crate::lie::LieAlgebra;
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semidirect: Option<SemidirectMeta>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub c: BTreeMap<String, String>,
}

/// Construction metadata: the dimension of the semisimple summand (always 3
/// for the built-in constructor) and the highest weight of the module.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SemidirectMeta {
    pub s_dim: usize,
    pub module: u32,
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dim is {dim} but basis has {names} names")]
    DimMismatch { dim: usize, names: usize },
    #[error("bracket entry ({i},{j}): bad target index `{key}`")]
    BadTargetIndex { i: usize, j: usize, key: String },
    #[error("bracket entry ({i},{j}): {source}")]
    BadCoefficient {
        i: usize,
        j: usize,
        #[source]
        source: crate::error::KernelError,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, FileError> {
        if self.dim != self.basis.len() {
            return Err(FileError::DimMismatch { dim: self.dim, names: self.basis.len() });
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for entry in &self.brackets {
            let mut coeffs = Vec::with_capacity(entry.c.len());
            for (key, value) in &entry.c {
                let k: usize = key.parse().map_err(|_| FileError::BadTargetIndex {
                    i: entry.i,
                    j: entry.j,
                    key: key.clone(),
                })?;
                let c = parse_rational(value).map_err(|source| FileError::BadCoefficient {
                    i: entry.i,
                    j: entry.j,
                    source,
                })?;
                coeffs.push((k, c));
            }
            brackets.push(((entry.i, entry.j), coeffs));
        }
        Ok(LieAlgebra::new(self.basis.clone(), brackets)?)
    }

    pub fn from_algebra(algebra: &LieAlgebra, semidirect: Option<SemidirectMeta>) -> Self {
        let brackets = algebra
            .stored_brackets()
            .map(|(&(i, j), coeffs)| BracketEntry {
                i,
                j,
                c: coeffs
                    .iter()
                    .map(|(k, c)| (k.to_string(), format_rational(c)))
                    .collect(),
            })
            .collect();
        AlgebraFile {
            dim: algebra.dim(),
            basis: algebra.basis().to_vec(),
            brackets,
            semidirect,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serializes")
    }
}

/// Parse and validate in one step.
pub fn read_algebra(text: &str) -> Result<(LieAlgebra, Option<SemidirectMeta>), FileError> {
    let file = AlgebraFile::from_json(text)?;
    let algebra = file.to_algebra()?;
    Ok((algebra, file.semidirect))
}

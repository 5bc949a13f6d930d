//! Matrix file format: a JSON document with `n` and `entries`, an n×n
//! row-major array of `[re, im]` pairs, plus an optional `schema_version`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, ComplexMatrix};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<String>,
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            schema_version: Some(SCHEMA_VERSION.to_string()),
            n: m.nrows(),
            entries: matrix::to_pairs(m),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if let Some(v) = &self.schema_version {
            if v.split('.').next() != SCHEMA_VERSION.split('.').next() {
                return Err(Error::Parse(format!(
                    "unsupported schema_version {v:?}, expected {SCHEMA_VERSION}"
                )));
            }
        }
        if self.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        if self.entries.len() != self.n {
            return Err(Error::Parse(format!(
                "expected {} rows, found {}",
                self.n,
                self.entries.len()
            )));
        }
        if let Some((r, row)) = self
            .entries
            .iter()
            .enumerate()
            .find(|(_, row)| row.len() != self.n)
        {
            return Err(Error::Parse(format!(
                "row {r} has {} entries, expected {}",
                row.len(),
                self.n
            )));
        }
        let m = matrix::from_pairs(&self.entries)?;
        matrix::validate(&m)?;
        Ok(m)
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_matrix()
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("matrix file serializes")
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, matrix_to_string(m) + "\n")?;
    Ok(())
}

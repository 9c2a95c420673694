//! The unitary-set file format.
//!
//! ```json
//! { "dim": 2, "unitaries": [ [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] ], "labels": ["1"] }
//! ```
//!
//! Each matrix is a list of rows, each entry a `[re, im]` pair. Field order
//! is irrelevant. Unknown fields produce a warning, or an error in strict
//! mode.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use udes_core::{Mat, UnitaryMat, UnitarySet, C64};

const KNOWN_FIELDS: [&str; 3] = ["dim", "unitaries", "labels"];

pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitarySetFile {
    pub dim: usize,
    pub unitaries: Vec<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FileError {
    Json(String),
    UnknownFields(Vec<String>),
    Invalid(Vec<String>),
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Json(e) => write!(f, "malformed JSON: {e}"),
            FileError::UnknownFields(names) => write!(f, "unknown fields: {}", names.join(", ")),
            FileError::Invalid(problems) => write!(f, "invalid unitary set:\n  {}", problems.join("\n  ")),
        }
    }
}

impl std::error::Error for FileError {}

/// A parsed file with any warnings raised while reading it.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub file: UnitarySetFile,
    pub warnings: Vec<String>,
}

impl UnitarySetFile {
    /// Parses `text`; unknown top-level fields are errors when `strict`.
    pub fn parse(text: &str, strict: bool) -> Result<Loaded, FileError> {
        let value: Value = serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))?;
        let Value::Object(map) = &value else {
            return Err(FileError::Json("top level must be an object".into()));
        };
        let unknown: Vec<String> = map.keys().filter(|k| !KNOWN_FIELDS.contains(&k.as_str())).cloned().collect();
        if strict && !unknown.is_empty() {
            return Err(FileError::UnknownFields(unknown));
        }
        let warnings = unknown.iter().map(|k| format!("ignoring unknown field `{k}`")).collect();
        let file = serde_json::from_value(value).map_err(|e| FileError::Json(e.to_string()))?;
        Ok(Loaded { file, warnings })
    }

    pub fn from_set(set: &UnitarySet, labels: Option<Vec<String>>) -> Self {
        let unitaries = set
            .iter()
            .map(|u| (0..u.dim()).map(|i| (0..u.dim()).map(|j| [u[(i, j)].re, u[(i, j)].im]).collect()).collect())
            .collect();
        UnitarySetFile { dim: set.dim(), unitaries, labels }
    }

    /// Converts to a validated set, listing every problem with its index.
    pub fn to_set(&self, tol: f64) -> Result<UnitarySet, FileError> {
        let mut problems = Vec::new();
        let mut elems = Vec::new();
        if self.dim == 0 {
            problems.push("dim must be positive".to_string());
        }
        if self.unitaries.is_empty() {
            problems.push("no unitaries".to_string());
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.unitaries.len() {
                problems.push(format!("{} labels for {} unitaries", labels.len(), self.unitaries.len()));
            }
        }
        for (a, rows) in self.unitaries.iter().enumerate() {
            if self.dim == 0 {
                break;
            }
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                problems.push(format!("unitary {a}: expected {0}x{0} entries", self.dim));
                continue;
            }
            let data: Vec<C64> = rows.iter().flatten().map(|e| C64::new(e[0], e[1])).collect();
            let m = match Mat::from_row_major(self.dim, data) {
                Ok(m) => m,
                Err(e) => {
                    problems.push(format!("unitary {a}: {e}"));
                    continue;
                }
            };
            match UnitaryMat::new(m, tol) {
                Ok(u) => elems.push(u),
                Err(e) => problems.push(format!("unitary {a}: {e}")),
            }
        }
        if !problems.is_empty() {
            return Err(FileError::Invalid(problems));
        }
        UnitarySet::new(elems, tol).map_err(|e| FileError::Invalid(vec![e.to_string()]))
    }

    /// Canonical serialization: pretty-printed, fields in declaration order,
    /// numbers in shortest round-trip form, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

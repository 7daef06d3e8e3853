//! JSON monomer file format.
//!
//! ```json
//! {
//!   "name": "PPf",
//!   "n_atoms": 6,
//!   "bonds": [[1, 2], [1, 5], [2, 3], [3, 4], [4, 5], [4, 6]],
//!   "link_b": 5,
//!   "link_e": 3,
//!   "dangling": [],
//!   "n_double_bonds": 3
//! }
//! ```
//!
//! `dangling` and `trim_last` are optional and default to empty.

use serde::{Deserialize, Serialize};

use super::MonomerSpec;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomerFile {
    name: String,
    n_atoms: usize,
    bonds: Vec<[usize; 2]>,
    link_b: usize,
    link_e: usize,
    #[serde(default)]
    dangling: Vec<usize>,
    n_double_bonds: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    trim_last: Vec<usize>,
}

pub fn parse_monomer(text: &str) -> Result<MonomerSpec> {
    let file: MonomerFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    MonomerSpec::from_labels(
        &file.name,
        file.n_atoms,
        &file.bonds,
        file.link_b,
        file.link_e,
        &file.dangling,
        file.n_double_bonds,
    )?
    .with_trim_last(&file.trim_last)
}

/// Canonical text form: bonds sorted lexicographically with `i < j`, 1-based.
pub fn serialize_monomer(spec: &MonomerSpec) -> String {
    let file = MonomerFile {
        name: spec.name().to_string(),
        n_atoms: spec.n_atoms(),
        bonds: spec.bonds().iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        link_b: spec.link_b() + 1,
        link_e: spec.link_e() + 1,
        dangling: spec.dangling().iter().map(|&d| d + 1).collect(),
        n_double_bonds: spec.n_double_bonds(),
        trim_last: spec.trim_last().iter().map(|&t| t + 1).collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("monomer serializes");
    text.push('\n');
    text
}

//! JSON category files.
//!
//! ```json
//! {"objects": ["x0", "x1"],
//!  "morphisms": [{"name": "f", "src": "x0", "tgt": "x1"}],
//!  "identities": {"x0": "id0"},
//!  "compose": [["g", "f", "gf"]]}
//! ```
//!
//! Identities may be omitted (they are named `id_<obj>`), and so may any
//! composite involving an identity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FinCat, ValidationReport};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryData {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismData>,
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismData {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// `[g, f, g∘f]`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeEntry(pub String, pub String, pub String);

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed category file at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid category:\n{0}")]
    Invalid(ValidationReport),
}

impl CategoryData {
    /// A finite poset as a category: one morphism `x_y` for each `x ≤ y`, `x ≠ y`.
    pub fn poset(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> CategoryData {
        let n = names.len();
        let arrow = |a: usize, b: usize| {
            if a == b {
                format!("id_{}", names[a])
            } else {
                format!("{}_{}", names[a], names[b])
            }
        };
        let mut data = CategoryData { objects: names.iter().map(|s| s.to_string()).collect(), ..Default::default() };
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    data.morphisms.push(MorphismData { name: arrow(a, b), src: names[a].into(), tgt: names[b].into() });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && leq(a, b) && leq(b, c) {
                        data.compose.push(ComposeEntry(arrow(b, c), arrow(a, b), arrow(a, c)));
                    }
                }
            }
        }
        data
    }

    /// Objects only, no non-identity morphisms.
    pub fn discrete(names: &[&str]) -> CategoryData {
        CategoryData { objects: names.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }
}

pub fn parse_category(text: &str) -> Result<FinCat, ParseError> {
    let data: CategoryData = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    FinCat::new(&data).map_err(ParseError::Invalid)
}

/// Writes every morphism, identity, and composite explicitly.
pub fn serialize_category(cat: &FinCat) -> String {
    serde_json::to_string_pretty(&cat.to_data()).expect("category data is always serializable")
}

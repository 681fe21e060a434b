//! The class file format.
//!
//! ```json
//! {"W": ["@isos"], "C": ["*"], "F": ["*"]}
//! ```
//!
//! Entries name morphisms of the accompanying category. Three tokens are
//! expanded: `*` (every morphism), `@identities` and `@isos`. An optional
//! `"W'"` list carries the intermediate class used by the lifting-defined
//! extension.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::MorphClass;
use crate::fincat::FinCat;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    #[serde(rename = "W", default)]
    pub w: Vec<String>,
    #[serde(rename = "C", default)]
    pub c: Vec<String>,
    #[serde(rename = "F", default)]
    pub f: Vec<String>,
    #[serde(rename = "W'", default, skip_serializing_if = "Option::is_none")]
    pub w_prime: Option<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum ClassError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("class {class}: unknown morphism `{name}`")]
    UnknownMorphism { class: &'static str, name: String },
}

/// A parsed class file resolved against a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedClasses {
    pub w: MorphClass,
    pub c: MorphClass,
    pub f: MorphClass,
    pub w_prime: Option<MorphClass>,
}

fn resolve(cat: &FinCat, class: &'static str, names: &[String]) -> Result<MorphClass, ClassError> {
    let mut out = MorphClass::EMPTY;
    for name in names {
        out = out
            | match name.as_str() {
                "*" => MorphClass::all(cat),
                "@identities" => MorphClass::identities(cat),
                "@isos" => MorphClass::isos(cat),
                _ => match cat.morphism_by_name(name) {
                    Some(m) => MorphClass::from_ids([m]),
                    None => return Err(ClassError::UnknownMorphism { class, name: name.clone() }),
                },
            };
    }
    Ok(out)
}

impl ClassFile {
    pub fn resolve(&self, cat: &FinCat) -> Result<ResolvedClasses, ClassError> {
        Ok(ResolvedClasses {
            w: resolve(cat, "W", &self.w)?,
            c: resolve(cat, "C", &self.c)?,
            f: resolve(cat, "F", &self.f)?,
            w_prime: self.w_prime.as_deref().map(|n| resolve(cat, "W'", n)).transpose()?,
        })
    }

    /// Explicit member lists, in morphism order.
    pub fn from_classes(cat: &FinCat, w: MorphClass, c: MorphClass, f: MorphClass) -> ClassFile {
        ClassFile { w: w.names(cat), c: c.names(cat), f: f.names(cat), w_prime: None }
    }
}

pub fn parse_classes(cat: &FinCat, text: &str) -> Result<ResolvedClasses, ClassError> {
    let file: ClassFile = serde_json::from_str(text).map_err(|e| ClassError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.resolve(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tokens_expand() {
        let d = fixtures::diamond();
        let r = parse_classes(&d, r#"{"W": ["@isos"], "C": ["*"], "F": ["@identities", "bot_a"]}"#).unwrap();
        assert_eq!(r.w, MorphClass::isos(&d));
        assert_eq!(r.c, MorphClass::all(&d));
        assert_eq!(r.f.len(), 5);
        assert_eq!(r.w_prime, None);
    }

    #[test]
    fn unknown_name_is_an_error() {
        let d = fixtures::diamond();
        let err = parse_classes(&d, r#"{"C": ["nope"]}"#).unwrap_err();
        assert!(matches!(err, ClassError::UnknownMorphism { class: "C", .. }));
        assert!(matches!(parse_classes(&d, r#"{"X": []}"#), Err(ClassError::Syntax { .. })));
    }

    #[test]
    fn explicit_lists_round_trip() {
        let a = fixtures::arrow();
        let all = MorphClass::all(&a);
        let file = ClassFile::from_classes(&a, MorphClass::identities(&a), all, all);
        let text = serde_json::to_string(&file).unwrap();
        let back = parse_classes(&a, &text).unwrap();
        assert_eq!((back.w, back.c, back.f), (MorphClass::identities(&a), all, all));
    }
}

//! Adjunction files.
//!
//! ```json
//! {"source": "diamond.cat", "target": "pt.cat",
//!  "left":  {"objects": {"bot": "*", "a": "*", "b": "*", "top": "*"}, "morphisms": {}},
//!  "right": {"objects": {"*": "top"}},
//!  "unit": {}, "counit": {}}
//! ```
//!
//! `source` and `target` are category files, relative to the adjunction file.
//! Identities may be left out of morphism maps. A morphism map entry may be
//! omitted whenever the hom-set it lands in has one element, and likewise
//! for unit and counit components.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Adjunction, Functor};
use crate::fincat::{FinCat, MorphId, ObjId};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMaps {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionFile {
    pub source: String,
    pub target: String,
    pub left: FunctorMaps,
    pub right: FunctorMaps,
    #[serde(default)]
    pub unit: BTreeMap<String, String>,
    #[serde(default)]
    pub counit: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum AdjunctionParseError {
    #[error("malformed adjunction file at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{part}: unknown {kind} `{name}`")]
    Unknown { part: &'static str, kind: &'static str, name: String },
    #[error("{part}: no entry for `{name}` and no unique choice")]
    Missing { part: &'static str, name: String },
}

pub fn parse_adjunction(text: &str) -> Result<AdjunctionFile, AdjunctionParseError> {
    serde_json::from_str(text).map_err(|e| AdjunctionParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn obj(cat: &FinCat, part: &'static str, name: &str) -> Result<ObjId, AdjunctionParseError> {
    cat.object_by_name(name).ok_or_else(|| AdjunctionParseError::Unknown { part, kind: "object", name: name.into() })
}

fn morph(cat: &FinCat, part: &'static str, name: &str) -> Result<MorphId, AdjunctionParseError> {
    cat.morphism_by_name(name).ok_or_else(|| AdjunctionParseError::Unknown {
        part,
        kind: "morphism",
        name: name.into(),
    })
}

fn check_keys<'k>(
    keys: impl IntoIterator<Item = &'k String>,
    part: &'static str,
    kind: &'static str,
    known: impl Fn(&str) -> bool,
) -> Result<(), AdjunctionParseError> {
    match keys.into_iter().find(|k| !known(k)) {
        Some(k) => Err(AdjunctionParseError::Unknown { part, kind, name: k.clone() }),
        None => Ok(()),
    }
}

/// An explicit entry, or the only morphism in `hom(a, b)`.
fn component(
    cat: &FinCat,
    part: &'static str,
    key: &str,
    given: Option<&String>,
    a: ObjId,
    b: ObjId,
) -> Result<MorphId, AdjunctionParseError> {
    match given {
        Some(name) => morph(cat, part, name),
        None => match cat.hom(a, b) {
            [only] => Ok(*only),
            _ => Err(AdjunctionParseError::Missing { part, name: key.into() }),
        },
    }
}

fn functor(
    src: &FinCat,
    dst: &FinCat,
    maps: &FunctorMaps,
    part: &'static str,
) -> Result<Functor, AdjunctionParseError> {
    check_keys(maps.objects.keys(), part, "object", |k| src.object_by_name(k).is_some())?;
    check_keys(maps.morphisms.keys(), part, "morphism", |k| src.morphism_by_name(k).is_some())?;
    let mut objects = Vec::with_capacity(src.object_count());
    for x in src.objects() {
        let name = src.object_name(x);
        let image = maps.objects.get(name).ok_or_else(|| AdjunctionParseError::Missing { part, name: name.into() })?;
        objects.push(obj(dst, part, image)?);
    }
    let mut morphisms = Vec::with_capacity(src.morphism_count());
    for m in src.morphisms() {
        let (a, b) = (objects[src.src(m).0], objects[src.tgt(m).0]);
        let given = maps.morphisms.get(src.name(m));
        let image = match given {
            None if src.is_identity(m) => dst.id(a),
            _ => component(dst, part, src.name(m), given, a, b)?,
        };
        morphisms.push(image);
    }
    Ok(Functor { objects, morphisms })
}

impl AdjunctionFile {
    /// Resolves names against the source category `m` and target `n`. The
    /// result is not validated.
    pub fn resolve<'a>(&self, m: &'a FinCat, n: &'a FinCat) -> Result<Adjunction<'a>, AdjunctionParseError> {
        let left = functor(m, n, &self.left, "left")?;
        let right = functor(n, m, &self.right, "right")?;
        check_keys(self.unit.keys(), "unit", "object", |k| m.object_by_name(k).is_some())?;
        check_keys(self.counit.keys(), "counit", "object", |k| n.object_by_name(k).is_some())?;
        let unit = m
            .objects()
            .map(|a| {
                let tsa = right.obj(left.obj(a));
                component(m, "unit", m.object_name(a), self.unit.get(m.object_name(a)), a, tsa)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let counit = n
            .objects()
            .map(|x| {
                let stx = left.obj(right.obj(x));
                component(n, "counit", n.object_name(x), self.counit.get(n.object_name(x)), stx, x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Adjunction { m, n, left, right, unit, counit })
    }

    /// Writes every map explicitly.
    pub fn from_adjunction(adj: &Adjunction, source: &str, target: &str) -> AdjunctionFile {
        let maps = |src: &FinCat, dst: &FinCat, f: &Functor| FunctorMaps {
            objects: src.objects().map(|x| (src.object_name(x).into(), dst.object_name(f.obj(x)).into())).collect(),
            morphisms: src.morphisms().map(|m| (src.name(m).into(), dst.name(f.map(m)).into())).collect(),
        };
        AdjunctionFile {
            source: source.into(),
            target: target.into(),
            left: maps(adj.m, adj.n, &adj.left),
            right: maps(adj.n, adj.m, &adj.right),
            unit: adj.m.objects().map(|a| (adj.m.object_name(a).into(), adj.m.name(adj.unit[a.0]).into())).collect(),
            counit: adj
                .n
                .objects()
                .map(|x| (adj.n.object_name(x).into(), adj.n.name(adj.counit[x.0]).into()))
                .collect(),
        }
    }
}

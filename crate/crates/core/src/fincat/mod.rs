//! Finite categories stored as a dense composition table.
//!
//! A [`FinCat`] is only ever constructed from a [`CategoryData`] that passes
//! [`validate_category`], so every value of the type satisfies the unit and
//! associativity laws. Morphisms and objects are addressed by dense indices
//! ([`MorphId`], [`ObjId`]); names are kept for reporting.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

pub mod io;
pub mod limits;

pub use io::{parse_category, serialize_category, CategoryData, ComposeEntry, MorphismData, ParseError};
pub use limits::{
    colimit, is_finitely_bicomplete, limit, ApexFailure, ApexReason, Bicompleteness, LimitError, Mediator, Shape,
    Universal,
};

use crate::morphclass::tables::Tables;

/// Upper bound on the number of morphisms; classes are 128-bit sets.
pub const MAX_MORPHISMS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

impl fmt::Display for MorphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// One violated constraint found while validating category data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    DuplicateObject(String),
    DuplicateMorphism(String),
    UnknownObject { morphism: String, object: String },
    UnknownIdentityObject(String),
    IdentityNotEndo { object: String, morphism: String },
    SharedIdentity { morphism: String },
    UnknownMorphism { entry: usize, name: String },
    DuplicateComposite { g: String, f: String },
    NotComposable { g: String, f: String },
    CompositeTyping { g: String, f: String, result: String },
    MissingComposite { g: String, f: String },
    LeftUnit { f: String },
    RightUnit { f: String },
    Associativity { h: String, g: String, f: String },
    TooManyMorphisms(usize),
}

impl fmt::Display for Issue {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::DuplicateObject(o) => write!(out, "duplicate object `{o}`"),
            Issue::DuplicateMorphism(m) => write!(out, "duplicate morphism `{m}`"),
            Issue::UnknownObject { morphism, object } => {
                write!(out, "morphism `{morphism}` references unknown object `{object}`")
            }
            Issue::UnknownIdentityObject(o) => write!(out, "identity declared for unknown object `{o}`"),
            Issue::IdentityNotEndo { object, morphism } => {
                write!(out, "identity `{morphism}` of `{object}` is not an endomorphism of `{object}`")
            }
            Issue::SharedIdentity { morphism } => {
                write!(out, "`{morphism}` is declared as the identity of more than one object")
            }
            Issue::UnknownMorphism { entry, name } => {
                write!(out, "compose entry {entry} references unknown morphism `{name}`")
            }
            Issue::DuplicateComposite { g, f } => write!(out, "composite {g}∘{f} given more than once"),
            Issue::NotComposable { g, f } => write!(out, "entry for {g}∘{f} but target({f}) ≠ source({g})"),
            Issue::CompositeTyping { g, f, result } => {
                write!(out, "composite {g}∘{f} = {result} has the wrong source or target")
            }
            Issue::MissingComposite { g, f } => write!(out, "missing composite {g}∘{f}"),
            Issue::LeftUnit { f } => write!(out, "left unit law fails at `{f}`"),
            Issue::RightUnit { f } => write!(out, "right unit law fails at `{f}`"),
            Issue::Associativity { h, g, f } => write!(out, "associativity fails at ({h}, {g}, {f})"),
            Issue::TooManyMorphisms(n) => write!(out, "{n} morphisms exceeds the limit of {MAX_MORPHISMS}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, issue) in self.issues.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphId>,
    // table[g * n + f] = g∘f
    table: Vec<Option<MorphId>>,
    homs: Vec<Vec<MorphId>>,
    tables: OnceLock<Tables>,
}

impl Clone for FinCat {
    fn clone(&self) -> Self {
        FinCat {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            table: self.table.clone(),
            homs: self.homs.clone(),
            tables: OnceLock::new(),
        }
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.table == other.table
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms)
            .finish_non_exhaustive()
    }
}

/// Intermediate form produced by name resolution; may violate the laws.
struct Resolved {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphId>,
    table: Vec<Option<MorphId>>,
}

fn resolve(data: &CategoryData, issues: &mut Vec<Issue>) -> Resolved {
    let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
    let mut objects = Vec::new();
    for name in &data.objects {
        if obj_index.contains_key(name.as_str()) {
            issues.push(Issue::DuplicateObject(name.clone()));
            continue;
        }
        obj_index.insert(name, ObjId(objects.len()));
        objects.push(name.clone());
    }
    for key in data.identities.keys() {
        if !obj_index.contains_key(key.as_str()) {
            issues.push(Issue::UnknownIdentityObject(key.clone()));
        }
    }

    let mut listed: Vec<(String, Option<ObjId>, Option<ObjId>)> = Vec::new();
    let mut listed_names: HashMap<&str, usize> = HashMap::new();
    for m in &data.morphisms {
        if listed_names.contains_key(m.name.as_str()) {
            issues.push(Issue::DuplicateMorphism(m.name.clone()));
            continue;
        }
        let src = obj_index.get(m.src.as_str()).copied();
        let tgt = obj_index.get(m.tgt.as_str()).copied();
        for (o, name) in [(src, &m.src), (tgt, &m.tgt)] {
            if o.is_none() {
                issues.push(Issue::UnknownObject { morphism: m.name.clone(), object: name.clone() });
            }
        }
        listed_names.insert(&m.name, listed.len());
        listed.push((m.name.clone(), src, tgt));
    }

    // Identities not present in the morphism list are materialized first, in object order.
    let mut inferred: Vec<Morphism> = Vec::new();
    let mut id_names: Vec<String> = Vec::with_capacity(objects.len());
    let mut claimed: HashMap<String, ObjId> = HashMap::new();
    for (k, obj) in objects.iter().enumerate() {
        let name = data.identities.get(obj).cloned().unwrap_or_else(|| format!("id_{obj}"));
        if claimed.insert(name.clone(), ObjId(k)).is_some() {
            issues.push(Issue::SharedIdentity { morphism: name.clone() });
        }
        match listed_names.get(name.as_str()) {
            Some(&at) => {
                let (_, s, t) = &listed[at];
                if *s != Some(ObjId(k)) || *t != Some(ObjId(k)) {
                    issues.push(Issue::IdentityNotEndo { object: obj.clone(), morphism: name.clone() });
                }
            }
            None => {
                if !inferred.iter().any(|m| m.name == name) {
                    inferred.push(Morphism { name: name.clone(), src: ObjId(k), tgt: ObjId(k) });
                }
            }
        }
        id_names.push(name);
    }

    let mut morphisms = inferred;
    for (name, s, t) in listed {
        // Dangling endpoints are already reported; keep the index space dense.
        morphisms.push(Morphism { name, src: s.unwrap_or(ObjId(usize::MAX)), tgt: t.unwrap_or(ObjId(usize::MAX)) });
    }
    let by_name: HashMap<&str, MorphId> =
        morphisms.iter().enumerate().map(|(k, m)| (m.name.as_str(), MorphId(k))).collect();
    let identities: Vec<MorphId> = id_names.iter().map(|n| by_name[n.as_str()]).collect();

    let n = morphisms.len();
    let mut table: Vec<Option<MorphId>> = vec![None; n * n];
    let mut given = vec![false; n * n];
    for (k, ComposeEntry(g, f, r)) in data.compose.iter().enumerate() {
        let lookup = |name: &String, issues: &mut Vec<Issue>| {
            let found = by_name.get(name.as_str()).copied();
            if found.is_none() {
                issues.push(Issue::UnknownMorphism { entry: k, name: name.clone() });
            }
            found
        };
        let (Some(gi), Some(fi), Some(ri)) = (lookup(g, issues), lookup(f, issues), lookup(r, issues)) else {
            continue;
        };
        let (gm, fm, rm) = (&morphisms[gi.0], &morphisms[fi.0], &morphisms[ri.0]);
        if fm.tgt != gm.src {
            issues.push(Issue::NotComposable { g: g.clone(), f: f.clone() });
            continue;
        }
        if given[gi.0 * n + fi.0] {
            issues.push(Issue::DuplicateComposite { g: g.clone(), f: f.clone() });
            continue;
        }
        if rm.src != fm.src || rm.tgt != gm.tgt {
            issues.push(Issue::CompositeTyping { g: g.clone(), f: f.clone(), result: r.clone() });
        }
        given[gi.0 * n + fi.0] = true;
        table[gi.0 * n + fi.0] = Some(ri);
    }

    // Composites with an identity may be omitted.
    for (k, m) in morphisms.iter().enumerate() {
        if m.src.0 >= objects.len() || m.tgt.0 >= objects.len() {
            continue;
        }
        let left = identities[m.tgt.0].0 * n + k;
        let right = k * n + identities[m.src.0].0;
        if table[left].is_none() {
            table[left] = Some(MorphId(k));
        }
        if table[right].is_none() {
            table[right] = Some(MorphId(k));
        }
    }

    Resolved { objects, morphisms, identities, table }
}

fn check_laws(r: &Resolved, issues: &mut Vec<Issue>) {
    let n = r.morphisms.len();
    let name = |m: usize| r.morphisms[m].name.clone();
    let composable = |g: usize, f: usize| r.morphisms[f].tgt == r.morphisms[g].src;
    let mut total = true;
    for g in 0..n {
        for f in 0..n {
            if composable(g, f) && r.table[g * n + f].is_none() {
                issues.push(Issue::MissingComposite { g: name(g), f: name(f) });
                total = false;
            }
        }
    }
    for (k, m) in r.morphisms.iter().enumerate() {
        let id_t = r.identities[m.tgt.0].0;
        let id_s = r.identities[m.src.0].0;
        if r.table[id_t * n + k] != Some(MorphId(k)) {
            issues.push(Issue::LeftUnit { f: name(k) });
        }
        if r.table[k * n + id_s] != Some(MorphId(k)) {
            issues.push(Issue::RightUnit { f: name(k) });
        }
    }
    if !total {
        return;
    }
    for f in 0..n {
        for g in (0..n).filter(|&g| composable(g, f)) {
            let gf = r.table[g * n + f].unwrap().0;
            for h in (0..n).filter(|&h| composable(h, g)) {
                let hg = r.table[h * n + g].unwrap().0;
                // Only meaningful when the intermediate composites are well typed.
                if !composable(h, gf) || !composable(hg, f) {
                    continue;
                }
                if r.table[h * n + gf] != r.table[hg * n + f] {
                    issues.push(Issue::Associativity { h: name(h), g: name(g), f: name(f) });
                }
            }
        }
    }
}

/// Lists every structural and law violation in `data`; empty iff it describes a category.
pub fn validate_category(data: &CategoryData) -> ValidationReport {
    let (_, report) = resolve_and_check(data);
    report
}

impl Issue {
    /// Issues after which the composition table cannot be indexed meaningfully.
    fn is_fatal(&self) -> bool {
        !matches!(self, Issue::DuplicateComposite { .. } | Issue::NotComposable { .. } | Issue::CompositeTyping { .. })
    }
}

fn resolve_and_check(data: &CategoryData) -> (Resolved, ValidationReport) {
    let mut issues = Vec::new();
    let resolved = resolve(data, &mut issues);
    if resolved.morphisms.len() > MAX_MORPHISMS {
        issues.push(Issue::TooManyMorphisms(resolved.morphisms.len()));
    }
    if !issues.iter().any(Issue::is_fatal) {
        check_laws(&resolved, &mut issues);
    }
    (resolved, ValidationReport { issues })
}

impl FinCat {
    pub fn new(data: &CategoryData) -> Result<FinCat, ValidationReport> {
        let (resolved, report) = resolve_and_check(data);
        if !report.is_empty() {
            return Err(report);
        }
        Ok(FinCat::from_resolved(resolved))
    }

    fn from_resolved(r: Resolved) -> FinCat {
        let k = r.objects.len();
        let mut homs = vec![Vec::new(); k * k];
        for (i, m) in r.morphisms.iter().enumerate() {
            homs[m.src.0 * k + m.tgt.0].push(MorphId(i));
        }
        FinCat {
            objects: r.objects,
            morphisms: r.morphisms,
            identities: r.identities,
            table: r.table,
            homs,
            tables: OnceLock::new(),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphId> + '_ {
        (0..self.morphisms.len()).map(MorphId)
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0]
    }

    pub fn name(&self, m: MorphId) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorphId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorphId)
    }

    pub fn src(&self, m: MorphId) -> ObjId {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: MorphId) -> ObjId {
        self.morphisms[m.0].tgt
    }

    pub fn id(&self, o: ObjId) -> MorphId {
        self.identities[o.0]
    }

    pub fn is_identity(&self, m: MorphId) -> bool {
        self.identities[self.src(m).0] == m
    }

    /// `g∘f`, or `None` when `target(f) ≠ source(g)`.
    pub fn compose(&self, g: MorphId, f: MorphId) -> Option<MorphId> {
        self.table[g.0 * self.morphisms.len() + f.0]
    }

    /// `g∘f` for a pair known to be composable.
    ///
    /// # Panics
    /// If the pair is not composable.
    pub fn comp(&self, g: MorphId, f: MorphId) -> MorphId {
        self.compose(g, f).unwrap_or_else(|| panic!("{}∘{} is not composable", self.name(g), self.name(f)))
    }

    /// Composes a path given in diagrammatic order reversed: `comp_all(&[h, g, f]) = h∘g∘f`.
    pub fn comp_all(&self, path: &[MorphId]) -> MorphId {
        let (&last, rest) = path.split_last().expect("empty path");
        rest.iter().rev().fold(last, |acc, &m| self.comp(m, acc))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorphId] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn is_iso(&self, f: MorphId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: MorphId) -> Option<MorphId> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a).iter().copied().find(|&g| self.comp(g, f) == self.id(a) && self.comp(f, g) == self.id(b))
    }

    /// Same objects and morphism ids with every arrow reversed.
    pub fn opposite(&self) -> FinCat {
        let n = self.morphisms.len();
        let morphisms: Vec<Morphism> =
            self.morphisms.iter().map(|m| Morphism { name: m.name.clone(), src: m.tgt, tgt: m.src }).collect();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                // g ∘op f = f ∘ g
                table[g * n + f] = self.table[f * n + g];
            }
        }
        FinCat::from_resolved(Resolved {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            table,
        })
    }

    /// Re-runs the law checks; always empty for a constructed `FinCat`.
    pub fn validate(&self) -> ValidationReport {
        let resolved = Resolved {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            table: self.table.clone(),
        };
        let mut issues = Vec::new();
        check_laws(&resolved, &mut issues);
        ValidationReport { issues }
    }

    pub fn to_data(&self) -> CategoryData {
        let n = self.morphisms.len();
        let mut compose = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(r) = self.table[g * n + f] {
                    compose.push(ComposeEntry(
                        self.morphisms[g].name.clone(),
                        self.morphisms[f].name.clone(),
                        self.morphisms[r.0].name.clone(),
                    ));
                }
            }
        }
        CategoryData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismData {
                    name: m.name.clone(),
                    src: self.objects[m.src.0].clone(),
                    tgt: self.objects[m.tgt.0].clone(),
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .zip(&self.identities)
                .map(|(o, &i)| (o.clone(), self.morphisms[i.0].name.clone()))
                .collect::<BTreeMap<_, _>>(),
            compose,
        }
    }

    pub(crate) fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| Tables::build(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn arrow_with(extra: Vec<ComposeEntry>) -> CategoryData {
        let mut d = CategoryData { objects: vec!["0".into(), "1".into()], ..Default::default() };
        d.identities.insert("0".into(), "id0".into());
        d.identities.insert("1".into(), "id1".into());
        d.morphisms.push(MorphismData { name: "f".into(), src: "0".into(), tgt: "1".into() });
        d.compose = extra;
        d
    }

    #[test]
    fn point_and_arrow_are_valid() {
        assert!(validate_category(&fixtures::pt().to_data()).is_empty());
        assert!(validate_category(&arrow_with(vec![])).is_empty());
        let arrow = FinCat::new(&arrow_with(vec![])).unwrap();
        assert_eq!(arrow.morphism_count(), 3);
        let names: Vec<&str> = arrow.morphisms().map(|m| arrow.name(m)).collect();
        assert_eq!(names, ["id0", "id1", "f"]);
    }

    #[test]
    fn wrong_unit_composite_is_reported_at_f() {
        let bad = arrow_with(vec![ComposeEntry("f".into(), "id0".into(), "id1".into())]);
        let report = validate_category(&bad);
        assert!(report.issues.contains(&Issue::RightUnit { f: "f".into() }), "{report}");
        assert!(FinCat::new(&bad).is_err());
    }

    #[test]
    fn dangling_and_duplicate_names_are_reported() {
        let mut d = arrow_with(vec![]);
        d.morphisms.push(MorphismData { name: "g".into(), src: "0".into(), tgt: "nowhere".into() });
        d.morphisms.push(MorphismData { name: "f".into(), src: "0".into(), tgt: "1".into() });
        d.compose.push(ComposeEntry("h".into(), "f".into(), "f".into()));
        let issues = validate_category(&d).issues;
        assert!(issues.contains(&Issue::UnknownObject { morphism: "g".into(), object: "nowhere".into() }));
        assert!(issues.contains(&Issue::DuplicateMorphism("f".into())));
        assert!(issues.contains(&Issue::UnknownMorphism { entry: 0, name: "h".into() }));
    }

    #[test]
    fn missing_composite_and_bad_associativity() {
        // a two-element monoid {1, x} with x∘x left unspecified
        let mut d = CategoryData { objects: vec!["*".into()], ..Default::default() };
        d.morphisms.push(MorphismData { name: "x".into(), src: "*".into(), tgt: "*".into() });
        let issues = validate_category(&d).issues;
        assert_eq!(issues, vec![Issue::MissingComposite { g: "x".into(), f: "x".into() }]);

        // three-element monoid table that is not associative: x∘x = y, x∘y = x, y∘x = y, y∘y = x
        d.morphisms.push(MorphismData { name: "y".into(), src: "*".into(), tgt: "*".into() });
        d.compose = vec![
            ComposeEntry("x".into(), "x".into(), "y".into()),
            ComposeEntry("x".into(), "y".into(), "x".into()),
            ComposeEntry("y".into(), "x".into(), "y".into()),
            ComposeEntry("y".into(), "y".into(), "x".into()),
        ];
        let issues = validate_category(&d).issues;
        assert!(issues.iter().any(|i| matches!(i, Issue::Associativity { .. })), "{issues:?}");
    }

    #[test]
    fn iso_detection() {
        let arrow = fixtures::arrow();
        for o in arrow.objects() {
            assert!(arrow.is_iso(arrow.id(o)));
        }
        assert!(!arrow.is_iso(arrow.morphism_by_name("f").unwrap()));
        let ret = fixtures::retract();
        let s = ret.morphism_by_name("s").unwrap();
        // oracle: scan hom(B, A) for a two-sided inverse
        let (a, b) = (ret.src(s), ret.tgt(s));
        let brute = ret
            .morphisms()
            .filter(|&g| ret.src(g) == b && ret.tgt(g) == a)
            .any(|g| ret.compose(g, s) == Some(ret.id(a)) && ret.compose(s, g) == Some(ret.id(b)));
        assert!(!brute);
        assert!(!ret.is_iso(s));
    }

    #[test]
    fn opposite_reverses_and_is_involutive() {
        let arrow = fixtures::arrow();
        let op = arrow.opposite();
        let f = arrow.morphism_by_name("f").unwrap();
        assert_eq!(op.src(f), arrow.tgt(f));
        assert_eq!(op.tgt(f), arrow.src(f));
        assert!(op.validate().is_empty());
        assert_eq!(op.opposite(), arrow);
        assert_eq!(fixtures::pt().opposite(), fixtures::pt());
    }

    #[test]
    fn comp_all_composes_right_to_left() {
        let c = fixtures::chain2();
        let a = c.morphism_by_name("a").unwrap();
        let b = c.morphism_by_name("b").unwrap();
        let ba = c.morphism_by_name("ba").unwrap();
        assert_eq!(c.comp_all(&[b, a]), ba);
        assert_eq!(c.comp_all(&[a]), a);
    }
}

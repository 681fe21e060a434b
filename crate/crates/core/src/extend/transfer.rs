//! Properness, classification of one structure against another, and the
//! closure properties that pass from a base structure to an ℓℓ-extension.

use serde::Serialize;

use crate::fincat::FinCat;
use crate::modelstruct::{cofibrant_objects, fibrant_objects, Classes, ModelStructure};
use crate::morphclass::{commuting_squares, CheckResult, MorphClass, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Left: pushouts of W-maps along C-maps stay in W. Right: pullbacks of
/// W-maps along F-maps stay in W. Spans without a pushout are skipped.
pub fn check_properness(cat: &FinCat, classes: &Classes, side: Side) -> CheckResult {
    let t = cat.tables();
    let w = match side {
        Side::Left => t
            .pushouts
            .iter()
            .find(|p| classes.weq.contains(p.map) && classes.cof.contains(p.along) && !classes.weq.contains(p.result))
            .map(|p| Witness::Pushout { map: p.map, along: p.along, result: p.result }),
        Side::Right => t
            .pullbacks
            .iter()
            .find(|p| classes.weq.contains(p.map) && classes.fib.contains(p.along) && !classes.weq.contains(p.result))
            .map(|p| Witness::Pullback { map: p.map, along: p.along, result: p.result }),
    };
    CheckResult::from_witness(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    Equal,
    Ll,
    Lm,
    Ml,
    Mm,
    Other,
}

impl ExtensionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtensionKind::Equal => "equal",
            ExtensionKind::Ll => "ll",
            ExtensionKind::Lm => "lm",
            ExtensionKind::Ml => "ml",
            ExtensionKind::Mm => "mm",
            ExtensionKind::Other => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionClass {
    pub kind: ExtensionKind,
    /// ℓℓ with unchanged cofibrations.
    pub left_bousfield: bool,
    /// ℓℓ with unchanged fibrations.
    pub right_bousfield: bool,
    /// W is strictly smaller than W_g.
    pub proper_w: bool,
}

/// Compares `ext` against `base`. Containments are non-strict: W ⊆ W_g is
/// required for every kind except `equal` and `other`; `l` means the class
/// shrank (or stayed), `m` that it grew. Ties go to `l`.
pub fn classify_extension(base: &ModelStructure, ext: &ModelStructure) -> ExtensionClass {
    let (b, e) = (&base.classes, &ext.classes);
    let proper_w = b.weq.is_subset(e.weq) && b.weq != e.weq;
    let side = |base: MorphClass, ext: MorphClass| -> Option<bool> {
        if ext.is_subset(base) {
            Some(true)
        } else if base.is_subset(ext) {
            Some(false)
        } else {
            None
        }
    };
    let kind = if b == e {
        ExtensionKind::Equal
    } else if !b.weq.is_subset(e.weq) {
        ExtensionKind::Other
    } else {
        match (side(b.cof, e.cof), side(b.fib, e.fib)) {
            (Some(true), Some(true)) => ExtensionKind::Ll,
            (Some(true), Some(false)) => ExtensionKind::Lm,
            (Some(false), Some(true)) => ExtensionKind::Ml,
            (Some(false), Some(false)) => ExtensionKind::Mm,
            _ => ExtensionKind::Other,
        }
    };
    let ll = kind == ExtensionKind::Ll;
    ExtensionClass { kind, left_bousfield: ll && e.cof == b.cof, right_bousfield: ll && e.fib == b.fib, proper_w }
}

/// `sub` is invariant in `sup` under `weq`: for every commuting square with
/// horizontal maps in `weq` and vertical maps `f`, `g` in `sup`,
/// `f ∈ sub` iff `g ∈ sub`. The witness square has `left = f`, `right = g`.
pub fn check_invariance(cat: &FinCat, sub: MorphClass, sup: MorphClass, weq: MorphClass) -> CheckResult {
    for f in sup.iter() {
        for g in sup.iter() {
            if sub.contains(f) == sub.contains(g) {
                continue;
            }
            if let Some(sq) = commuting_squares(cat, f, g).find(|sq| weq.contains(sq.top) && weq.contains(sq.bottom)) {
                return CheckResult::Fail(Witness::Square(sq));
            }
        }
    }
    CheckResult::Pass
}

/// Triangle closure between a base and an extension.
///
/// Left side: `f = g∘h` with `f ∈ F`, `g ∈ F_g`, `h ∈ W` forces `f ∈ F_g`;
/// when the base is left proper and C_g is invariant in C under W, also
/// `f ∈ F_g`, `g ∈ F` forces `g ∈ F_g`.
/// Right side: `g = h∘f` with `f ∈ C_g`, `g ∈ C`, `h ∈ W` forces `g ∈ C_g`;
/// when the base is right proper and F_g is invariant in F under W, also
/// `g ∈ C_g`, `f ∈ C` forces `f ∈ C_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleReport {
    pub direct: CheckResult,
    /// `None` when the hypotheses of the converse do not hold.
    pub converse: Option<CheckResult>,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.direct.passed() && self.converse.as_ref().is_none_or(CheckResult::passed)
    }
}

pub fn check_triangle_closure(cat: &FinCat, base: &Classes, ext: &Classes, side: Side) -> TriangleReport {
    let t = cat.tables();
    // composable entries are (first, second, second∘first)
    let find = |pred: &dyn Fn(_, _, _) -> Option<_>| {
        CheckResult::from_witness(t.composable.iter().find_map(|&(a, b, c)| pred(a, b, c)))
    };
    match side {
        Side::Left => {
            let direct = find(&|h, g, f| {
                (base.weq.contains(h) && ext.fib.contains(g) && base.fib.contains(f) && !ext.fib.contains(f))
                    .then_some(Witness::Triangle { first: h, second: g, composite: f, culprit: f })
            });
            let applies = check_properness(cat, base, Side::Left).passed()
                && check_invariance(cat, ext.cof, base.cof, base.weq).passed();
            let converse = applies.then(|| {
                find(&|h, g, f| {
                    (base.weq.contains(h) && base.fib.contains(g) && ext.fib.contains(f) && !ext.fib.contains(g))
                        .then_some(Witness::Triangle { first: h, second: g, composite: f, culprit: g })
                })
            });
            TriangleReport { direct, converse }
        }
        Side::Right => {
            let direct = find(&|f, h, g| {
                (base.weq.contains(h) && ext.cof.contains(f) && base.cof.contains(g) && !ext.cof.contains(g))
                    .then_some(Witness::Triangle { first: f, second: h, composite: g, culprit: g })
            });
            let applies = check_properness(cat, base, Side::Right).passed()
                && check_invariance(cat, ext.fib, base.fib, base.weq).passed();
            let converse = applies.then(|| {
                find(&|f, h, g| {
                    (base.weq.contains(h) && base.cof.contains(f) && ext.cof.contains(g) && !ext.cof.contains(f))
                        .then_some(Witness::Triangle { first: f, second: h, composite: g, culprit: f })
                })
            });
            TriangleReport { direct, converse }
        }
    }
}

/// Properness of the extension on one side, provided the base is proper on
/// that side and the cofibrant (fibrant) objects of the two coincide.
/// `None` when those hypotheses fail.
pub fn check_properness_transfer(cat: &FinCat, base: &Classes, ext: &Classes, side: Side) -> Option<CheckResult> {
    if !check_properness(cat, base, side).passed() {
        return None;
    }
    let same = match side {
        Side::Left => cofibrant_objects(cat, base.cof).ok()? == cofibrant_objects(cat, ext.cof).ok()?,
        Side::Right => fibrant_objects(cat, base.fib).ok()? == fibrant_objects(cat, ext.fib).ok()?,
    };
    same.then(|| check_properness(cat, ext, side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modelstruct::{minimal_model_structure, ModelStructure};

    #[test]
    fn minimal_is_proper() {
        for cat in [fixtures::pt(), fixtures::arrow(), fixtures::diamond(), fixtures::boolean3()] {
            let m = Classes::minimal(&cat);
            assert!(check_properness(&cat, &m, Side::Left).passed());
            assert!(check_properness(&cat, &m, Side::Right).passed());
        }
    }

    #[test]
    fn classification_basics() {
        let a = fixtures::arrow();
        let base = minimal_model_structure(&a).unwrap();
        assert_eq!(classify_extension(&base, &base).kind, ExtensionKind::Equal);
        let all = MorphClass::all(&a);
        let ids = MorphClass::identities(&a);
        // W = everything, C = everything, F = identities
        let ext = ModelStructure::new(&a, Classes::new(all, all, ids)).unwrap();
        let c = classify_extension(&base, &ext);
        assert_eq!(c.kind, ExtensionKind::Ll);
        assert!(c.left_bousfield && !c.right_bousfield && c.proper_w);
        let back = classify_extension(&ext, &base);
        assert_eq!(back.kind, ExtensionKind::Other);
    }

    #[test]
    fn invariance_basics() {
        let d = fixtures::diamond();
        let all = MorphClass::all(&d);
        let isos = MorphClass::isos(&d);
        assert!(check_invariance(&d, all, all, all).passed());
        assert!(check_invariance(&d, MorphClass::EMPTY, all, all).passed());
        // with W = isos (identities in a poset), squares force f = g
        let a_top = MorphClass::from_ids([d.morphism_by_name("a_top").unwrap()]);
        assert!(check_invariance(&d, a_top, all, isos).passed());
        // with W = all, the square from a_top to id_top (top = a_top, bottom = id) separates them
        assert!(!check_invariance(&d, a_top, all, all).passed());
    }

    #[test]
    fn triangle_closure_on_trivial_pair() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        let r = check_triangle_closure(&d, &m, &m, Side::Left);
        assert!(r.passed());
        assert!(r.converse.is_some());
        assert_eq!(check_properness_transfer(&d, &m, &m, Side::Left), Some(CheckResult::Pass));
    }
}

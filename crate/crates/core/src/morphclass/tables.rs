//! Per-category lookup tables behind every class-level check.
//!
//! Built once per [`FinCat`] on first use. All entries are derived by
//! exhaustive enumeration, so a class check reduces to bit operations over
//! these lists.

use crate::fincat::{FinCat, MorphId, ObjId};

use super::witness::{RetractDiagram, Square};
use super::{find_lift, MorphClass};

/// The pushout (or pullback) of `map` along `along` is `result`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Transport {
    pub map: MorphId,
    pub along: MorphId,
    pub result: MorphId,
}

#[derive(Debug)]
pub(crate) struct Tables {
    pub identities: MorphClass,
    pub isos: MorphClass,
    /// `(first, second, second∘first)`, ordered by `(first, second)`.
    pub composable: Vec<(MorphId, MorphId, MorphId)>,
    /// Least retract diagram for each pair `(f, g)` with `f` a retract of `g`.
    pub retracts: Vec<RetractDiagram>,
    /// `retracts_of[g]` = every `f` that is a retract of `g`.
    pub retracts_of: Vec<MorphClass>,
    /// `lifts[i]` = every `p` such that each square from `i` to `p` has a lift.
    pub lifts: Vec<MorphClass>,
    /// `lifted_by[p]` = every `i` with `p ∈ lifts[i]`.
    pub lifted_by: Vec<MorphClass>,
    /// All `(middle, j, p)` with `p∘j = f`, indexed by `f`.
    pub factorizations: Vec<Vec<(ObjId, MorphId, MorphId)>>,
    /// Canonical pushouts over every span that has one, ordered by `(map, along)`.
    pub pushouts: Vec<Transport>,
    /// Canonical pullbacks over every cospan that has one.
    pub pullbacks: Vec<Transport>,
}

impl Tables {
    pub fn build(cat: &FinCat) -> Tables {
        let n = cat.morphism_count();
        let identities = MorphClass::from_ids(cat.objects().map(|o| cat.id(o)));
        let isos = MorphClass::from_ids(cat.morphisms().filter(|&m| cat.is_iso(m)));

        let mut composable = Vec::new();
        for f in cat.morphisms() {
            for g in cat.morphisms() {
                if let Some(gf) = cat.compose(g, f) {
                    composable.push((f, g, gf));
                }
            }
        }

        let mut retracts = Vec::new();
        let mut retracts_of = vec![MorphClass::EMPTY; n];
        for f in cat.morphisms() {
            for g in cat.morphisms() {
                if let Some(d) = least_retract(cat, f, g) {
                    retracts.push(d);
                    retracts_of[g.0].insert(f);
                }
            }
        }

        let mut lifts = vec![MorphClass::EMPTY; n];
        let mut lifted_by = vec![MorphClass::EMPTY; n];
        for i in cat.morphisms() {
            for p in cat.morphisms() {
                if squares(cat, i, p).all(|sq| find_lift(cat, &sq).is_some()) {
                    lifts[i.0].insert(p);
                    lifted_by[p.0].insert(i);
                }
            }
        }

        let mut factorizations = vec![Vec::new(); n];
        for f in cat.morphisms() {
            let (a, b) = (cat.src(f), cat.tgt(f));
            for z in cat.objects() {
                for &j in cat.hom(a, z) {
                    for &p in cat.hom(z, b) {
                        if cat.comp(p, j) == f {
                            factorizations[f.0].push((z, j, p));
                        }
                    }
                }
            }
        }

        let mut pushouts = Vec::new();
        let mut pullbacks = Vec::new();
        for map in cat.morphisms() {
            for along in cat.morphisms() {
                if cat.src(map) == cat.src(along) {
                    if let Ok(u) = cat.pushout(map, along) {
                        pushouts.push(Transport { map, along, result: u.opposite_leg() });
                    }
                }
                if cat.tgt(map) == cat.tgt(along) {
                    if let Ok(u) = cat.pullback(map, along) {
                        pullbacks.push(Transport { map, along, result: u.opposite_leg() });
                    }
                }
            }
        }

        Tables {
            identities,
            isos,
            composable,
            retracts,
            retracts_of,
            lifts,
            lifted_by,
            factorizations,
            pushouts,
            pullbacks,
        }
    }
}

/// Every commuting square with `left = i` and `right = p`, in `(top, bottom)` order.
pub fn squares(cat: &FinCat, i: MorphId, p: MorphId) -> impl Iterator<Item = Square> + '_ {
    let tops = cat.hom(cat.src(i), cat.src(p));
    let bottoms = cat.hom(cat.tgt(i), cat.tgt(p));
    tops.iter()
        .flat_map(move |&top| bottoms.iter().map(move |&bottom| (top, bottom)))
        .filter(move |&(top, bottom)| cat.comp(p, top) == cat.comp(bottom, i))
        .map(move |(top, bottom)| Square { left: i, right: p, top, bottom })
}

fn least_retract(cat: &FinCat, f: MorphId, g: MorphId) -> Option<RetractDiagram> {
    let (a, b) = (cat.src(f), cat.tgt(f));
    let (a2, b2) = (cat.src(g), cat.tgt(g));
    let sections = |x: ObjId, y: ObjId| -> Vec<(MorphId, MorphId)> {
        let mut out = Vec::new();
        for &i in cat.hom(x, y) {
            for &r in cat.hom(y, x) {
                if cat.comp(r, i) == cat.id(x) {
                    out.push((i, r));
                }
            }
        }
        out
    };
    let src_pairs = sections(a, a2);
    let tgt_pairs = sections(b, b2);
    for &(i_src, r_src) in &src_pairs {
        for &(i_tgt, r_tgt) in &tgt_pairs {
            if cat.comp(g, i_src) == cat.comp(i_tgt, f) && cat.comp(f, r_src) == cat.comp(r_tgt, g) {
                return Some(RetractDiagram { f, g, i_src, r_src, i_tgt, r_tgt });
            }
        }
    }
    None
}

//! Classes of morphisms and the decision procedures built on them: closure
//! conditions, lifting properties, and factorizations.

use std::fmt;
use std::ops::{BitAnd, BitOr};

use crate::fincat::{FinCat, MorphId, ObjId};

pub mod io;
pub(crate) mod tables;
pub mod witness;

pub use io::{parse_classes, ClassError, ClassFile, ResolvedClasses};
pub use tables::squares as commuting_squares;
pub use witness::{CheckResult, RetractDiagram, Square, SquareLiftProblem, Witness};

/// A set of morphism ids, stored as a 128-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphClass(u128);

impl MorphClass {
    pub const EMPTY: MorphClass = MorphClass(0);

    pub fn from_bits(bits: u128) -> MorphClass {
        MorphClass(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn all(cat: &FinCat) -> MorphClass {
        let n = cat.morphism_count();
        MorphClass(if n == 128 { u128::MAX } else { (1u128 << n) - 1 })
    }

    pub fn identities(cat: &FinCat) -> MorphClass {
        cat.tables().identities
    }

    pub fn isos(cat: &FinCat) -> MorphClass {
        cat.tables().isos
    }

    pub fn from_ids(ids: impl IntoIterator<Item = MorphId>) -> MorphClass {
        let mut c = MorphClass::EMPTY;
        for m in ids {
            c.insert(m);
        }
        c
    }

    pub fn contains(self, m: MorphId) -> bool {
        self.0 >> m.0 & 1 == 1
    }

    pub fn insert(&mut self, m: MorphId) {
        self.0 |= 1 << m.0;
    }

    pub fn with(mut self, m: MorphId) -> MorphClass {
        self.insert(m);
        self
    }

    pub fn union(self, other: MorphClass) -> MorphClass {
        MorphClass(self.0 | other.0)
    }

    pub fn intersection(self, other: MorphClass) -> MorphClass {
        MorphClass(self.0 & other.0)
    }

    pub fn difference(self, other: MorphClass) -> MorphClass {
        MorphClass(self.0 & !other.0)
    }

    pub fn complement(self, cat: &FinCat) -> MorphClass {
        MorphClass::all(cat).difference(self)
    }

    pub fn is_subset(self, other: MorphClass) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = MorphId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(MorphId(k))
        })
    }

    pub fn names(self, cat: &FinCat) -> Vec<String> {
        self.iter().map(|m| cat.name(m).to_string()).collect()
    }
}

impl BitAnd for MorphClass {
    type Output = MorphClass;
    fn bitand(self, rhs: MorphClass) -> MorphClass {
        self.intersection(rhs)
    }
}

impl BitOr for MorphClass {
    type Output = MorphClass;
    fn bitor(self, rhs: MorphClass) -> MorphClass {
        self.union(rhs)
    }
}

impl fmt::Debug for MorphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|m| m.0)).finish()
    }
}

/// Every subset of `mask`, starting from the empty set.
pub fn subsets(mask: MorphClass) -> impl Iterator<Item = MorphClass> {
    let m = mask.0;
    let mut next = Some(0u128);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
        Some(MorphClass(cur))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Retracts,
    Composition,
    Pushouts,
    Pullbacks,
    TwoOfThree,
}

/// Checks a closure property; the witness is the least offending instance.
///
/// Spans without a pushout (cospans without a pullback) are skipped.
pub fn closure_check(cat: &FinCat, class: MorphClass, property: Closure) -> CheckResult {
    let t = cat.tables();
    let w = match property {
        Closure::TwoOfThree => t.composable.iter().find_map(|&(first, second, composite)| {
            let inside = [first, second, composite].iter().filter(|&&m| class.contains(m)).count();
            (inside == 2).then_some(Witness::TwoOfThree { first, second, composite })
        }),
        Closure::Composition => t.composable.iter().find_map(|&(first, second, composite)| {
            (class.contains(first) && class.contains(second) && !class.contains(composite))
                .then_some(Witness::Composition { first, second, composite })
        }),
        Closure::Retracts => {
            t.retracts.iter().find(|d| class.contains(d.g) && !class.contains(d.f)).map(|d| Witness::Retract(*d))
        }
        Closure::Pushouts => t
            .pushouts
            .iter()
            .find(|p| class.contains(p.map) && !class.contains(p.result))
            .map(|p| Witness::Pushout { map: p.map, along: p.along, result: p.result }),
        Closure::Pullbacks => t
            .pullbacks
            .iter()
            .find(|p| class.contains(p.map) && !class.contains(p.result))
            .map(|p| Witness::Pullback { map: p.map, along: p.along, result: p.result }),
    };
    CheckResult::from_witness(w)
}

/// Fast boolean form of [`closure_check`] for retracts.
pub fn retract_closed(cat: &FinCat, class: MorphClass) -> bool {
    let t = cat.tables();
    class.iter().all(|g| t.retracts_of[g.0].is_subset(class))
}

/// A diagonal filler, least by morphism id, found by scanning `hom(B, X)`.
pub fn find_lift(cat: &FinCat, problem: &SquareLiftProblem) -> Option<MorphId> {
    let b = cat.tgt(problem.left);
    let x = cat.src(problem.right);
    cat.hom(b, x).iter().copied().find(|&h| problem.is_lift(cat, h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftSide {
    /// Maps with the left lifting property against the class.
    Llp,
    /// Maps with the right lifting property against the class.
    Rlp,
}

pub fn lifting_closure(cat: &FinCat, class: MorphClass, side: LiftSide) -> MorphClass {
    let t = cat.tables();
    let rows = match side {
        LiftSide::Rlp => &t.lifts,
        LiftSide::Llp => &t.lifted_by,
    };
    class.iter().fold(MorphClass::all(cat), |acc, m| acc & rows[m.0])
}

pub fn rlp(cat: &FinCat, class: MorphClass) -> MorphClass {
    lifting_closure(cat, class, LiftSide::Rlp)
}

pub fn llp(cat: &FinCat, class: MorphClass) -> MorphClass {
    lifting_closure(cat, class, LiftSide::Llp)
}

/// Every commuting square with left leg in `left` and right leg in `right` has a lift.
pub fn has_lifting(cat: &FinCat, left: MorphClass, right: MorphClass) -> CheckResult {
    let t = cat.tables();
    for i in left.iter() {
        if let Some(p) = right.difference(t.lifts[i.0]).iter().next() {
            let sq = tables::squares(cat, i, p)
                .find(|sq| find_lift(cat, sq).is_none())
                .expect("lift table disagrees with square scan");
            return CheckResult::Fail(Witness::Square(sq));
        }
    }
    CheckResult::Pass
}

/// Boolean form of [`has_lifting`].
pub fn lifts_against(cat: &FinCat, left: MorphClass, right: MorphClass) -> bool {
    let t = cat.tables();
    left.iter().all(|i| right.is_subset(t.lifts[i.0]))
}

/// `f = right ∘ left` through `middle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorization {
    pub f: MorphId,
    pub left: MorphId,
    pub middle: ObjId,
    pub right: MorphId,
}

/// All factorizations of `f` with `left` part in `left` and `right` part in
/// `right`, ordered by (middle object, left id, right id).
pub fn enumerate_factorizations(cat: &FinCat, f: MorphId, left: MorphClass, right: MorphClass) -> Vec<Factorization> {
    cat.tables().factorizations[f.0]
        .iter()
        .filter(|(_, j, p)| left.contains(*j) && right.contains(*p))
        .map(|&(middle, j, p)| Factorization { f, left: j, middle, right: p })
        .collect()
}

pub fn first_factorization(cat: &FinCat, f: MorphId, left: MorphClass, right: MorphClass) -> Option<Factorization> {
    cat.tables().factorizations[f.0]
        .iter()
        .find(|(_, j, p)| left.contains(*j) && right.contains(*p))
        .map(|&(middle, j, p)| Factorization { f, left: j, middle, right: p })
}

/// Every morphism factors as a `left` map followed by a `right` map.
pub fn factorization_check(cat: &FinCat, left: MorphClass, right: MorphClass) -> CheckResult {
    let missing = cat.morphisms().find(|&f| first_factorization(cat, f, left, right).is_none());
    CheckResult::from_witness(missing.map(Witness::Unfactorable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn m(cat: &FinCat, name: &str) -> MorphId {
        cat.morphism_by_name(name).unwrap()
    }

    #[test]
    fn total_class_is_closed_under_everything() {
        let d = fixtures::diamond();
        let all = MorphClass::all(&d);
        for p in [Closure::Retracts, Closure::Composition, Closure::Pushouts, Closure::Pullbacks, Closure::TwoOfThree] {
            assert!(closure_check(&d, all, p).passed(), "{p:?}");
        }
    }

    #[test]
    fn retract_closure_in_retract_fixture() {
        let ret = fixtures::retract();
        let ids = MorphClass::identities(&ret);
        // retracts of identities are isomorphisms, and the only isos of Ret are identities
        assert!(closure_check(&ret, ids, Closure::Retracts).passed());
        let with_e = ids.with(m(&ret, "e"));
        let expected = RetractDiagram {
            f: m(&ret, "s"),
            g: m(&ret, "e"),
            i_src: m(&ret, "s"),
            r_src: m(&ret, "r"),
            i_tgt: m(&ret, "id_B"),
            r_tgt: m(&ret, "id_B"),
        };
        assert_eq!(closure_check(&ret, with_e, Closure::Retracts), CheckResult::Fail(Witness::Retract(expected)));
    }

    #[test]
    fn identities_have_two_of_three_in_arrow() {
        let a = fixtures::arrow();
        assert!(closure_check(&a, MorphClass::identities(&a), Closure::TwoOfThree).passed());
        let just_id0 = MorphClass::from_ids([m(&a, "id0")]);
        assert!(closure_check(&a, just_id0, Closure::TwoOfThree).passed());
    }

    #[test]
    fn forced_lifts() {
        let a = fixtures::arrow();
        let (f, id0, id1) = (m(&a, "f"), m(&a, "id0"), m(&a, "id1"));
        // identity on the left: the lift is the top map
        let sq = Square::new(&a, id0, f, id0, f).unwrap();
        assert_eq!(find_lift(&a, &sq), Some(id0));
        // identity on the right: the lift is the bottom map
        let sq = Square::new(&a, f, id1, f, id1).unwrap();
        assert_eq!(find_lift(&a, &sq), Some(id1));
        // f against f: hom(1, 0) is empty
        let sq = Square::new(&a, f, f, id0, id1).unwrap();
        assert_eq!(find_lift(&a, &sq), None);
        assert!(Square::new(&a, f, f, id1, id1).is_none());
    }

    #[test]
    fn rlp_of_f_in_arrow() {
        let a = fixtures::arrow();
        let f = m(&a, "f");
        assert_eq!(rlp(&a, MorphClass::EMPTY), MorphClass::all(&a));
        // oracle: enumerate squares for each candidate p
        let oracle = MorphClass::from_ids(
            a.morphisms().filter(|&p| commuting_squares(&a, f, p).all(|sq| find_lift(&a, &sq).is_some())),
        );
        assert_eq!(oracle, MorphClass::from_ids([m(&a, "id0"), m(&a, "id1")]));
        assert_eq!(rlp(&a, MorphClass::from_ids([f])), oracle);
    }

    #[test]
    fn has_lifting_examples() {
        let a = fixtures::arrow();
        let f = MorphClass::from_ids([m(&a, "f")]);
        assert!(has_lifting(&a, MorphClass::identities(&a), MorphClass::all(&a)).passed());
        let expected = Square { left: m(&a, "f"), right: m(&a, "f"), top: m(&a, "id0"), bottom: m(&a, "id1") };
        assert_eq!(has_lifting(&a, f, f), CheckResult::Fail(Witness::Square(expected)));
        let d = fixtures::diamond();
        assert!(has_lifting(&d, MorphClass::all(&d), MorphClass::isos(&d)).passed());
    }

    #[test]
    fn factorizations_of_arrow() {
        let a = fixtures::arrow();
        let all = MorphClass::all(&a);
        let f = m(&a, "f");
        let got: Vec<(usize, MorphId, MorphId)> =
            enumerate_factorizations(&a, f, all, all).iter().map(|x| (x.middle.0, x.left, x.right)).collect();
        assert_eq!(got, vec![(0, m(&a, "id0"), f), (1, f, m(&a, "id1"))]);
        let id0 = m(&a, "id0");
        let got = enumerate_factorizations(&a, id0, MorphClass::identities(&a), MorphClass::identities(&a));
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].left, got[0].middle, got[0].right), (id0, a.src(id0), id0));
        assert!(enumerate_factorizations(&a, f, MorphClass::EMPTY, all).is_empty());
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let mask = MorphClass::from_bits(0b1011_0100);
        let subs: Vec<MorphClass> = subsets(mask).collect();
        assert_eq!(subs.len(), 16);
        assert!(subs.iter().all(|s| s.is_subset(mask)));
        let mut uniq = subs.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 16);
        assert_eq!(subsets(MorphClass::EMPTY).count(), 1);
    }
}

//! Adjunctions between finite categories and the Quillen conditions on them.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::extend::Side;
use crate::fincat::{FinCat, MorphId, ObjId};
use crate::modelstruct::{cofibrant_objects, fibrant_objects, BoundaryError, Classes};
use crate::morphclass::{first_factorization, CheckResult, MorphClass, Witness};

pub mod io;

pub use io::{parse_adjunction, AdjunctionFile, AdjunctionParseError, FunctorMaps};

/// Object and morphism maps of a functor between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorphId>,
}

impl Functor {
    pub fn identity(cat: &FinCat) -> Functor {
        Functor { objects: cat.objects().collect(), morphisms: cat.morphisms().collect() }
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.objects[x.0]
    }

    pub fn map(&self, m: MorphId) -> MorphId {
        self.morphisms[m.0]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            objects: first.objects.iter().map(|&x| self.obj(x)).collect(),
            morphisms: first.morphisms.iter().map(|&m| self.map(m)).collect(),
        }
    }

    pub fn image(&self, class: MorphClass) -> MorphClass {
        MorphClass::from_ids(class.iter().map(|m| self.map(m)))
    }
}

/// `S: M ⇄ N: T` with `S` the left adjoint. `unit[A]: A → TSA` for objects
/// of M, `counit[X]: STX → X` for objects of N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction<'a> {
    pub m: &'a FinCat,
    pub n: &'a FinCat,
    pub left: Functor,
    pub right: Functor,
    pub unit: Vec<MorphId>,
    pub counit: Vec<MorphId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjunctionIssue {
    /// A functor sends a morphism to one with the wrong ends.
    FunctorTyping {
        functor: &'static str,
        morphism: MorphId,
    },
    FunctorIdentity {
        functor: &'static str,
        object: ObjId,
    },
    FunctorComposition {
        functor: &'static str,
        g: MorphId,
        f: MorphId,
    },
    UnitTyping(ObjId),
    CounitTyping(ObjId),
    UnitNaturality(MorphId),
    CounitNaturality(MorphId),
    /// `ε_{SA}∘S(η_A) ≠ id_{SA}`.
    LeftTriangle(ObjId),
    /// `T(ε_X)∘η_{TX} ≠ id_{TX}`.
    RightTriangle(ObjId),
}

impl fmt::Display for AdjunctionIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjunctionIssue::FunctorTyping { functor, morphism } => {
                write!(f, "{functor} sends {morphism} to a map with the wrong ends")
            }
            AdjunctionIssue::FunctorIdentity { functor, object } => {
                write!(f, "{functor} does not preserve the identity of {object}")
            }
            AdjunctionIssue::FunctorComposition { functor, g, f: m } => {
                write!(f, "{functor} does not preserve {g}∘{m}")
            }
            AdjunctionIssue::UnitTyping(x) => write!(f, "unit component at {x} has the wrong ends"),
            AdjunctionIssue::CounitTyping(x) => write!(f, "counit component at {x} has the wrong ends"),
            AdjunctionIssue::UnitNaturality(m) => write!(f, "unit is not natural at {m}"),
            AdjunctionIssue::CounitNaturality(m) => write!(f, "counit is not natural at {m}"),
            AdjunctionIssue::LeftTriangle(x) => write!(f, "triangle identity fails at {x} (left adjoint side)"),
            AdjunctionIssue::RightTriangle(x) => write!(f, "triangle identity fails at {x} (right adjoint side)"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub issues: Vec<AdjunctionIssue>,
}

impl AdjunctionReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

fn functor_issues(src: &FinCat, dst: &FinCat, fun: &Functor, name: &'static str, out: &mut Vec<AdjunctionIssue>) {
    for m in src.morphisms() {
        let fm = fun.map(m);
        if dst.src(fm) != fun.obj(src.src(m)) || dst.tgt(fm) != fun.obj(src.tgt(m)) {
            out.push(AdjunctionIssue::FunctorTyping { functor: name, morphism: m });
        }
    }
    if !out.is_empty() {
        return;
    }
    for x in src.objects() {
        if fun.map(src.id(x)) != dst.id(fun.obj(x)) {
            out.push(AdjunctionIssue::FunctorIdentity { functor: name, object: x });
        }
    }
    for f in src.morphisms() {
        for g in src.morphisms() {
            if let Some(gf) = src.compose(g, f) {
                if fun.map(gf) != dst.comp(fun.map(g), fun.map(f)) {
                    out.push(AdjunctionIssue::FunctorComposition { functor: name, g, f });
                }
            }
        }
    }
}

impl<'a> Adjunction<'a> {
    pub fn identity(cat: &'a FinCat) -> Adjunction<'a> {
        let ids: Vec<MorphId> = cat.objects().map(|x| cat.id(x)).collect();
        Adjunction {
            m: cat,
            n: cat,
            left: Functor::identity(cat),
            right: Functor::identity(cat),
            unit: ids.clone(),
            counit: ids,
        }
    }

    /// `self` followed by `next`: `S'S ⊣ TT'`.
    pub fn then(&self, next: &Adjunction<'a>) -> Adjunction<'a> {
        let left = next.left.after(&self.left);
        let right = self.right.after(&next.right);
        let unit = self
            .m
            .objects()
            .map(|a| self.m.comp(self.right.map(next.unit[self.left.obj(a).0]), self.unit[a.0]))
            .collect();
        let counit = next
            .n
            .objects()
            .map(|x| next.n.comp(next.counit[x.0], next.left.map(self.counit[next.right.obj(x).0])))
            .collect();
        Adjunction { m: self.m, n: next.n, left, right, unit, counit }
    }

    /// Functor laws, naturality, and both triangle identities.
    pub fn validate(&self) -> AdjunctionReport {
        let (m, n) = (self.m, self.n);
        let mut issues = Vec::new();
        let ok_shape = self.left.objects.len() == m.object_count()
            && self.left.morphisms.len() == m.morphism_count()
            && self.right.objects.len() == n.object_count()
            && self.right.morphisms.len() == n.morphism_count()
            && self.unit.len() == m.object_count()
            && self.counit.len() == n.object_count();
        assert!(ok_shape, "adjunction data sized for other categories");
        functor_issues(m, n, &self.left, "left adjoint", &mut issues);
        functor_issues(n, m, &self.right, "right adjoint", &mut issues);
        if !issues.is_empty() {
            return AdjunctionReport { issues };
        }
        let (s, t) = (&self.left, &self.right);
        for a in m.objects() {
            let u = self.unit[a.0];
            if m.src(u) != a || m.tgt(u) != t.obj(s.obj(a)) {
                issues.push(AdjunctionIssue::UnitTyping(a));
            }
        }
        for x in n.objects() {
            let e = self.counit[x.0];
            if n.tgt(e) != x || n.src(e) != s.obj(t.obj(x)) {
                issues.push(AdjunctionIssue::CounitTyping(x));
            }
        }
        if !issues.is_empty() {
            return AdjunctionReport { issues };
        }
        for f in m.morphisms() {
            let (a, b) = (m.src(f), m.tgt(f));
            if m.comp(t.map(s.map(f)), self.unit[a.0]) != m.comp(self.unit[b.0], f) {
                issues.push(AdjunctionIssue::UnitNaturality(f));
            }
        }
        for g in n.morphisms() {
            let (x, y) = (n.src(g), n.tgt(g));
            if n.comp(g, self.counit[x.0]) != n.comp(self.counit[y.0], s.map(t.map(g))) {
                issues.push(AdjunctionIssue::CounitNaturality(g));
            }
        }
        for a in m.objects() {
            let sa = s.obj(a);
            if n.comp(self.counit[sa.0], s.map(self.unit[a.0])) != n.id(sa) {
                issues.push(AdjunctionIssue::LeftTriangle(a));
            }
        }
        for x in n.objects() {
            let tx = t.obj(x);
            if m.comp(t.map(self.counit[x.0]), self.unit[tx.0]) != m.id(tx) {
                issues.push(AdjunctionIssue::RightTriangle(x));
            }
        }
        AdjunctionReport { issues }
    }

    /// `f: SA → X` ↦ `T(f)∘η_A: A → TX`.
    pub fn right_adjunct(&self, a: ObjId, f: MorphId) -> MorphId {
        self.m.comp(self.right.map(f), self.unit[a.0])
    }

    /// `g: A → TX` ↦ `ε_X∘S(g): SA → X`.
    pub fn left_adjunct(&self, x: ObjId, g: MorphId) -> MorphId {
        self.n.comp(self.counit[x.0], self.left.map(g))
    }

    /// For every `A`, `X`, the adjunct maps are mutually inverse bijections
    /// `N(SA, X) ≅ M(A, TX)`.
    pub fn hom_bijection_holds(&self) -> bool {
        self.m.objects().all(|a| {
            self.n.objects().all(|x| {
                let lhs = self.n.hom(self.left.obj(a), x);
                let rhs = self.m.hom(a, self.right.obj(x));
                lhs.len() == rhs.len()
                    && lhs.iter().all(|&f| self.left_adjunct(x, self.right_adjunct(a, f)) == f)
                    && rhs.iter().all(|&g| self.right_adjunct(a, self.left_adjunct(x, g)) == g)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuillenError {
    #[error("adjunction is invalid")]
    InvalidAdjunction(AdjunctionReport),
    #[error("left and right Quillen conditions disagree ({left} vs {right})")]
    ConditionsDisagree { left: bool, right: bool },
    #[error("not a Quillen pair for the {0} structures")]
    NotQuillen(&'static str),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error("{0} objects of the extension differ from the base")]
    CoincidenceFails(&'static str),
    #[error("no {kind} factorization of {map}")]
    NoFactorization { map: MorphId, kind: &'static str },
}

fn left_condition(adj: &Adjunction, ms_m: &Classes, ms_n: &Classes) -> CheckResult {
    let s = &adj.left;
    let bad = ms_m
        .cof
        .iter()
        .find(|&c| !ms_n.cof.contains(s.map(c)) || (ms_m.weq.contains(c) && !ms_n.weq.contains(s.map(c))));
    CheckResult::from_witness(bad.map(Witness::Morphism))
}

fn right_condition(adj: &Adjunction, ms_m: &Classes, ms_n: &Classes) -> CheckResult {
    let t = &adj.right;
    let bad = ms_n
        .fib
        .iter()
        .find(|&p| !ms_m.fib.contains(t.map(p)) || (ms_n.weq.contains(p) && !ms_m.weq.contains(t.map(p))));
    CheckResult::from_witness(bad.map(Witness::Morphism))
}

/// The left adjoint preserves cofibrations and trivial cofibrations. The
/// dual condition on the right adjoint is computed too and must agree. A
/// failing witness names a cofibration of M.
pub fn is_quillen_pair(adj: &Adjunction, ms_m: &Classes, ms_n: &Classes) -> Result<CheckResult, QuillenError> {
    let report = adj.validate();
    if !report.is_empty() {
        return Err(QuillenError::InvalidAdjunction(report));
    }
    let l = left_condition(adj, ms_m, ms_n);
    let r = right_condition(adj, ms_m, ms_n);
    if l.passed() != r.passed() {
        return Err(QuillenError::ConditionsDisagree { left: l.passed(), right: r.passed() });
    }
    Ok(l)
}

/// Per-object results of the derived-counit (or derived-unit) criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedReport {
    pub side: Side,
    /// For each G-fibrant object of N (right) or G-cofibrant object of M
    /// (left): whether the composite through a base approximation is a base
    /// weak equivalence.
    pub per_object: Vec<(usize, bool)>,
    /// The same test over every fibrant (cofibrant) object of the base: the
    /// derived functor of the base pair is full and faithful.
    pub base_full_faithful: bool,
    /// Composites through approximations in the extension, tested against
    /// the extension's weak equivalences.
    pub extension_full_faithful: bool,
}

impl DerivedReport {
    pub fn result(&self) -> CheckResult {
        CheckResult::from_witness(self.per_object.iter().find(|(_, ok)| !ok).map(|&(x, _)| Witness::Object(ObjId(x))))
    }

    pub fn passed(&self) -> bool {
        self.result().passed()
    }
}

/// `ε_X∘S(c)` for the first (C, F∩W) factorization `∅ → C̃ → TX`.
fn derived_counit(adj: &Adjunction, ms_m: &Classes, x: ObjId) -> Result<MorphId, QuillenError> {
    let tx = adj.right.obj(x);
    let to_tx = adj.m.from_initial(tx).ok_or(BoundaryError::NoInitial)?;
    let fz = first_factorization(adj.m, to_tx, ms_m.cof, ms_m.trivial_fib())
        .ok_or(QuillenError::NoFactorization { map: to_tx, kind: "(C, F∩W)" })?;
    Ok(adj.left_adjunct(x, fz.right))
}

/// `T(r)∘η_A` for the first (C∩W, F) factorization `SA → R̃ → ∗`.
fn derived_unit(adj: &Adjunction, ms_n: &Classes, a: ObjId) -> Result<MorphId, QuillenError> {
    let sa = adj.left.obj(a);
    let to_t = adj.n.to_terminal(sa).ok_or(BoundaryError::NoTerminal)?;
    let fz = first_factorization(adj.n, to_t, ms_n.trivial_cof(), ms_n.fib)
        .ok_or(QuillenError::NoFactorization { map: to_t, kind: "(C∩W, F)" })?;
    Ok(adj.right_adjunct(a, fz.left))
}

/// Derived full faithfulness of the extension pair, decided through the
/// derived counit (right side) or derived unit (left side).
///
/// Right side requires the G-cofibrant objects of M to be the cofibrant
/// ones; left side requires the G-fibrant objects of N to be the fibrant ones.
pub fn derived_fullfaithful_check(
    adj: &Adjunction,
    ms_m: &Classes,
    ms_n: &Classes,
    ms_m_g: &Classes,
    ms_n_g: &Classes,
    side: Side,
) -> Result<DerivedReport, QuillenError> {
    if !is_quillen_pair(adj, ms_m, ms_n)?.passed() {
        return Err(QuillenError::NotQuillen("base"));
    }
    if !is_quillen_pair(adj, ms_m_g, ms_n_g)?.passed() {
        return Err(QuillenError::NotQuillen("extension"));
    }
    match side {
        Side::Right => {
            if cofibrant_objects(adj.m, ms_m.cof)? != cofibrant_objects(adj.m, ms_m_g.cof)? {
                return Err(QuillenError::CoincidenceFails("cofibrant"));
            }
            let mut per_object = Vec::new();
            for x in fibrant_objects(adj.n, ms_n_g.fib)? {
                per_object.push((x.0, ms_n.weq.contains(derived_counit(adj, ms_m, x)?)));
            }
            let mut base_full_faithful = true;
            for x in fibrant_objects(adj.n, ms_n.fib)? {
                base_full_faithful &= ms_n.weq.contains(derived_counit(adj, ms_m, x)?);
            }
            let mut extension_full_faithful = true;
            for x in fibrant_objects(adj.n, ms_n_g.fib)? {
                extension_full_faithful &= ms_n_g.weq.contains(derived_counit(adj, ms_m_g, x)?);
            }
            Ok(DerivedReport { side, per_object, base_full_faithful, extension_full_faithful })
        }
        Side::Left => {
            if fibrant_objects(adj.n, ms_n.fib)? != fibrant_objects(adj.n, ms_n_g.fib)? {
                return Err(QuillenError::CoincidenceFails("fibrant"));
            }
            let mut per_object = Vec::new();
            for a in cofibrant_objects(adj.m, ms_m_g.cof)? {
                per_object.push((a.0, ms_m.weq.contains(derived_unit(adj, ms_n, a)?)));
            }
            let mut base_full_faithful = true;
            for a in cofibrant_objects(adj.m, ms_m.cof)? {
                base_full_faithful &= ms_m.weq.contains(derived_unit(adj, ms_n, a)?);
            }
            let mut extension_full_faithful = true;
            for a in cofibrant_objects(adj.m, ms_m_g.cof)? {
                extension_full_faithful &= ms_m_g.weq.contains(derived_unit(adj, ms_n_g, a)?);
            }
            Ok(DerivedReport { side, per_object, base_full_faithful, extension_full_faithful })
        }
    }
}

/// For every cofibrant `A` of M, fibrant `X` of N and `f: SA → X`:
/// `f ∈ W_N` iff its adjunct `A → TX` is in `W_M`.
pub fn is_quillen_equivalence(adj: &Adjunction, ms_m: &Classes, ms_n: &Classes) -> Result<CheckResult, QuillenError> {
    if !is_quillen_pair(adj, ms_m, ms_n)?.passed() {
        return Err(QuillenError::NotQuillen("given"));
    }
    let cof = cofibrant_objects(adj.m, ms_m.cof)?;
    let fib = fibrant_objects(adj.n, ms_n.fib)?;
    for &a in &cof {
        for &x in &fib {
            for &f in adj.n.hom(adj.left.obj(a), x) {
                let g = adj.right_adjunct(a, f);
                if ms_n.weq.contains(f) != ms_m.weq.contains(g) {
                    return Ok(CheckResult::Fail(Witness::Message(format!(
                        "{} : {} → {} and its adjunct {} disagree on weak equivalence",
                        adj.n.name(f),
                        adj.n.object_name(adj.left.obj(a)),
                        adj.n.object_name(x),
                        adj.m.name(g)
                    ))));
                }
            }
        }
    }
    Ok(CheckResult::Pass)
}

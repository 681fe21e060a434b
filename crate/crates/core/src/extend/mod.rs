//! Extensions of a model structure by a second triple of classes.
//!
//! Four hypothesis lists are checked here, named by the object they rely on:
//!
//! * [`Criterion::Cylinder`]: eight conditions built around cylinder objects
//!   of cofibrant objects; conclusion is an ℓℓ-extension.
//! * [`Criterion::Path`]: the dual eight conditions with path objects of
//!   fibrant objects, checked directly rather than through the opposite
//!   category.
//! * [`Criterion::Lm`]: six conditions for more weak equivalences, fewer
//!   cofibrations and more fibrations.
//! * [`Criterion::LiftingDefined`]: fibrations and cofibrations defined by
//!   lifting properties from two classes `W ⊆ W' ⊆ W_g`.

use std::fmt;

use thiserror::Error;

use crate::fincat::{FinCat, LimitError, MorphId, ObjId};
use crate::modelstruct::{
    all_cylinders, cofibrant_objects, fibrant_objects, verify_model_structure, AxiomReport, BoundaryError, Classes,
    CylinderSide, ModelStructure,
};
use crate::morphclass::{
    closure_check, factorization_check, has_lifting, llp, rlp, CheckResult, Closure, MorphClass, Witness,
};

pub mod construct;
pub mod transfer;

pub use construct::{
    constructive_lift, factor_cof_then_trivial_fib, lift_assumptions, mapping_cylinder_factorization, CofApproxSquare,
    ConstructError, ConstructiveLift, CylinderFactorization, LiftContext, MappingCylinder,
};
pub use transfer::{
    check_invariance, check_properness, check_properness_transfer, check_triangle_closure, classify_extension,
    ExtensionClass, ExtensionKind, Side, TriangleReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    Cylinder,
    Path,
    Lm,
    LiftingDefined,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Cylinder => "cylinder",
            Criterion::Path => "path",
            Criterion::Lm => "lm",
            Criterion::LiftingDefined => "lifting-defined",
        }
    }

    pub fn hypothesis_count(&self) -> usize {
        match self {
            Criterion::Cylinder | Criterion::Path => 8,
            Criterion::Lm => 6,
            Criterion::LiftingDefined => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// 1-based position in the hypothesis list.
    pub index: usize,
    pub label: &'static str,
    pub result: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub criterion: Criterion,
    pub verdicts: Vec<Verdict>,
    /// Axiom check of the resulting triple, run only when every hypothesis passes.
    pub verification: Option<AxiomReport>,
}

impl HypothesisReport {
    fn new(criterion: Criterion, results: Vec<CheckResult>) -> HypothesisReport {
        let verdicts = results
            .into_iter()
            .zip(criterion.labels())
            .enumerate()
            .map(|(k, (result, label))| Verdict { index: k + 1, label, result })
            .collect::<Vec<_>>();
        debug_assert_eq!(verdicts.len(), criterion.hypothesis_count());
        HypothesisReport { criterion, verdicts, verification: None }
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.result.passed())
    }

    /// Every hypothesis holds and, when present, the verification passed.
    pub fn passed(&self) -> bool {
        self.hypotheses_hold() && self.verification.as_ref().is_none_or(AxiomReport::passed)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.result.passed())
    }

    pub fn pass_pattern(&self) -> Vec<bool> {
        self.verdicts.iter().map(|v| v.result.passed()).collect()
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.verdicts {
            writeln!(f, "({}) {:<54} {}", v.index, v.label, if v.result.passed() { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("containment {relation} fails at {witness}")]
    Containment { relation: &'static str, witness: MorphId },
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("hypotheses fail")]
    Hypotheses(HypothesisReport),
    #[error("constructed classes fail the model axioms")]
    Reverification(AxiomReport),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("cofibrant objects of the extension differ from the base at object {0}")]
    CofibrantMismatch(ObjId),
    #[error("the extension is not {0} proper")]
    NotProper(&'static str),
}

fn require_subset(sub: MorphClass, sup: MorphClass, relation: &'static str) -> Result<(), ExtendError> {
    match sub.difference(sup).iter().next() {
        Some(witness) => Err(ExtendError::Containment { relation, witness }),
        None => Ok(()),
    }
}

fn retracts_all(cat: &FinCat, classes: &[MorphClass]) -> CheckResult {
    classes.iter().fold(CheckResult::Pass, |acc, &c| acc.and(|| closure_check(cat, c, Closure::Retracts)))
}

fn objects_match(cat: &FinCat, expected: &[ObjId], member: impl Fn(ObjId) -> bool) -> CheckResult {
    CheckResult::from_witness(cat.objects().find(|&x| member(x) != expected.contains(&x)).map(Witness::Object))
}

const CYLINDER_LABELS: [&str; 8] = [
    "W_g has two-of-three",
    "W_g, C_g, F_g closed under retracts",
    "C_g closed under composition and pushouts",
    "∅ → X in C_g iff X cofibrant",
    "cofibrant objects have cylinder objects",
    "W closed under pushout along C_g between cofibrants",
    "C_g∩W_g lifts against F_g",
    "factorization (C_g∩W_g, F_g)",
];

const PATH_LABELS: [&str; 8] = [
    "W_g has two-of-three",
    "W_g, C_g, F_g closed under retracts",
    "F_g closed under composition and pullbacks",
    "X → ∗ in F_g iff X fibrant",
    "fibrant objects have path objects",
    "W closed under pullback along F_g between fibrants",
    "C_g lifts against F_g∩W_g",
    "factorization (C_g, F_g∩W_g)",
];

const LM_LABELS: [&str; 6] = [
    "W_g has two-of-three",
    "W_g, C_g, F_g closed under retracts",
    "F_g closed under composition and pullbacks",
    "C_g lifts against F_g∩W_g",
    "factorization (C_g, F_g∩W_g)",
    "base is right proper",
];

const LIFTING_DEFINED_LABELS: [&str; 4] = [
    "W' and W_g have two-of-three",
    "W' and W_g closed under retracts",
    "factorization (C∩W', F_g)",
    "factorization (C_g, F_g∩W_g)",
];

impl Criterion {
    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            Criterion::Cylinder => &CYLINDER_LABELS,
            Criterion::Path => &PATH_LABELS,
            Criterion::Lm => &LM_LABELS,
            Criterion::LiftingDefined => &LIFTING_DEFINED_LABELS,
        }
    }
}

/// Hypothesis `k` (1-based) of the cylinder, path or ℓm list, without the
/// containment preamble.
///
/// # Panics
///
/// On [`Criterion::LiftingDefined`], whose classes are derived rather than given.
pub fn hypothesis(
    cat: &FinCat,
    base: &Classes,
    cand: &Classes,
    criterion: Criterion,
    k: usize,
) -> Result<CheckResult, ExtendError> {
    use Criterion::*;
    let r =
        match (criterion, k) {
            (LiftingDefined, _) => panic!("lifting-defined hypotheses take W' and W_g"),
            (_, 1) => closure_check(cat, cand.weq, Closure::TwoOfThree),
            (_, 2) => retracts_all(cat, &[cand.weq, cand.cof, cand.fib]),
            (Cylinder, 3) => closure_check(cat, cand.cof, Closure::Composition)
                .and(|| closure_check(cat, cand.cof, Closure::Pushouts)),
            (Path | Lm, 3) => closure_check(cat, cand.fib, Closure::Composition)
                .and(|| closure_check(cat, cand.fib, Closure::Pullbacks)),
            (Cylinder, 4) => {
                let initial = cat.initial().ok_or(BoundaryError::NoInitial)?;
                let cofibrant = cofibrant_objects(cat, base.cof)?;
                objects_match(cat, &cofibrant, |x| cand.cof.contains(cat.hom(initial, x)[0]))
            }
            (Path, 4) => {
                let terminal = cat.terminal().ok_or(BoundaryError::NoTerminal)?;
                let fibrant = fibrant_objects(cat, base.fib)?;
                objects_match(cat, &fibrant, |x| cand.fib.contains(cat.hom(x, terminal)[0]))
            }
            (Cylinder | Path, 5) => {
                let (objects, side) = match criterion {
                    Cylinder => (cofibrant_objects(cat, base.cof)?, CylinderSide::Cylinder),
                    _ => (fibrant_objects(cat, base.fib)?, CylinderSide::Path),
                };
                let mut r = CheckResult::Pass;
                for x in objects {
                    if all_cylinders(cat, cand, x, side)?.is_empty() {
                        r = CheckResult::Fail(Witness::Object(x));
                        break;
                    }
                }
                r
            }
            (Cylinder, 6) => {
                let cofibrant = cofibrant_objects(cat, base.cof)?;
                let is_cof = |x: ObjId| cofibrant.contains(&x);
                CheckResult::from_witness(
                    cat.tables()
                        .pushouts
                        .iter()
                        .find(|t| {
                            base.weq.contains(t.map)
                                && cand.cof.contains(t.along)
                                && is_cof(cat.src(t.along))
                                && is_cof(cat.tgt(t.along))
                                && !base.weq.contains(t.result)
                        })
                        .map(|t| Witness::Pushout { map: t.map, along: t.along, result: t.result }),
                )
            }
            (Path, 6) => {
                let fibrant = fibrant_objects(cat, base.fib)?;
                let is_fib = |x: ObjId| fibrant.contains(&x);
                CheckResult::from_witness(
                    cat.tables()
                        .pullbacks
                        .iter()
                        .find(|t| {
                            base.weq.contains(t.map)
                                && cand.fib.contains(t.along)
                                && is_fib(cat.src(t.along))
                                && is_fib(cat.tgt(t.along))
                                && !base.weq.contains(t.result)
                        })
                        .map(|t| Witness::Pullback { map: t.map, along: t.along, result: t.result }),
                )
            }
            (Cylinder, 7) => has_lifting(cat, cand.trivial_cof(), cand.fib),
            (Cylinder, 8) => factorization_check(cat, cand.trivial_cof(), cand.fib),
            (Path, 7) | (Lm, 4) => has_lifting(cat, cand.cof, cand.trivial_fib()),
            (Path, 8) | (Lm, 5) => factorization_check(cat, cand.cof, cand.trivial_fib()),
            (Lm, 6) => check_properness(cat, base, Side::Right),
            _ => panic!("{} has no hypothesis {k}", criterion.name()),
        };
    Ok(r)
}

fn report(cat: &FinCat, base: &Classes, cand: &Classes, criterion: Criterion) -> Result<HypothesisReport, ExtendError> {
    let results = (1..=criterion.hypothesis_count())
        .map(|k| hypothesis(cat, base, cand, criterion, k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HypothesisReport::new(criterion, results))
}

/// The eight cylinder-side hypotheses for `cand` over `base`.
pub fn check_cylinder_hypotheses(
    cat: &FinCat,
    base: &ModelStructure,
    cand: &Classes,
) -> Result<HypothesisReport, ExtendError> {
    let b = &base.classes;
    require_subset(b.weq, cand.weq, "W ⊆ W_g")?;
    require_subset(cand.cof, b.cof, "C_g ⊆ C")?;
    require_subset(cand.fib, b.fib, "F_g ⊆ F")?;
    report(cat, b, cand, Criterion::Cylinder)
}

/// The eight path-side hypotheses, checked in `cat` itself.
pub fn check_path_hypotheses(
    cat: &FinCat,
    base: &ModelStructure,
    cand: &Classes,
) -> Result<HypothesisReport, ExtendError> {
    let b = &base.classes;
    require_subset(b.weq, cand.weq, "W ⊆ W_g")?;
    require_subset(cand.cof, b.cof, "C_g ⊆ C")?;
    require_subset(cand.fib, b.fib, "F_g ⊆ F")?;
    report(cat, b, cand, Criterion::Path)
}

/// Six hypotheses for an ℓm-extension (`F ⊆ F_g`). When all hold, the triple
/// is verified and the result attached.
pub fn check_lm_hypotheses(
    cat: &FinCat,
    base: &ModelStructure,
    cand: &Classes,
) -> Result<HypothesisReport, ExtendError> {
    let b = &base.classes;
    require_subset(b.weq, cand.weq, "W ⊆ W_g")?;
    require_subset(cand.cof, b.cof, "C_g ⊆ C")?;
    require_subset(b.fib, cand.fib, "F ⊆ F_g")?;
    let mut report = report(cat, b, cand, Criterion::Lm)?;
    if report.hypotheses_hold() {
        report.verification = Some(verify_model_structure(cat, cand));
    }
    Ok(report)
}

/// Defines `F_g = rlp(C ∩ W')` and `C_g = llp(F_g ∩ W_g)` and checks the
/// four hypotheses on `W'` and `W_g`. Verification runs only when all hold.
pub fn lifting_defined_extension(
    cat: &FinCat,
    base: &ModelStructure,
    w_prime: MorphClass,
    w_g: MorphClass,
) -> Result<(Classes, HypothesisReport), ExtendError> {
    let b = &base.classes;
    require_subset(b.weq, w_prime, "W ⊆ W'")?;
    require_subset(w_prime, w_g, "W' ⊆ W_g")?;
    let fib = rlp(cat, b.cof & w_prime);
    let cof = llp(cat, fib & w_g);
    let cand = Classes::new(w_g, cof, fib);
    let mut report = HypothesisReport::new(
        Criterion::LiftingDefined,
        vec![
            closure_check(cat, w_prime, Closure::TwoOfThree).and(|| closure_check(cat, w_g, Closure::TwoOfThree)),
            retracts_all(cat, &[w_prime, w_g]),
            factorization_check(cat, b.cof & w_prime, fib),
            factorization_check(cat, cof, fib & w_g),
        ],
    );
    if report.hypotheses_hold() {
        report.verification = Some(verify_model_structure(cat, &cand));
    }
    Ok((cand, report))
}

/// Dispatches on the criterion. For [`Criterion::LiftingDefined`], `cand.weq`
/// is `W_g` and `w_prime` defaults to `W_g`; the other fields are ignored.
pub fn check_hypotheses(
    cat: &FinCat,
    base: &ModelStructure,
    cand: &Classes,
    criterion: Criterion,
    w_prime: Option<MorphClass>,
) -> Result<(Classes, HypothesisReport), ExtendError> {
    match criterion {
        Criterion::Cylinder => Ok((*cand, check_cylinder_hypotheses(cat, base, cand)?)),
        Criterion::Path => Ok((*cand, check_path_hypotheses(cat, base, cand)?)),
        Criterion::Lm => Ok((*cand, check_lm_hypotheses(cat, base, cand)?)),
        Criterion::LiftingDefined => lifting_defined_extension(cat, base, w_prime.unwrap_or(cand.weq), cand.weq),
    }
}

/// Builds the extension from the cylinder-side hypotheses.
///
/// Every morphism is factored by the constructive (C_g, F_g∩W_g) route, the
/// triple is re-verified independently, the cofibrant objects are compared
/// with the base, and left properness is checked.
pub fn build_ll_extension(cat: &FinCat, base: &ModelStructure, cand: &Classes) -> Result<ModelStructure, ExtendError> {
    let report = check_cylinder_hypotheses(cat, base, cand)?;
    if !report.hypotheses_hold() {
        return Err(ExtendError::Hypotheses(report));
    }
    for f in cat.morphisms() {
        factor_cof_then_trivial_fib(cat, &base.classes, cand, f)?;
    }
    let ms = ModelStructure::new(cat, *cand).map_err(ExtendError::Reverification)?;
    let before = cofibrant_objects(cat, base.cof())?;
    let after = cofibrant_objects(cat, cand.cof)?;
    if let Some(x) = cat.objects().find(|x| before.contains(x) != after.contains(x)) {
        return Err(ExtendError::CofibrantMismatch(x));
    }
    if !check_properness(cat, cand, Side::Left).passed() {
        return Err(ExtendError::NotProper("left"));
    }
    Ok(ms)
}

/// The dual construction from the path-side hypotheses: the factorization
/// is built in the opposite category, and right properness is checked.
pub fn build_path_extension(
    cat: &FinCat,
    base: &ModelStructure,
    cand: &Classes,
) -> Result<ModelStructure, ExtendError> {
    let report = check_path_hypotheses(cat, base, cand)?;
    if !report.hypotheses_hold() {
        return Err(ExtendError::Hypotheses(report));
    }
    let op = cat.opposite();
    for f in op.morphisms() {
        factor_cof_then_trivial_fib(&op, &base.classes.dual(), &cand.dual(), f)?;
    }
    let ms = ModelStructure::new(cat, *cand).map_err(ExtendError::Reverification)?;
    let before = fibrant_objects(cat, base.fib())?;
    let after = fibrant_objects(cat, cand.fib)?;
    if let Some(x) = cat.objects().find(|x| before.contains(x) != after.contains(x)) {
        return Err(ExtendError::CofibrantMismatch(x));
    }
    if !check_properness(cat, cand, Side::Right).passed() {
        return Err(ExtendError::NotProper("right"));
    }
    Ok(ms)
}

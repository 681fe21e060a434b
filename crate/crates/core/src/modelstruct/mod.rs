//! Model structures: axiom verification, cofibrant and fibrant objects,
//! cylinder and path objects, and the minimal structure.

use std::fmt;

use thiserror::Error;

use crate::fincat::{
    colimit, is_finitely_bicomplete, limit, Bicompleteness, FinCat, LimitError, MorphId, ObjId, Shape,
};
use crate::morphclass::{
    closure_check, factorization_check, has_lifting, lifts_against, retract_closed, CheckResult, Closure, MorphClass,
    Witness,
};

pub mod homotopy;

pub use homotopy::{homotopy_category, HoCategory, HomotopyError};

/// Weak equivalences, cofibrations, fibrations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Classes {
    pub weq: MorphClass,
    pub cof: MorphClass,
    pub fib: MorphClass,
}

impl Classes {
    pub fn new(weq: MorphClass, cof: MorphClass, fib: MorphClass) -> Classes {
        Classes { weq, cof, fib }
    }

    /// Isomorphisms, everything, everything.
    pub fn minimal(cat: &FinCat) -> Classes {
        let all = MorphClass::all(cat);
        Classes::new(MorphClass::isos(cat), all, all)
    }

    pub fn trivial_cof(&self) -> MorphClass {
        self.cof & self.weq
    }

    pub fn trivial_fib(&self) -> MorphClass {
        self.fib & self.weq
    }

    /// The same structure read in the opposite category.
    pub fn dual(&self) -> Classes {
        Classes::new(self.weq, self.fib, self.cof)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Identities,
    TwoOfThree,
    RetractsWeq,
    RetractsCof,
    RetractsFib,
    LiftTrivialCof,
    LiftTrivialFib,
    FactorTrivialCofFib,
    FactorCofTrivialFib,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::Identities,
        Axiom::TwoOfThree,
        Axiom::RetractsWeq,
        Axiom::RetractsCof,
        Axiom::RetractsFib,
        Axiom::LiftTrivialCof,
        Axiom::LiftTrivialFib,
        Axiom::FactorTrivialCofFib,
        Axiom::FactorCofTrivialFib,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Axiom::Identities => "identities in W, C, F",
            Axiom::TwoOfThree => "W has two-of-three",
            Axiom::RetractsWeq => "W closed under retracts",
            Axiom::RetractsCof => "C closed under retracts",
            Axiom::RetractsFib => "F closed under retracts",
            Axiom::LiftTrivialCof => "C∩W lifts against F",
            Axiom::LiftTrivialFib => "C lifts against F∩W",
            Axiom::FactorTrivialCofFib => "factorization (C∩W, F)",
            Axiom::FactorCofTrivialFib => "factorization (C, F∩W)",
        }
    }

    /// The axiom that this one turns into in the opposite category.
    pub fn dual(&self) -> Axiom {
        match self {
            Axiom::RetractsCof => Axiom::RetractsFib,
            Axiom::RetractsFib => Axiom::RetractsCof,
            Axiom::FactorTrivialCofFib => Axiom::FactorCofTrivialFib,
            Axiom::FactorCofTrivialFib => Axiom::FactorTrivialCofFib,
            Axiom::LiftTrivialCof => Axiom::LiftTrivialFib,
            Axiom::LiftTrivialFib => Axiom::LiftTrivialCof,
            other => *other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub verdicts: Vec<(Axiom, CheckResult)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, r)| r.passed())
    }

    pub fn first_failure(&self) -> Option<(Axiom, &Witness)> {
        self.verdicts.iter().find_map(|(a, r)| r.witness().map(|w| (*a, w)))
    }

    pub fn verdict(&self, axiom: Axiom) -> &CheckResult {
        &self.verdicts.iter().find(|(a, _)| *a == axiom).expect("every axiom is reported").1
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, r) in &self.verdicts {
            writeln!(f, "{:<28} {}", a.label(), if r.passed() { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

fn identities_check(cat: &FinCat, classes: &Classes) -> CheckResult {
    let inside = classes.weq & classes.cof & classes.fib;
    CheckResult::from_witness(MorphClass::identities(cat).difference(inside).iter().next().map(Witness::Morphism))
}

/// Runs every axiom and records the least witness for each failure.
pub fn verify_model_structure(cat: &FinCat, classes: &Classes) -> AxiomReport {
    let verdicts = Axiom::ALL
        .iter()
        .map(|&a| {
            let r = match a {
                Axiom::Identities => identities_check(cat, classes),
                Axiom::TwoOfThree => closure_check(cat, classes.weq, Closure::TwoOfThree),
                Axiom::RetractsWeq => closure_check(cat, classes.weq, Closure::Retracts),
                Axiom::RetractsCof => closure_check(cat, classes.cof, Closure::Retracts),
                Axiom::RetractsFib => closure_check(cat, classes.fib, Closure::Retracts),
                Axiom::LiftTrivialCof => has_lifting(cat, classes.trivial_cof(), classes.fib),
                Axiom::LiftTrivialFib => has_lifting(cat, classes.cof, classes.trivial_fib()),
                Axiom::FactorTrivialCofFib => factorization_check(cat, classes.trivial_cof(), classes.fib),
                Axiom::FactorCofTrivialFib => factorization_check(cat, classes.cof, classes.trivial_fib()),
            };
            (a, r)
        })
        .collect();
    AxiomReport { verdicts }
}

/// Boolean form of [`verify_model_structure`], cheapest checks first.
pub fn is_model_structure(cat: &FinCat, classes: &Classes) -> bool {
    let ids = MorphClass::identities(cat);
    ids.is_subset(classes.weq & classes.cof & classes.fib)
        && lifts_against(cat, classes.trivial_cof(), classes.fib)
        && lifts_against(cat, classes.cof, classes.trivial_fib())
        && retract_closed(cat, classes.weq)
        && retract_closed(cat, classes.cof)
        && retract_closed(cat, classes.fib)
        && has_two_of_three(cat, classes.weq)
        && factors_everywhere(cat, classes.trivial_cof(), classes.fib)
        && factors_everywhere(cat, classes.cof, classes.trivial_fib())
}

pub(crate) fn has_two_of_three(cat: &FinCat, class: MorphClass) -> bool {
    cat.tables().composable.iter().all(|&(a, b, c)| {
        let n = class.contains(a) as u8 + class.contains(b) as u8 + class.contains(c) as u8;
        n != 2
    })
}

pub(crate) fn factors_everywhere(cat: &FinCat, left: MorphClass, right: MorphClass) -> bool {
    cat.tables().factorizations.iter().all(|fs| fs.iter().any(|&(_, j, p)| left.contains(j) && right.contains(p)))
}

/// A set of classes together with the report that verified it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelStructure {
    pub classes: Classes,
    pub report: AxiomReport,
}

impl ModelStructure {
    /// Verifies `classes`; the error carries the failing report.
    pub fn new(cat: &FinCat, classes: Classes) -> Result<ModelStructure, AxiomReport> {
        let report = verify_model_structure(cat, &classes);
        if report.passed() {
            Ok(ModelStructure { classes, report })
        } else {
            Err(report)
        }
    }

    pub fn weq(&self) -> MorphClass {
        self.classes.weq
    }

    pub fn cof(&self) -> MorphClass {
        self.classes.cof
    }

    pub fn fib(&self) -> MorphClass {
        self.classes.fib
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Cofibrant,
    Fibrant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("the category has no initial object")]
    NoInitial,
    #[error("the category has no terminal object")]
    NoTerminal,
}

/// Cofibrant objects (`∅ → X` in C) or fibrant objects (`X → ∗` in F).
pub fn boundary_objects(cat: &FinCat, classes: &Classes, side: Boundary) -> Result<Vec<ObjId>, BoundaryError> {
    match side {
        Boundary::Cofibrant => {
            let i = cat.initial().ok_or(BoundaryError::NoInitial)?;
            Ok(cat.objects().filter(|&x| classes.cof.contains(cat.hom(i, x)[0])).collect())
        }
        Boundary::Fibrant => {
            let t = cat.terminal().ok_or(BoundaryError::NoTerminal)?;
            Ok(cat.objects().filter(|&x| classes.fib.contains(cat.hom(x, t)[0])).collect())
        }
    }
}

pub fn cofibrant_objects(cat: &FinCat, cof: MorphClass) -> Result<Vec<ObjId>, BoundaryError> {
    boundary_objects(cat, &Classes::new(MorphClass::EMPTY, cof, MorphClass::EMPTY), Boundary::Cofibrant)
}

pub fn fibrant_objects(cat: &FinCat, fib: MorphClass) -> Result<Vec<ObjId>, BoundaryError> {
    boundary_objects(cat, &Classes::new(MorphClass::EMPTY, MorphClass::EMPTY, fib), Boundary::Fibrant)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CylinderSide {
    Cylinder,
    Path,
}

/// Cylinder side: `X ⊔ X --first--> Cyl --second--> X` factoring the fold
/// map, with `legs` the coproduct injections `i0, i1`.
/// Path side: `X --first--> Path --second--> X × X` factoring the diagonal,
/// with `legs` the product projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CylinderObject {
    pub side: CylinderSide,
    pub object: ObjId,
    pub cyl: ObjId,
    pub first: MorphId,
    pub second: MorphId,
    pub product: ObjId,
    pub legs: [MorphId; 2],
}

/// The fold map `X ⊔ X → X` (or diagonal `X → X × X`) with its (co)product.
pub fn fold_map(cat: &FinCat, x: ObjId, side: CylinderSide) -> Result<(MorphId, ObjId, [MorphId; 2]), LimitError> {
    let id = cat.id(x);
    let u = match side {
        CylinderSide::Cylinder => colimit(cat, Shape::Coproduct(x, x))?,
        CylinderSide::Path => limit(cat, Shape::Product(x, x))?,
    };
    let fold = u.mediator(&[id, id]).expect("(id, id) is a (co)cone");
    Ok((fold, u.apex, [u.legs[0], u.legs[1]]))
}

/// Every cylinder (path) object of `x` for the given classes, in
/// factorization scan order.
pub fn all_cylinders(
    cat: &FinCat,
    classes: &Classes,
    x: ObjId,
    side: CylinderSide,
) -> Result<Vec<CylinderObject>, LimitError> {
    let (fold, product, legs) = fold_map(cat, x, side)?;
    let (left, right) = match side {
        CylinderSide::Cylinder => (classes.cof, classes.weq),
        CylinderSide::Path => (classes.weq, classes.fib),
    };
    Ok(cat.tables().factorizations[fold.0]
        .iter()
        .filter(|(_, j, p)| left.contains(*j) && right.contains(*p))
        .map(|&(cyl, first, second)| CylinderObject { side, object: x, cyl, first, second, product, legs })
        .collect())
}

/// The first cylinder (path) object in scan order, if any.
pub fn find_cylinder(
    cat: &FinCat,
    classes: &Classes,
    x: ObjId,
    side: CylinderSide,
) -> Result<Option<CylinderObject>, LimitError> {
    Ok(all_cylinders(cat, classes, x, side)?.into_iter().next())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalError {
    #[error("category is not finitely bicomplete: {0}")]
    NotBicomplete(Bicompleteness),
    #[error("minimal classes fail verification")]
    Verification(AxiomReport),
}

/// W = isomorphisms, C = F = all maps, verified.
pub fn minimal_model_structure(cat: &FinCat) -> Result<ModelStructure, MinimalError> {
    let b = is_finitely_bicomplete(cat);
    if !b.is_complete() {
        return Err(MinimalError::NotBicomplete(b));
    }
    ModelStructure::new(cat, Classes::minimal(cat)).map_err(MinimalError::Verification)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morphclass::{llp, rlp, Square};

    #[test]
    fn minimal_structure_on_fixtures() {
        for cat in [fixtures::pt(), fixtures::arrow(), fixtures::chain2(), fixtures::diamond(), fixtures::boolean3()] {
            let ms = minimal_model_structure(&cat).unwrap();
            assert!(ms.report.passed());
            assert!(is_model_structure(&cat, &ms.classes));
        }
        assert!(matches!(minimal_model_structure(&fixtures::retract()), Err(MinimalError::NotBicomplete(_))));
    }

    #[test]
    fn everything_everywhere_fails_lifting_on_arrow() {
        let a = fixtures::arrow();
        let all = MorphClass::all(&a);
        let report = verify_model_structure(&a, &Classes::new(all, all, all));
        let f = a.morphism_by_name("f").unwrap();
        let (axiom, w) = report.first_failure().unwrap();
        assert_eq!(axiom, Axiom::LiftTrivialCof);
        assert_eq!(*w, Witness::Square(Square { left: f, right: f, top: a.id(a.src(f)), bottom: a.id(a.tgt(f)) }));
        assert!(!is_model_structure(&a, &Classes::new(all, all, all)));
    }

    #[test]
    fn boundary_objects_of_minimal() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        let every: Vec<ObjId> = d.objects().collect();
        assert_eq!(boundary_objects(&d, &m, Boundary::Cofibrant).unwrap(), every);
        assert_eq!(boundary_objects(&d, &m, Boundary::Fibrant).unwrap(), every);
        let pair = FinCat::new(&crate::fincat::CategoryData::discrete(&["p", "q"])).unwrap();
        let m = Classes::minimal(&pair);
        assert_eq!(boundary_objects(&pair, &m, Boundary::Cofibrant), Err(BoundaryError::NoInitial));
        assert_eq!(boundary_objects(&pair, &m, Boundary::Fibrant), Err(BoundaryError::NoTerminal));
    }

    #[test]
    fn boundary_objects_on_chain_by_membership() {
        let c = fixtures::chain2();
        // C = llp of {b}: the maps out of 0 that lift against 1 → 2
        let b = MorphClass::from_ids([c.morphism_by_name("b").unwrap()]);
        let cof = llp(&c, b);
        let expected: Vec<ObjId> = c.objects().filter(|&x| cof.contains(c.hom(ObjId(0), x)[0])).collect();
        assert_eq!(cofibrant_objects(&c, cof).unwrap(), expected);
        assert!(expected.contains(&ObjId(0)));
    }

    #[test]
    fn trivial_cylinders_for_minimal() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        for x in d.objects() {
            let cyl = find_cylinder(&d, &m, x, CylinderSide::Cylinder).unwrap().unwrap();
            // in a poset X ⊔ X = X and the fold is the identity
            assert_eq!((cyl.cyl, cyl.first, cyl.second), (x, d.id(x), d.id(x)));
            let path = find_cylinder(&d, &m, x, CylinderSide::Path).unwrap().unwrap();
            assert_eq!((path.cyl, path.first, path.second), (x, d.id(x), d.id(x)));
        }
    }

    #[test]
    fn no_cylinder_without_cofibrations() {
        let a = fixtures::arrow();
        let none = Classes::new(MorphClass::all(&a), MorphClass::EMPTY, MorphClass::all(&a));
        for x in a.objects() {
            assert_eq!(find_cylinder(&a, &none, x, CylinderSide::Cylinder).unwrap(), None);
        }
    }

    #[test]
    fn lifting_classes_of_verified_structures() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        assert_eq!(llp(&d, m.trivial_fib()), m.cof);
        assert_eq!(rlp(&d, m.trivial_cof()), m.fib);
        let op = d.opposite();
        assert!(verify_model_structure(&op, &m.dual()).passed());
    }
}

//! Constructive lifts and factorizations built from pushouts and the
//! factorizations already available, as opposed to the brute-force
//! searches in [`crate::morphclass`]. Every output is checked against the
//! class tests before it is returned.

use thiserror::Error;

use crate::fincat::{FinCat, LimitError, MorphId, ObjId};
use crate::modelstruct::{cofibrant_objects, find_cylinder, fold_map, Classes, CylinderObject, CylinderSide};
use crate::morphclass::{
    closure_check, factorization_check, find_lift, first_factorization, has_lifting, CheckResult, Closure,
    Factorization, MorphClass, Square, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("assumption ({index}) fails: {witness:?}")]
    Assumption { index: usize, witness: Witness },
    #[error("{leg} is not in {class}")]
    LegNotInClass { leg: MorphId, class: &'static str },
    #[error("{map} has no {kind} factorization")]
    NoFactorization { map: MorphId, kind: &'static str },
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("no cylinder object for {0}")]
    NoCylinder(ObjId),
    #[error("object {0} is not cofibrant")]
    NotCofibrant(ObjId),
    #[error("the category has no initial object")]
    NoInitial,
    #[error("square has no lift: {0:?}")]
    NoLift(Square),
    #[error("constructed map {map} is not in {class}")]
    Membership { map: MorphId, class: &'static str },
    #[error("constructed diagram does not commute: {0}")]
    Commutation(&'static str),
}

fn ensure(cond: bool, what: &'static str) -> Result<(), ConstructError> {
    if cond {
        Ok(())
    } else {
        Err(ConstructError::Commutation(what))
    }
}

fn member(class: MorphClass, map: MorphId, name: &'static str) -> Result<(), ConstructError> {
    if class.contains(map) {
        Ok(())
    } else {
        Err(ConstructError::Membership { map, class: name })
    }
}

fn factor(
    cat: &FinCat,
    f: MorphId,
    left: MorphClass,
    right: MorphClass,
    kind: &'static str,
) -> Result<Factorization, ConstructError> {
    first_factorization(cat, f, left, right).ok_or(ConstructError::NoFactorization { map: f, kind })
}

/// The four assumptions under which a (C, F∩W) square has a lift:
/// two-of-three for W, C closed under composition and pushouts, C∩W lifting
/// against F, and (C, F∩W) factorizations.
pub fn lift_assumptions(cat: &FinCat, classes: &Classes) -> [CheckResult; 4] {
    [
        closure_check(cat, classes.weq, Closure::TwoOfThree),
        closure_check(cat, classes.cof, Closure::Composition)
            .and(|| closure_check(cat, classes.cof, Closure::Pushouts)),
        has_lifting(cat, classes.trivial_cof(), classes.fib),
        factorization_check(cat, classes.cof, classes.trivial_fib()),
    ]
}

/// Intermediate data of a constructive lift for a square `(i, q, top, bottom)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructiveLift {
    pub square: Square,
    /// `top = t2∘t1` with `t1` in C and `t2` in F∩W.
    pub top_factor: Factorization,
    /// Pushout of `t1` along `i`.
    pub pushout: ObjId,
    /// `D → E` and `B → E`.
    pub d_leg: MorphId,
    pub b_leg: MorphId,
    /// Canonical `E → Y`, factored as `e2∘e1`.
    pub canonical: MorphId,
    pub canonical_factor: Factorization,
    /// `j = e1∘d_leg`, in C∩W.
    pub j: MorphId,
    /// Lift of `(j, q, t2, e2)`.
    pub k: MorphId,
    /// `k∘e1∘b_leg`.
    pub lift: MorphId,
}

/// Checks [`lift_assumptions`] once, then lifts any number of squares.
pub struct LiftContext<'a> {
    cat: &'a FinCat,
    classes: Classes,
}

impl<'a> LiftContext<'a> {
    pub fn new(cat: &'a FinCat, classes: &Classes) -> Result<LiftContext<'a>, ConstructError> {
        for (k, r) in lift_assumptions(cat, classes).into_iter().enumerate() {
            if let CheckResult::Fail(witness) = r {
                return Err(ConstructError::Assumption { index: k + 1, witness });
            }
        }
        Ok(LiftContext { cat, classes: *classes })
    }

    pub fn lift(&self, sq: &Square) -> Result<ConstructiveLift, ConstructError> {
        let (cat, c) = (self.cat, &self.classes);
        if !c.cof.contains(sq.left) {
            return Err(ConstructError::LegNotInClass { leg: sq.left, class: "C" });
        }
        if !c.trivial_fib().contains(sq.right) {
            return Err(ConstructError::LegNotInClass { leg: sq.right, class: "F∩W" });
        }
        let (i, q) = (sq.left, sq.right);
        let tf = factor(cat, sq.top, c.cof, c.trivial_fib(), "(C, F∩W)")?;
        let (t1, t2) = (tf.left, tf.right);

        let po = cat.pushout(t1, i)?;
        let (d_leg, b_leg) = (po.first_leg(), po.opposite_leg());
        let cocone = [cat.comp(sq.bottom, i), cat.comp(q, t2), sq.bottom];
        let canonical = po.mediator(&cocone).ok_or(ConstructError::Commutation("cocone into Y"))?;

        let cf = factor(cat, canonical, c.cof, c.trivial_fib(), "(C, F∩W)")?;
        let (e1, e2) = (cf.left, cf.right);
        let j = cat.comp(e1, d_leg);
        member(c.cof, j, "C")?;
        member(c.weq, j, "W")?;

        let inner = Square::new(cat, j, q, t2, e2).ok_or(ConstructError::Commutation("square (j, q)"))?;
        let k = find_lift(cat, &inner).ok_or(ConstructError::NoLift(inner))?;
        let lift = cat.comp_all(&[k, e1, b_leg]);
        ensure(sq.is_lift(cat, lift), "constructed lift")?;
        Ok(ConstructiveLift {
            square: *sq,
            top_factor: tf,
            pushout: po.apex,
            d_leg,
            b_leg,
            canonical,
            canonical_factor: cf,
            j,
            k,
            lift,
        })
    }
}

/// A lift for a square with left leg in C and right leg in F∩W, built from
/// factorizations, one pushout, and a lift against a map in C∩W.
pub fn constructive_lift(cat: &FinCat, classes: &Classes, sq: &Square) -> Result<ConstructiveLift, ConstructError> {
    LiftContext::new(cat, classes)?.lift(sq)
}

/// The mapping cylinder factorization `g = p_g∘i_g` of `g: X → Y`:
///
/// ```text
///        X --i0--> X⊔X --i01--> Cyl --p--> X
///        |           |           |
///        g         X⊔g         π_g
///        v           v           v
///        Y --σ_Y--> X⊔Y ---h---> M
/// ```
///
/// Both squares are pushouts. `i_g = h∘(X⊔g)∘i1`, `j_g = h∘σ_Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MappingCylinder {
    pub g: MorphId,
    pub cylinder: CylinderObject,
    pub fold: MorphId,
    pub x_sqcup_y: ObjId,
    pub x_sqcup_g: MorphId,
    pub sigma_y: MorphId,
    pub m: ObjId,
    pub pi_g: MorphId,
    pub h: MorphId,
    pub i_g: MorphId,
    pub j_g: MorphId,
    pub p_g: MorphId,
}

/// Builds the mapping cylinder of `g` between base-cofibrant objects and
/// asserts `i_g ∈ C_g`, `p_g ∈ W_g`, `j_g ∈ C_g∩W_g`.
pub fn mapping_cylinder_factorization(
    cat: &FinCat,
    base: &Classes,
    cand: &Classes,
    g: MorphId,
) -> Result<MappingCylinder, ConstructError> {
    let (x, y) = (cat.src(g), cat.tgt(g));
    let cofibrant = cofibrant_objects(cat, base.cof).map_err(|_| ConstructError::NoInitial)?;
    for o in [x, y] {
        if !cofibrant.contains(&o) {
            return Err(ConstructError::NotCofibrant(o));
        }
    }
    let cyl = find_cylinder(cat, cand, x, CylinderSide::Cylinder)?.ok_or(ConstructError::NoCylinder(x))?;
    let (fold, _, [in0, in1]) = fold_map(cat, x, CylinderSide::Cylinder)?;

    let p1 = cat.pushout(in0, g)?;
    let (x_sqcup_g, sigma_y) = (p1.first_leg(), p1.opposite_leg());
    let pm = cat.pushout(cyl.first, x_sqcup_g)?;
    let (pi_g, h) = (pm.first_leg(), pm.opposite_leg());

    let i_g = cat.comp_all(&[h, x_sqcup_g, in1]);
    let j_g = cat.comp(h, sigma_y);
    let g_fold = cat.comp(g, fold);
    let k = p1.mediator(&[g, g_fold, cat.id(y)]).ok_or(ConstructError::Commutation("X⊔Y → Y"))?;
    let p_g = pm.mediator(&[g_fold, cat.comp(g, cyl.second), k]).ok_or(ConstructError::Commutation("M → Y"))?;

    ensure(cat.comp(p_g, i_g) == g, "g = p_g∘i_g")?;
    ensure(cat.comp(p_g, j_g) == cat.id(y), "p_g∘j_g = id")?;
    ensure(cat.comp(g, cyl.second) == cat.comp(p_g, pi_g), "g∘p = p_g∘π_g")?;
    member(cand.cof, i_g, "C_g")?;
    member(cand.weq, p_g, "W_g")?;
    member(cand.trivial_cof(), j_g, "C_g∩W_g")?;
    Ok(MappingCylinder {
        g,
        cylinder: cyl,
        fold,
        x_sqcup_y: p1.apex,
        x_sqcup_g,
        sigma_y,
        m: pm.apex,
        pi_g,
        h,
        i_g,
        j_g,
        p_g,
    })
}

/// `v∘f̃ = f∘u` with `u`, `v` in W and cofibrant sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CofApproxSquare {
    pub f: MorphId,
    pub x_tilde: ObjId,
    pub y_tilde: ObjId,
    pub u: MorphId,
    pub v: MorphId,
    pub f_tilde: MorphId,
}

/// Cofibrant replacement of `f` in the base structure: factor `∅ → X` and
/// `∅ → Y` as (C, F∩W) and lift.
pub fn cofibrant_approximation(cat: &FinCat, base: &Classes, f: MorphId) -> Result<CofApproxSquare, ConstructError> {
    let (x, y) = (cat.src(f), cat.tgt(f));
    let to_x = cat.from_initial(x).ok_or(ConstructError::NoInitial)?;
    let to_y = cat.from_initial(y).ok_or(ConstructError::NoInitial)?;
    let fx = factor(cat, to_x, base.cof, base.trivial_fib(), "(C, F∩W)")?;
    let fy = factor(cat, to_y, base.cof, base.trivial_fib(), "(C, F∩W)")?;
    let sq = Square::new(cat, fx.left, fy.right, fy.left, cat.comp(f, fx.right))
        .ok_or(ConstructError::Commutation("replacement square"))?;
    let f_tilde = find_lift(cat, &sq).ok_or(ConstructError::NoLift(sq))?;
    Ok(CofApproxSquare { f, x_tilde: fx.middle, y_tilde: fy.middle, u: fx.right, v: fy.right, f_tilde })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CylinderFactorization {
    /// `f = q∘i`, `i ∈ C_g`, `q ∈ F_g∩W_g`.
    pub factorization: Factorization,
    pub approx: CofApproxSquare,
    pub cylinder: MappingCylinder,
    /// Pushout of `i_f̃` along `u`, with legs out of X and M.
    pub d: ObjId,
    pub x_to_d: MorphId,
    pub m_to_d: MorphId,
    /// Canonical `D → Y` and its (C_g∩W_g, F_g) factorization.
    pub d_to_y: MorphId,
    pub d_factor: Factorization,
}

/// Factors `f` as a map in C_g followed by one in F_g∩W_g, through a
/// cofibrant approximation of `f`, the mapping cylinder of the
/// approximation, one pushout and one (C_g∩W_g, F_g) factorization.
pub fn factor_cof_then_trivial_fib(
    cat: &FinCat,
    base: &Classes,
    cand: &Classes,
    f: MorphId,
) -> Result<CylinderFactorization, ConstructError> {
    let approx = cofibrant_approximation(cat, base, f)?;
    let mc = mapping_cylinder_factorization(cat, base, cand, approx.f_tilde)?;
    let po = cat.pushout(mc.i_g, approx.u)?;
    let (m_to_d, x_to_d) = (po.first_leg(), po.opposite_leg());
    member(cand.cof, x_to_d, "C_g")?;
    member(base.weq, m_to_d, "W")?;
    let f_u = cat.comp(f, approx.u);
    let d_to_y = po.mediator(&[f_u, cat.comp(approx.v, mc.p_g), f]).ok_or(ConstructError::Commutation("D → Y"))?;
    let df = factor(cat, d_to_y, cand.trivial_cof(), cand.fib, "(C_g∩W_g, F_g)")?;
    let i = cat.comp(df.left, x_to_d);
    let q = df.right;
    ensure(cat.comp(q, i) == f, "f = q∘i")?;
    member(cand.cof, i, "C_g")?;
    member(cand.trivial_fib(), q, "F_g∩W_g")?;
    Ok(CylinderFactorization {
        factorization: Factorization { f, left: i, middle: df.middle, right: q },
        approx,
        cylinder: mc,
        d: po.apex,
        x_to_d,
        m_to_d,
        d_to_y,
        d_factor: df,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modelstruct::Classes;
    use crate::morphclass::commuting_squares;

    #[test]
    fn identity_legs_lift() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        let ctx = LiftContext::new(&d, &m).unwrap();
        for f in d.morphisms() {
            let x = d.src(f);
            // i = id: the lift is forced to be the top map
            let sq = Square::new(&d, d.id(x), d.id(d.tgt(f)), f, f).unwrap();
            let got = ctx.lift(&sq).unwrap();
            assert!(sq.is_lift(&d, got.lift));
            assert!(find_lift(&d, &sq).is_some());
        }
    }

    #[test]
    fn every_square_in_diamond_minimal() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        let ctx = LiftContext::new(&d, &m).unwrap();
        let mut n = 0;
        for i in m.cof.iter() {
            for q in m.trivial_fib().iter() {
                for sq in commuting_squares(&d, i, q) {
                    let got = ctx.lift(&sq).unwrap();
                    assert!(sq.is_lift(&d, got.lift));
                    assert!(find_lift(&d, &sq).is_some());
                    n += 1;
                }
            }
        }
        assert!(n > 0);
    }

    #[test]
    fn assumption_failure_is_reported() {
        let a = fixtures::arrow();
        let all = MorphClass::all(&a);
        let err = LiftContext::new(&a, &Classes::new(all, all, all)).err().unwrap();
        assert!(matches!(err, ConstructError::Assumption { index: 3, .. }));
    }

    #[test]
    fn mapping_cylinder_of_identity_is_trivial() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        for x in d.objects() {
            let mc = mapping_cylinder_factorization(&d, &m, &m, d.id(x)).unwrap();
            assert_eq!(mc.m, x);
            assert_eq!((mc.i_g, mc.p_g, mc.j_g), (d.id(x), d.id(x), d.id(x)));
        }
    }

    #[test]
    fn mapping_cylinder_in_diamond() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        for g in d.morphisms() {
            let mc = mapping_cylinder_factorization(&d, &m, &m, g).unwrap();
            assert_eq!(d.comp(mc.p_g, mc.i_g), g);
            assert_eq!(d.comp(mc.p_g, mc.j_g), d.id(d.tgt(g)));
        }
    }

    #[test]
    fn constructive_factorization_in_diamond() {
        let d = fixtures::diamond();
        let m = Classes::minimal(&d);
        for f in d.morphisms() {
            let cf = factor_cof_then_trivial_fib(&d, &m, &m, f).unwrap();
            let fz = cf.factorization;
            assert_eq!(d.comp(fz.right, fz.left), f);
            assert!(m.cof.contains(fz.left));
            assert!(m.trivial_fib().contains(fz.right));
        }
        let id = d.id(ObjId(0));
        let cf = factor_cof_then_trivial_fib(&d, &m, &m, id).unwrap();
        assert_eq!((cf.factorization.left, cf.factorization.right), (id, id));
    }
}

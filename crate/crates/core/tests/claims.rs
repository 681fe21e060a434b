//! Exhaustive checks of the extension and Quillen statements over the small
//! fixtures. Every configuration meeting the hypotheses must meet the
//! conclusion.

use mcx_core::census::{enumerate_model_structures, scan_candidates, CensusResult, Mode, DEFAULT_BUDGET};
use mcx_core::extend::{classify_extension, lifting_defined_extension, Criterion, ExtensionKind, Side};
use mcx_core::fincat::{FinCat, ObjId};
use mcx_core::fixtures;
use mcx_core::modelstruct::{cofibrant_objects, fibrant_objects, ModelStructure};
use mcx_core::morphclass::{subsets, MorphClass};
use mcx_core::quillen::{
    derived_fullfaithful_check, is_quillen_equivalence, is_quillen_pair, Adjunction, Functor, QuillenError,
};

fn census(cat: &FinCat) -> CensusResult {
    enumerate_model_structures(cat, Mode::Pruned, DEFAULT_BUDGET).unwrap()
}

fn small() -> Vec<FinCat> {
    vec![fixtures::pt(), fixtures::arrow(), fixtures::chain2(), fixtures::diamond()]
}

fn ll_or_equal(base: &ModelStructure, ext: &ModelStructure) -> bool {
    matches!(classify_extension(base, ext).kind, ExtensionKind::Ll | ExtensionKind::Equal)
}

/// `D → pt` with right adjoint picking `x`; an adjunction only when `x` is terminal.
fn collapse<'a>(d: &'a FinCat, pt: &'a FinCat, x: ObjId) -> Option<Adjunction<'a>> {
    let star = ObjId(0);
    let unit = d.objects().map(|a| d.hom(a, x).first().copied()).collect::<Option<Vec<_>>>()?;
    Some(Adjunction {
        m: d,
        n: pt,
        left: Functor { objects: vec![star; d.object_count()], morphisms: vec![pt.id(star); d.morphism_count()] },
        right: Functor { objects: vec![x], morphisms: vec![d.id(x)] },
        unit,
        counit: vec![pt.id(star)],
    })
}

#[test]
fn minimal_structure_is_below_everything() {
    for cat in small().into_iter().chain([fixtures::boolean3()]) {
        let c = census(&cat);
        let m = c.index_of(&mcx_core::modelstruct::Classes::minimal(&cat)).unwrap();
        for s in &c.structures {
            assert!(ll_or_equal(&c.structures[m], s));
        }
    }
}

#[test]
fn lm_candidates_verify() {
    for cat in small() {
        let c = census(&cat);
        let r = scan_candidates(&cat, &c, Criterion::Lm, true).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert!(!r.accepted.is_empty());
    }
}

#[test]
fn lifting_defined_candidates_verify() {
    for cat in small() {
        let c = census(&cat);
        let all = MorphClass::all(&cat);
        let mut accepted = 0;
        for base in &c.structures {
            for wg in subsets(all.difference(base.weq())).map(|x| x | base.weq()) {
                for wp in subsets(wg.difference(base.weq())).map(|x| x | base.weq()) {
                    let (_, r) = lifting_defined_extension(&cat, base, wp, wg).unwrap();
                    if r.hypotheses_hold() {
                        accepted += 1;
                        assert!(r.passed(), "{r}");
                    } else {
                        assert!(r.verification.is_none());
                    }
                }
            }
        }
        assert!(accepted >= c.structures.len());
    }
}

#[test]
fn triangle_identities_match_hom_bijection() {
    let (d, pt) = (fixtures::diamond(), fixtures::pt());
    let mut valid = 0;
    for x in d.objects() {
        if let Some(adj) = collapse(&d, &pt, x) {
            let ok = adj.validate().is_empty();
            assert_eq!(ok, adj.hom_bijection_holds());
            valid += usize::from(ok);
        }
    }
    assert_eq!(valid, 1);
    for cat in small() {
        let id = Adjunction::identity(&cat);
        assert!(id.validate().is_empty() && id.hom_bijection_holds());
    }
}

#[test]
fn quillen_conditions_agree() {
    for cat in small() {
        let c = census(&cat);
        let id = Adjunction::identity(&cat);
        for m in &c.structures {
            for n in &c.structures {
                assert!(is_quillen_pair(&id, &m.classes, &n.classes).is_ok());
            }
        }
    }
    let (d, pt) = (fixtures::diamond(), fixtures::pt());
    let adj = collapse(&d, &pt, d.terminal().unwrap()).unwrap();
    let p = census(&pt).structures[0].classes;
    for m in &census(&d).structures {
        assert!(is_quillen_pair(&adj, &m.classes, &p).is_ok());
    }
}

/// Every (base pair, extension pair) of structures under `adj` where both are
/// Quillen pairs and each extension is ℓℓ or equal.
fn configurations<'a>(cm: &'a CensusResult, cn: &'a CensusResult, adj: &Adjunction) -> Vec<[&'a ModelStructure; 4]> {
    let mut out = Vec::new();
    for m in &cm.structures {
        for n in &cn.structures {
            if !is_quillen_pair(adj, &m.classes, &n.classes).unwrap().passed() {
                continue;
            }
            for mg in cm.structures.iter().filter(|s| ll_or_equal(m, s)) {
                for ng in cn.structures.iter().filter(|s| ll_or_equal(n, s)) {
                    if is_quillen_pair(adj, &mg.classes, &ng.classes).unwrap().passed() {
                        out.push([m, n, mg, ng]);
                    }
                }
            }
        }
    }
    out
}

fn adjunction_cases() -> Vec<(FinCat, FinCat, Option<ObjId>)> {
    let mut v: Vec<(FinCat, FinCat, Option<ObjId>)> = small().into_iter().map(|c| (c.clone(), c, None)).collect();
    let d = fixtures::diamond();
    let top = d.terminal();
    v.push((d, fixtures::pt(), top));
    v
}

fn adjunction_for<'a>(m: &'a FinCat, n: &'a FinCat, x: Option<ObjId>) -> Adjunction<'a> {
    match x {
        None => Adjunction::identity(m),
        Some(x) => collapse(m, n, x).unwrap(),
    }
}

#[test]
fn derived_full_faithfulness_passes_to_extensions() {
    let mut applied = 0;
    for (m, n, x) in adjunction_cases() {
        let adj = adjunction_for(&m, &n, x);
        let (cm, cn) = (census(&m), census(&n));
        for [bm, bn, em, en] in configurations(&cm, &cn, &adj) {
            for side in [Side::Right, Side::Left] {
                match derived_fullfaithful_check(&adj, &bm.classes, &bn.classes, &em.classes, &en.classes, side) {
                    Ok(r) => {
                        if r.base_full_faithful {
                            applied += 1;
                            assert!(r.extension_full_faithful, "{side:?}");
                            assert!(r.passed(), "{side:?}");
                        }
                    }
                    Err(QuillenError::CoincidenceFails(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert!(applied > 0);
}

#[test]
fn quillen_equivalences_pass_to_extensions() {
    let mut applied = 0;
    for (m, n, x) in adjunction_cases() {
        let adj = adjunction_for(&m, &n, x);
        let (cm, cn) = (census(&m), census(&n));
        for [bm, bn, em, en] in configurations(&cm, &cn, &adj) {
            if !is_quillen_equivalence(&adj, &bm.classes, &bn.classes).unwrap().passed() {
                continue;
            }
            if cofibrant_objects(&m, bm.cof()).unwrap() != cofibrant_objects(&m, em.cof()).unwrap()
                || fibrant_objects(&n, bn.fib()).unwrap() != fibrant_objects(&n, en.fib()).unwrap()
            {
                continue;
            }
            applied += 1;
            assert!(is_quillen_equivalence(&adj, &em.classes, &en.classes).unwrap().passed());
        }
    }
    assert!(applied > 0);
}

//! Exhaustive scans of extension candidates over census bases.
//!
//! For each base, every triple `(W_g, C_g, F_g)` meeting the containments of
//! the criterion is considered. Triples whose hypotheses all hold are then
//! verified as model structures; any failure there is a counterexample.
//!
//! The pruned scan filters each class on the hypotheses that read only that
//! class before forming pairs and triples. The unpruned scan checks every
//! triple in full and exists to cross-check the pruning.

use crate::extend::{hypothesis, Criterion, ExtendError};
use crate::fincat::FinCat;
use crate::modelstruct::{is_model_structure, Classes};
use crate::morphclass::{retract_closed, subsets, MorphClass};

use super::CensusResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub criterion: Criterion,
    pub pruned: bool,
    pub bases: usize,
    /// Triples meeting the containments, over all bases.
    pub candidates: u128,
    /// Triples whose every hypothesis was evaluated.
    pub examined: u64,
    /// `(base index, triple)` for every triple whose hypotheses all hold.
    pub accepted: Vec<(usize, Classes)>,
    /// Accepted triples that are not model structures.
    pub counterexamples: Vec<(usize, Classes)>,
}

fn domains(all: MorphClass, base: &Classes, criterion: Criterion) -> [(MorphClass, MorphClass); 3] {
    // (forced part, free part) for W_g, C_g, F_g
    let f = match criterion {
        Criterion::Lm => (base.fib, all.difference(base.fib)),
        _ => (MorphClass::EMPTY, base.fib),
    };
    [(base.weq, all.difference(base.weq)), (MorphClass::EMPTY, base.cof), f]
}

fn holds(cat: &FinCat, base: &Classes, cand: &Classes, c: Criterion, ks: &[usize]) -> Result<bool, ExtendError> {
    for &k in ks {
        if !hypothesis(cat, base, cand, c, k)?.passed() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn all_hold(cat: &FinCat, base: &Classes, cand: &Classes, c: Criterion) -> Result<bool, ExtendError> {
    holds(cat, base, cand, c, &(1..=c.hypothesis_count()).collect::<Vec<_>>())
}

/// Scans every base of `census` under `criterion` (cylinder, path or ℓm).
pub fn scan_candidates(
    cat: &FinCat,
    census: &CensusResult,
    criterion: Criterion,
    pruned: bool,
) -> Result<ScanReport, ExtendError> {
    assert!(criterion != Criterion::LiftingDefined, "lifting-defined extensions are not scanned by triple");
    let all = MorphClass::all(cat);
    let mut report = ScanReport {
        criterion,
        pruned,
        bases: census.structures.len(),
        candidates: 0,
        examined: 0,
        accepted: Vec::new(),
        counterexamples: Vec::new(),
    };
    for (bi, base) in census.structures.iter().enumerate() {
        let b = &base.classes;
        let [dw, dc, df] = domains(all, b, criterion);
        report.candidates += 1u128 << (dw.1.len() + dc.1.len() + df.1.len());
        let ws = subsets(dw.1).map(|x| x | dw.0);
        let cs = subsets(dc.1).map(|x| x | dc.0);
        let fs = subsets(df.1).map(|x| x | df.0);
        let mut accepted = Vec::new();
        if pruned {
            if criterion == Criterion::Lm && !hypothesis(cat, b, b, criterion, 6)?.passed() {
                continue;
            }
            let (c_only, f_only): (&[usize], &[usize]) = match criterion {
                Criterion::Cylinder => (&[3, 4, 6], &[]),
                Criterion::Path => (&[], &[3, 4, 6]),
                _ => (&[], &[3]),
            };
            let mut wl = Vec::new();
            for w in ws {
                if retract_closed(cat, w) && holds(cat, b, &Classes { weq: w, ..*b }, criterion, &[1])? {
                    wl.push(w);
                }
            }
            let mut cl = Vec::new();
            for c in cs {
                if retract_closed(cat, c) && holds(cat, b, &Classes { cof: c, ..*b }, criterion, c_only)? {
                    cl.push(c);
                }
            }
            let mut fl = Vec::new();
            for f in fs {
                if retract_closed(cat, f) && holds(cat, b, &Classes { fib: f, ..*b }, criterion, f_only)? {
                    fl.push(f);
                }
            }
            for &w in &wl {
                let cl: Vec<_> = match criterion {
                    Criterion::Cylinder => {
                        let mut keep = Vec::new();
                        for &c in &cl {
                            if holds(cat, b, &Classes { weq: w, cof: c, ..*b }, criterion, &[5])? {
                                keep.push(c);
                            }
                        }
                        keep
                    }
                    _ => cl.clone(),
                };
                let fl: Vec<_> = match criterion {
                    Criterion::Path => {
                        let mut keep = Vec::new();
                        for &f in &fl {
                            if holds(cat, b, &Classes { weq: w, fib: f, ..*b }, criterion, &[5])? {
                                keep.push(f);
                            }
                        }
                        keep
                    }
                    _ => fl.clone(),
                };
                for &c in &cl {
                    for &f in &fl {
                        let cand = Classes::new(w, c, f);
                        report.examined += 1;
                        if all_hold(cat, b, &cand, criterion)? {
                            accepted.push(cand);
                        }
                    }
                }
            }
        } else {
            let (cs, fs): (Vec<_>, Vec<_>) = (cs.collect(), fs.collect());
            for w in ws {
                for &c in &cs {
                    for &f in &fs {
                        let cand = Classes::new(w, c, f);
                        report.examined += 1;
                        if all_hold(cat, b, &cand, criterion)? {
                            accepted.push(cand);
                        }
                    }
                }
            }
        }
        accepted.sort_by_key(super::sort_key);
        for cand in accepted {
            if !is_model_structure(cat, &cand) {
                report.counterexamples.push((bi, cand));
            }
            report.accepted.push((bi, cand));
        }
    }
    Ok(report)
}

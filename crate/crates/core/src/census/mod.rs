//! Exhaustive enumeration of model structures and the extension graph
//! between them.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::extend::{classify_extension, ExtensionClass, ExtensionKind};
use crate::fincat::{is_finitely_bicomplete, FinCat};
use crate::modelstruct::{has_two_of_three, is_model_structure, Classes, ModelStructure};
use crate::morphclass::{llp, retract_closed, rlp, subsets, MorphClass};

pub mod scan;

pub use scan::{scan_candidates, ScanReport};

/// Default cap on the number of candidate triples.
pub const DEFAULT_BUDGET: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Naive,
    Pruned,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("category is not finitely bicomplete")]
    NotBicomplete,
    #[error("search needs 2^{log2} candidates, budget is {budget}")]
    BudgetExceeded { log2: u32, budget: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    /// Triples handed to the axiom check.
    pub tested: u64,
    pub found: u64,
}

/// An edge `from → to` means `to` classifies as an extension of `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub class: ExtensionClass,
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub mode: Mode,
    /// Sorted by the bits of (W, C, F).
    pub structures: Vec<ModelStructure>,
    /// Every ordered pair whose classification is neither `equal` nor `other`.
    pub edges: Vec<Edge>,
    pub counters: Counters,
    pub elapsed: Duration,
}

impl CensusResult {
    pub fn classes(&self) -> Vec<Classes> {
        self.structures.iter().map(|s| s.classes).collect()
    }

    pub fn index_of(&self, classes: &Classes) -> Option<usize> {
        self.structures.iter().position(|s| &s.classes == classes)
    }
}

/// The budget from `MCX_BUDGET`, or [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("MCX_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

fn guard(log2: u32, budget: u64) -> Result<(), CensusError> {
    if log2 >= 64 || (1u64 << log2) > budget {
        Err(CensusError::BudgetExceeded { log2, budget })
    } else {
        Ok(())
    }
}

fn sort_key(c: &Classes) -> (u128, u128, u128) {
    (c.weq.bits(), c.cof.bits(), c.fib.bits())
}

/// Every model structure on `cat`.
///
/// Naive mode tries every triple with identities in all three classes and
/// isomorphisms in W. Pruned mode keeps only W with two-of-three and retract
/// closure, C retract-closed with `C = llp(rlp(C))`, and takes
/// `F = rlp(C ∩ W)`. The budget caps `2^(3k)` for `k` non-identity morphisms
/// in naive mode and `2^k` per class in pruned mode.
pub fn enumerate_model_structures(cat: &FinCat, mode: Mode, budget: u64) -> Result<CensusResult, CensusError> {
    if !is_finitely_bicomplete(cat).is_complete() {
        return Err(CensusError::NotBicomplete);
    }
    let start = Instant::now();
    let ids = MorphClass::identities(cat);
    let isos = MorphClass::isos(cat);
    let free = MorphClass::all(cat).difference(ids);
    let k = free.len() as u32;
    let mut counters = Counters::default();
    let mut found = Vec::new();
    match mode {
        Mode::Naive => {
            guard(3 * k, budget)?;
            for w in subsets(free.difference(isos)) {
                let weq = w | isos | ids;
                for c in subsets(free) {
                    for f in subsets(free) {
                        let cand = Classes::new(weq, c | ids, f | ids);
                        counters.tested += 1;
                        if is_model_structure(cat, &cand) {
                            found.push(cand);
                        }
                    }
                }
            }
        }
        Mode::Pruned => {
            guard(k, budget)?;
            let ws: Vec<_> = subsets(free.difference(isos))
                .map(|w| w | isos | ids)
                .filter(|&w| has_two_of_three(cat, w) && retract_closed(cat, w))
                .collect();
            let cs: Vec<_> = subsets(free.difference(isos))
                .map(|c| c | isos | ids)
                .filter(|&c| retract_closed(cat, c) && llp(cat, rlp(cat, c)) == c)
                .collect();
            for &weq in &ws {
                for &cof in &cs {
                    let cand = Classes::new(weq, cof, rlp(cat, cof & weq));
                    counters.tested += 1;
                    if is_model_structure(cat, &cand) {
                        found.push(cand);
                    }
                }
            }
        }
    }
    found.sort_by_key(sort_key);
    found.dedup();
    counters.found = found.len() as u64;
    let structures: Vec<ModelStructure> = found
        .into_iter()
        .map(|c| ModelStructure::new(cat, c).expect("fast check accepted a triple the full check rejects"))
        .collect();
    let edges = edges(&structures);
    Ok(CensusResult { mode, structures, edges, counters, elapsed: start.elapsed() })
}

fn edges(structures: &[ModelStructure]) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, a) in structures.iter().enumerate() {
        for (j, b) in structures.iter().enumerate() {
            if i == j {
                continue;
            }
            let class = classify_extension(a, b);
            if !matches!(class.kind, ExtensionKind::Equal | ExtensionKind::Other) {
                out.push(Edge { from: i, to: j, class });
            }
        }
    }
    out
}

/// Indices of census structures whose classification against `base` is
/// `kind` (any kind but `other` when `None`).
pub fn enumerate_extensions(census: &CensusResult, base: usize, kind: Option<ExtensionKind>) -> Vec<usize> {
    let b = &census.structures[base];
    census
        .structures
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            let k = classify_extension(b, s).kind;
            match kind {
                Some(want) => k == want,
                None => k != ExtensionKind::Other,
            }
        })
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionGraph {
    pub nodes: usize,
    pub edges: Vec<Edge>,
    /// Index of the structure with W = isos, C = F = everything.
    pub minimal: Option<usize>,
    /// Every other node is the target of an ℓℓ edge from the minimal one.
    pub minimal_reaches_all: bool,
}

pub fn extension_graph(cat: &FinCat, census: &CensusResult) -> ExtensionGraph {
    let minimal = census.index_of(&Classes::minimal(cat));
    let minimal_reaches_all = minimal.is_some_and(|m| {
        (0..census.structures.len())
            .filter(|&j| j != m)
            .all(|j| census.edges.iter().any(|e| e.from == m && e.to == j && e.class.kind == ExtensionKind::Ll))
    });
    ExtensionGraph { nodes: census.structures.len(), edges: census.edges.clone(), minimal, minimal_reaches_all }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modelstruct::verify_model_structure;

    /// Every triple of subsets, nothing forced.
    fn brute(cat: &FinCat) -> Vec<Classes> {
        let all = MorphClass::all(cat);
        let mut out = Vec::new();
        for w in subsets(all) {
            for c in subsets(all) {
                for f in subsets(all) {
                    let cand = Classes::new(w, c, f);
                    if verify_model_structure(cat, &cand).passed() {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort_by_key(sort_key);
        out
    }

    #[test]
    fn point_has_one_structure() {
        let pt = fixtures::pt();
        for mode in [Mode::Naive, Mode::Pruned] {
            let c = enumerate_model_structures(&pt, mode, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.classes(), vec![Classes::minimal(&pt)]);
            assert!(c.edges.is_empty());
        }
    }

    #[test]
    fn arrow_matches_unforced_brute_force() {
        let a = fixtures::arrow();
        let naive = enumerate_model_structures(&a, Mode::Naive, DEFAULT_BUDGET).unwrap();
        assert_eq!(naive.classes(), brute(&a));
        assert_eq!(naive.structures.len(), 3);
        assert_eq!(naive.counters.tested, 8);
    }

    #[test]
    fn modes_agree_on_small_fixtures() {
        for cat in [fixtures::arrow(), fixtures::chain2(), fixtures::diamond()] {
            let naive = enumerate_model_structures(&cat, Mode::Naive, DEFAULT_BUDGET).unwrap();
            let pruned = enumerate_model_structures(&cat, Mode::Pruned, DEFAULT_BUDGET).unwrap();
            assert_eq!(naive.classes(), pruned.classes());
            assert!(pruned.counters.tested <= naive.counters.tested);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let d = fixtures::diamond();
        assert_eq!(
            enumerate_model_structures(&d, Mode::Naive, 1 << 14).unwrap_err(),
            CensusError::BudgetExceeded { log2: 15, budget: 1 << 14 }
        );
        assert!(enumerate_model_structures(&d, Mode::Pruned, 1 << 14).is_ok());
        let r = fixtures::retract();
        assert_eq!(
            enumerate_model_structures(&r, Mode::Naive, DEFAULT_BUDGET).unwrap_err(),
            CensusError::NotBicomplete
        );
    }

    #[test]
    fn minimal_is_the_source() {
        for cat in [fixtures::pt(), fixtures::arrow(), fixtures::diamond()] {
            let c = enumerate_model_structures(&cat, Mode::Pruned, DEFAULT_BUDGET).unwrap();
            let g = extension_graph(&cat, &c);
            let m = g.minimal.unwrap();
            assert!(g.minimal_reaches_all);
            let others: Vec<usize> = (0..c.structures.len()).filter(|&j| j != m).collect();
            assert_eq!(enumerate_extensions(&c, m, Some(ExtensionKind::Ll)), others);
            assert_eq!(enumerate_extensions(&c, m, Some(ExtensionKind::Equal)), vec![m]);
        }
    }

    #[test]
    fn strict_ll_edges_are_antisymmetric() {
        let d = fixtures::diamond();
        let c = enumerate_model_structures(&d, Mode::Pruned, DEFAULT_BUDGET).unwrap();
        for e in c.edges.iter().filter(|e| e.class.kind == ExtensionKind::Ll && e.class.proper_w) {
            assert!(!c.edges.iter().any(|r| r.from == e.to && r.to == e.from && r.class.kind == ExtensionKind::Ll));
        }
    }
}

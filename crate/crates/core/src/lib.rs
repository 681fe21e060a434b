//! Finite model categories.
//!
//! A finite category is stored as a dense composition table ([`fincat`]).
//! Classes of morphisms are bitsets ([`morphclass`]), and every check on
//! them reduces to exhaustive enumeration over hom-sets.

pub mod census;
pub mod extend;
pub mod fincat;
pub mod fixtures;
pub mod modelstruct;
pub mod morphclass;
pub mod quillen;

use std::fmt;

use crate::fincat::{FinCat, MorphId, ObjId};

/// A commuting square `right ∘ top = bottom ∘ left`:
///
/// ```text
///   A --top--> X
///   |          |
/// left       right
///   v          v
///   B -bottom-> Y
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub left: MorphId,
    pub right: MorphId,
    pub top: MorphId,
    pub bottom: MorphId,
}

pub type SquareLiftProblem = Square;

impl Square {
    /// `None` unless the four maps are typed as a square and it commutes.
    pub fn new(cat: &FinCat, left: MorphId, right: MorphId, top: MorphId, bottom: MorphId) -> Option<Square> {
        let typed = cat.src(top) == cat.src(left)
            && cat.tgt(top) == cat.src(right)
            && cat.src(bottom) == cat.tgt(left)
            && cat.tgt(bottom) == cat.tgt(right);
        (typed && cat.comp(right, top) == cat.comp(bottom, left)).then_some(Square { left, right, top, bottom })
    }

    /// `h` is a diagonal filler.
    pub fn is_lift(&self, cat: &FinCat, h: MorphId) -> bool {
        cat.src(h) == cat.tgt(self.left)
            && cat.tgt(h) == cat.src(self.right)
            && cat.comp(h, self.left) == self.top
            && cat.comp(self.right, h) == self.bottom
    }

    /// The same square read in the opposite category.
    pub fn dual(&self) -> Square {
        Square { left: self.right, right: self.left, top: self.bottom, bottom: self.top }
    }
}

/// `f` is a retract of `g` in the arrow category:
/// `r_src∘i_src = id`, `r_tgt∘i_tgt = id`, `g∘i_src = i_tgt∘f`, `f∘r_src = r_tgt∘g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RetractDiagram {
    pub f: MorphId,
    pub g: MorphId,
    pub i_src: MorphId,
    pub r_src: MorphId,
    pub i_tgt: MorphId,
    pub r_tgt: MorphId,
}

impl RetractDiagram {
    pub fn dual(&self) -> RetractDiagram {
        RetractDiagram {
            f: self.f,
            g: self.g,
            i_src: self.r_tgt,
            r_src: self.i_tgt,
            i_tgt: self.r_src,
            r_tgt: self.i_src,
        }
    }
}

/// Evidence attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Exactly two of `first`, `second`, `second∘first` lie in the class.
    TwoOfThree {
        first: MorphId,
        second: MorphId,
        composite: MorphId,
    },
    Retract(RetractDiagram),
    /// `first`, `second` lie in the class but `second∘first` does not.
    Composition {
        first: MorphId,
        second: MorphId,
        composite: MorphId,
    },
    /// The pushout of `map` along `along` is `result`.
    Pushout {
        map: MorphId,
        along: MorphId,
        result: MorphId,
    },
    /// The pullback of `map` along `along` is `result`.
    Pullback {
        map: MorphId,
        along: MorphId,
        result: MorphId,
    },
    /// A commuting square with no diagonal filler.
    Square(Square),
    Unfactorable(MorphId),
    Morphism(MorphId),
    Object(ObjId),
    /// `composite = second∘first` with the offending member named by `culprit`.
    Triangle {
        first: MorphId,
        second: MorphId,
        composite: MorphId,
        culprit: MorphId,
    },
    Message(String),
}

impl Witness {
    /// Re-reads a witness found in the opposite category.
    pub fn dual(&self) -> Witness {
        match self {
            Witness::TwoOfThree { first, second, composite } => {
                Witness::TwoOfThree { first: *second, second: *first, composite: *composite }
            }
            Witness::Composition { first, second, composite } => {
                Witness::Composition { first: *second, second: *first, composite: *composite }
            }
            Witness::Retract(r) => Witness::Retract(r.dual()),
            Witness::Pushout { map, along, result } => Witness::Pullback { map: *map, along: *along, result: *result },
            Witness::Pullback { map, along, result } => Witness::Pushout { map: *map, along: *along, result: *result },
            Witness::Square(s) => Witness::Square(s.dual()),
            Witness::Triangle { first, second, composite, culprit } => {
                Witness::Triangle { first: *second, second: *first, composite: *composite, culprit: *culprit }
            }
            other => other.clone(),
        }
    }

    /// Human-readable rendering using the category's names.
    pub fn describe(&self, cat: &FinCat) -> String {
        let n = |m: &MorphId| cat.name(*m).to_string();
        match self {
            Witness::TwoOfThree { first, second, composite } => {
                format!("two-of-three fails for {} then {} (composite {})", n(first), n(second), n(composite))
            }
            Witness::Retract(r) => format!(
                "{} is a retract of {} via ({}, {}, {}, {})",
                n(&r.f),
                n(&r.g),
                n(&r.i_src),
                n(&r.r_src),
                n(&r.i_tgt),
                n(&r.r_tgt)
            ),
            Witness::Composition { first, second, composite } => {
                format!("{}∘{} = {} leaves the class", n(second), n(first), n(composite))
            }
            Witness::Pushout { map, along, result } => {
                format!("pushout of {} along {} is {}", n(map), n(along), n(result))
            }
            Witness::Pullback { map, along, result } => {
                format!("pullback of {} along {} is {}", n(map), n(along), n(result))
            }
            Witness::Square(s) => format!(
                "square left={} right={} top={} bottom={} has no lift",
                n(&s.left),
                n(&s.right),
                n(&s.top),
                n(&s.bottom)
            ),
            Witness::Unfactorable(m) => format!("{} has no factorization of the required kind", n(m)),
            Witness::Morphism(m) => format!("morphism {}", n(m)),
            Witness::Object(o) => format!("object {}", cat.object_name(*o)),
            Witness::Triangle { first, second, composite, culprit } => {
                format!("triangle {}∘{} = {} fails at {}", n(second), n(first), n(composite), n(culprit))
            }
            Witness::Message(s) => s.clone(),
        }
    }
}

/// Pass, or fail with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Pass,
    Fail(Witness),
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CheckResult::Pass => None,
            CheckResult::Fail(w) => Some(w),
        }
    }

    /// First failure wins.
    pub fn and(self, next: impl FnOnce() -> CheckResult) -> CheckResult {
        match self {
            CheckResult::Pass => next(),
            fail => fail,
        }
    }

    pub fn from_witness(w: Option<Witness>) -> CheckResult {
        w.map_or(CheckResult::Pass, CheckResult::Fail)
    }

    pub fn dual(&self) -> CheckResult {
        match self {
            CheckResult::Pass => CheckResult::Pass,
            CheckResult::Fail(w) => CheckResult::Fail(w.dual()),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckResult::Pass => write!(f, "pass"),
            CheckResult::Fail(w) => write!(f, "fail ({w:?})"),
        }
    }
}

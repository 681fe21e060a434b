//! Finite (co)limits by exhaustive search.
//!
//! Every candidate apex is tried in object order, and every (co)cone at that
//! apex in lexicographic leg order; the first one whose universal property
//! holds against all competing (co)cones is returned. The full mediator table
//! is kept with the result.

use std::fmt;

use thiserror::Error;

use super::{FinCat, MorphId, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Initial,
    Terminal,
    Coproduct(ObjId, ObjId),
    Product(ObjId, ObjId),
    /// A span `B ← A → C`, given as the two maps out of `A`.
    Pushout(MorphId, MorphId),
    /// A cospan `B → D ← C`, given as the two maps into `D`.
    Pullback(MorphId, MorphId),
}

impl Shape {
    pub fn is_colimit(&self) -> bool {
        matches!(self, Shape::Initial | Shape::Coproduct(..) | Shape::Pushout(..))
    }

    /// The same diagram read in the opposite category.
    pub fn dual(&self) -> Shape {
        match *self {
            Shape::Initial => Shape::Terminal,
            Shape::Terminal => Shape::Initial,
            Shape::Coproduct(a, b) => Shape::Product(a, b),
            Shape::Product(a, b) => Shape::Coproduct(a, b),
            Shape::Pushout(f, g) => Shape::Pullback(f, g),
            Shape::Pullback(f, g) => Shape::Pushout(f, g),
        }
    }

    pub fn describe(&self, cat: &FinCat) -> String {
        let o = |x: ObjId| cat.object_name(x).to_string();
        let m = |x: MorphId| cat.name(x).to_string();
        match *self {
            Shape::Initial => "initial object".into(),
            Shape::Terminal => "terminal object".into(),
            Shape::Coproduct(a, b) => format!("coproduct {} ⊔ {}", o(a), o(b)),
            Shape::Product(a, b) => format!("product {} × {}", o(a), o(b)),
            Shape::Pushout(f, g) => format!("pushout of span ({}, {})", m(f), m(g)),
            Shape::Pullback(f, g) => format!("pullback of cospan ({}, {})", m(f), m(g)),
        }
    }

    fn diagram(&self, cat: &FinCat) -> Result<Diagram, LimitError> {
        Ok(match *self {
            Shape::Initial | Shape::Terminal => Diagram { objects: vec![], arrows: vec![] },
            Shape::Coproduct(a, b) | Shape::Product(a, b) => {
                check_object(cat, a)?;
                check_object(cat, b)?;
                Diagram { objects: vec![a, b], arrows: vec![] }
            }
            Shape::Pushout(f, g) => {
                check_morphism(cat, f)?;
                check_morphism(cat, g)?;
                if cat.src(f) != cat.src(g) {
                    return Err(LimitError::InvalidShape(format!(
                        "`{}` and `{}` do not form a span",
                        cat.name(f),
                        cat.name(g)
                    )));
                }
                Diagram { objects: vec![cat.src(f), cat.tgt(f), cat.tgt(g)], arrows: vec![(0, 1, f), (0, 2, g)] }
            }
            Shape::Pullback(f, g) => {
                check_morphism(cat, f)?;
                check_morphism(cat, g)?;
                if cat.tgt(f) != cat.tgt(g) {
                    return Err(LimitError::InvalidShape(format!(
                        "`{}` and `{}` do not form a cospan",
                        cat.name(f),
                        cat.name(g)
                    )));
                }
                Diagram { objects: vec![cat.src(f), cat.src(g), cat.tgt(f)], arrows: vec![(0, 2, f), (1, 2, g)] }
            }
        })
    }
}

fn check_object(cat: &FinCat, o: ObjId) -> Result<(), LimitError> {
    if o.0 < cat.object_count() {
        Ok(())
    } else {
        Err(LimitError::InvalidShape(format!("no object {o}")))
    }
}

fn check_morphism(cat: &FinCat, m: MorphId) -> Result<(), LimitError> {
    if m.0 < cat.morphism_count() {
        Ok(())
    } else {
        Err(LimitError::InvalidShape(format!("no morphism {m}")))
    }
}

struct Diagram {
    objects: Vec<ObjId>,
    arrows: Vec<(usize, usize, MorphId)>,
}

/// A (co)cone that competes with the candidate, and the mediator into (out of) it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mediator {
    pub apex: ObjId,
    pub legs: Vec<MorphId>,
    pub via: MorphId,
}

/// A verified (co)limit. `legs[i]` is the leg at the i-th diagram object:
/// `[]` for initial/terminal, `[X, Y]` for (co)products, `[A, B, C]` for a
/// span `B ← A → C`, and `[B, C, D]` for a cospan `B → D ← C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universal {
    pub shape: Shape,
    pub apex: ObjId,
    pub legs: Vec<MorphId>,
    pub mediators: Vec<Mediator>,
}

impl Universal {
    /// The unique mediator to (colimit) or from (limit) the (co)cone with `legs`.
    pub fn mediator(&self, legs: &[MorphId]) -> Option<MorphId> {
        self.mediators.iter().find(|m| m.legs == legs).map(|m| m.via)
    }

    /// For a pushout of `(f, g)`: the leg out of the codomain of `g`, which is
    /// the pushout of `f` along `g`. For a pullback of `(f, g)`: the leg into
    /// the domain of `g`, the pullback of `f` along `g`.
    pub fn opposite_leg(&self) -> MorphId {
        match self.shape {
            Shape::Pushout(..) => self.legs[2],
            Shape::Pullback(..) => self.legs[1],
            _ => panic!("opposite_leg on a non-square shape"),
        }
    }

    /// The leg paired with the first map of the span (cospan).
    pub fn first_leg(&self) -> MorphId {
        match self.shape {
            Shape::Pushout(..) => self.legs[1],
            Shape::Pullback(..) => self.legs[0],
            _ => panic!("first_leg on a non-square shape"),
        }
    }
}

pub type ColimitResult = Universal;
pub type LimitResult = Universal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApexReason {
    NoCone,
    NoMediator { legs: Vec<MorphId>, competitor: ObjId, competitor_legs: Vec<MorphId> },
    ManyMediators { legs: Vec<MorphId>, competitor: ObjId, competitor_legs: Vec<MorphId>, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexFailure {
    pub apex: ObjId,
    pub reason: ApexReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("invalid diagram: {0}")]
    InvalidShape(String),
    #[error("no {kind} exists ({} apexes rejected)", failures.len())]
    NoUniversal { kind: &'static str, shape: Shape, failures: Vec<ApexFailure> },
}

fn cones(cat: &FinCat, d: &Diagram, apex: ObjId, co: bool) -> Vec<Vec<MorphId>> {
    let choices: Vec<&[MorphId]> =
        d.objects.iter().map(|&x| if co { cat.hom(x, apex) } else { cat.hom(apex, x) }).collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let legs: Vec<MorphId> = pick.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
        let commutes =
            d.arrows.iter().all(
                |&(a, b, m)| {
                    if co {
                        cat.comp(legs[b], m) == legs[a]
                    } else {
                        cat.comp(m, legs[a]) == legs[b]
                    }
                },
            );
        if commutes {
            out.push(legs);
        }
        // odometer, last position fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < choices[pos].len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

fn universal(cat: &FinCat, shape: Shape) -> Result<Universal, LimitError> {
    let d = shape.diagram(cat)?;
    let co = shape.is_colimit();
    let all: Vec<(ObjId, Vec<Vec<MorphId>>)> = cat.objects().map(|q| (q, cones(cat, &d, q, co))).collect();
    let mut failures = Vec::new();
    for (apex, at_apex) in &all {
        if at_apex.is_empty() {
            failures.push(ApexFailure { apex: *apex, reason: ApexReason::NoCone });
            continue;
        }
        let mut first_failure = None;
        'cone: for legs in at_apex {
            let mut mediators = Vec::new();
            for (other, competitors) in &all {
                let candidates = if co { cat.hom(*apex, *other) } else { cat.hom(*other, *apex) };
                for theirs in competitors {
                    let mut found =
                        candidates.iter().copied().filter(|&u| {
                            legs.iter().zip(theirs).all(|(&mine, &t)| {
                                if co {
                                    cat.comp(u, mine) == t
                                } else {
                                    cat.comp(mine, u) == t
                                }
                            })
                        });
                    let first = found.next();
                    let extra = found.count();
                    match (first, extra) {
                        (Some(via), 0) => mediators.push(Mediator { apex: *other, legs: theirs.clone(), via }),
                        (None, _) => {
                            first_failure.get_or_insert(ApexReason::NoMediator {
                                legs: legs.clone(),
                                competitor: *other,
                                competitor_legs: theirs.clone(),
                            });
                            continue 'cone;
                        }
                        (Some(_), extra) => {
                            first_failure.get_or_insert(ApexReason::ManyMediators {
                                legs: legs.clone(),
                                competitor: *other,
                                competitor_legs: theirs.clone(),
                                count: extra + 1,
                            });
                            continue 'cone;
                        }
                    }
                }
            }
            return Ok(Universal { shape, apex: *apex, legs: legs.clone(), mediators });
        }
        failures.push(ApexFailure { apex: *apex, reason: first_failure.expect("a cone was rejected") });
    }
    let kind = match shape {
        Shape::Initial => "initial object",
        Shape::Terminal => "terminal object",
        Shape::Coproduct(..) => "coproduct",
        Shape::Product(..) => "product",
        Shape::Pushout(..) => "pushout",
        Shape::Pullback(..) => "pullback",
    };
    Err(LimitError::NoUniversal { kind, shape, failures })
}

/// Initial object, coproduct, or pushout.
pub fn colimit(cat: &FinCat, shape: Shape) -> Result<ColimitResult, LimitError> {
    if !shape.is_colimit() {
        return Err(LimitError::InvalidShape(format!("{shape:?} is a limit shape")));
    }
    universal(cat, shape)
}

/// Terminal object, product, or pullback.
pub fn limit(cat: &FinCat, shape: Shape) -> Result<LimitResult, LimitError> {
    if shape.is_colimit() {
        return Err(LimitError::InvalidShape(format!("{shape:?} is a colimit shape")));
    }
    universal(cat, shape)
}

impl FinCat {
    pub fn initial(&self) -> Option<ObjId> {
        colimit(self, Shape::Initial).ok().map(|u| u.apex)
    }

    pub fn terminal(&self) -> Option<ObjId> {
        limit(self, Shape::Terminal).ok().map(|u| u.apex)
    }

    /// The unique map out of the initial object.
    pub fn from_initial(&self, x: ObjId) -> Option<MorphId> {
        let i = self.initial()?;
        self.hom(i, x).first().copied()
    }

    /// The unique map into the terminal object.
    pub fn to_terminal(&self, x: ObjId) -> Option<MorphId> {
        let t = self.terminal()?;
        self.hom(x, t).first().copied()
    }

    pub fn pushout(&self, f: MorphId, g: MorphId) -> Result<Universal, LimitError> {
        colimit(self, Shape::Pushout(f, g))
    }

    pub fn pullback(&self, f: MorphId, g: MorphId) -> Result<Universal, LimitError> {
        limit(self, Shape::Pullback(f, g))
    }
}

/// Which of the (co)limits used by the extension theorems are missing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bicompleteness {
    pub missing: Vec<Shape>,
}

impl Bicompleteness {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }
}

impl fmt::Display for Bicompleteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} missing (co)limits", self.missing.len())
    }
}

/// Checks initial and terminal objects, all binary (co)products, all pushouts
/// and all pullbacks.
pub fn is_finitely_bicomplete(cat: &FinCat) -> Bicompleteness {
    let mut missing = Vec::new();
    let mut try_shape = |s: Shape| {
        if universal(cat, s).is_err() {
            missing.push(s);
        }
    };
    try_shape(Shape::Initial);
    try_shape(Shape::Terminal);
    for a in cat.objects() {
        for b in cat.objects() {
            try_shape(Shape::Coproduct(a, b));
            try_shape(Shape::Product(a, b));
        }
    }
    for f in cat.morphisms() {
        for g in cat.morphisms() {
            if cat.src(f) == cat.src(g) {
                try_shape(Shape::Pushout(f, g));
            }
            if cat.tgt(f) == cat.tgt(g) {
                try_shape(Shape::Pullback(f, g));
            }
        }
    }
    Bicompleteness { missing }
}

//! The homotopy category on cofibrant-fibrant objects.
//!
//! Two maps are identified when a left homotopy exists through the first
//! cylinder object of the source. The relation is recomputed through every
//! cylinder and through the first path object of the target; all three must
//! agree, and the result must be an equivalence relation compatible with
//! composition. Any disagreement is an error, never silently repaired.

use thiserror::Error;

use super::{all_cylinders, boundary_objects, Boundary, BoundaryError, CylinderObject, CylinderSide, ModelStructure};
use crate::fincat::{FinCat, LimitError, MorphId, ObjId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("object {0} has no cylinder or path object")]
    NoCylinder(ObjId),
    #[error("left and right homotopy disagree on {f} and {g}")]
    LeftRightMismatch { f: MorphId, g: MorphId },
    #[error("homotopy through one cylinder differs from homotopy through some cylinder on {f} and {g}")]
    CylinderDependence { f: MorphId, g: MorphId },
    #[error("homotopy is not transitive: {f} ~ {g} ~ {h}")]
    NotTransitive { f: MorphId, g: MorphId, h: MorphId },
    #[error("homotopy is not symmetric on {f} and {g}")]
    NotSymmetric { f: MorphId, g: MorphId },
    #[error("composition is not well defined on classes of {f} and {g}")]
    NotCompatible { f: MorphId, g: MorphId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoCategory {
    /// Cofibrant-fibrant objects, in object order.
    pub objects: Vec<ObjId>,
    /// Homotopy classes, each sorted, ordered by least member.
    pub classes: Vec<Vec<MorphId>>,
    class_of: Vec<Option<usize>>,
}

impl HoCategory {
    /// The class of `m`, if both ends are cofibrant-fibrant.
    pub fn class_of(&self, m: MorphId) -> Option<usize> {
        self.class_of[m.0]
    }

    /// The class of `g∘f` for representatives of classes `g` and `f`.
    pub fn compose(&self, cat: &FinCat, g: usize, f: usize) -> Option<usize> {
        let gf = cat.compose(self.classes[g][0], self.classes[f][0])?;
        self.class_of(gf)
    }

    /// Number of classes from `x` to `y`.
    pub fn hom_size(&self, cat: &FinCat, x: ObjId, y: ObjId) -> usize {
        self.classes.iter().filter(|c| cat.src(c[0]) == x && cat.tgt(c[0]) == y).count()
    }
}

fn left_homotopic(cat: &FinCat, cyl: &CylinderObject, y: ObjId, f: MorphId, g: MorphId) -> bool {
    let j0 = cat.comp(cyl.first, cyl.legs[0]);
    let j1 = cat.comp(cyl.first, cyl.legs[1]);
    cat.hom(cyl.cyl, y).iter().any(|&h| cat.comp(h, j0) == f && cat.comp(h, j1) == g)
}

fn right_homotopic(cat: &FinCat, path: &CylinderObject, x: ObjId, f: MorphId, g: MorphId) -> bool {
    let q0 = cat.comp(path.legs[0], path.second);
    let q1 = cat.comp(path.legs[1], path.second);
    cat.hom(x, path.cyl).iter().any(|&k| cat.comp(q0, k) == f && cat.comp(q1, k) == g)
}

pub fn homotopy_category(cat: &FinCat, ms: &ModelStructure) -> Result<HoCategory, HomotopyError> {
    let cof = boundary_objects(cat, &ms.classes, Boundary::Cofibrant)?;
    let fib = boundary_objects(cat, &ms.classes, Boundary::Fibrant)?;
    let objects: Vec<ObjId> = cof.into_iter().filter(|x| fib.contains(x)).collect();

    let mut cylinders = Vec::new();
    let mut paths = Vec::new();
    for &x in &objects {
        let cyl = all_cylinders(cat, &ms.classes, x, CylinderSide::Cylinder)?;
        let path = all_cylinders(cat, &ms.classes, x, CylinderSide::Path)?;
        if cyl.is_empty() || path.is_empty() {
            return Err(HomotopyError::NoCylinder(x));
        }
        cylinders.push(cyl);
        paths.push(path);
    }

    let mut classes: Vec<Vec<MorphId>> = Vec::new();
    let mut class_of = vec![None; cat.morphism_count()];
    for (xi, &x) in objects.iter().enumerate() {
        for (yi, &y) in objects.iter().enumerate() {
            let hom = cat.hom(x, y);
            let rel = |f: MorphId, g: MorphId| left_homotopic(cat, &cylinders[xi][0], y, f, g);
            for &f in hom {
                for &g in hom {
                    let first = rel(f, g);
                    if cylinders[xi].iter().any(|c| left_homotopic(cat, c, y, f, g)) != first {
                        return Err(HomotopyError::CylinderDependence { f, g });
                    }
                    if right_homotopic(cat, &paths[yi][0], x, f, g) != first {
                        return Err(HomotopyError::LeftRightMismatch { f, g });
                    }
                    if first != rel(g, f) {
                        return Err(HomotopyError::NotSymmetric { f, g });
                    }
                    if first {
                        if let Some(&h) = hom.iter().find(|&&h| rel(g, h) && !rel(f, h)) {
                            return Err(HomotopyError::NotTransitive { f, g, h });
                        }
                    }
                }
            }
            for &f in hom {
                if class_of[f.0].is_some() {
                    continue;
                }
                let members: Vec<MorphId> = hom.iter().copied().filter(|&g| rel(f, g)).collect();
                for &g in &members {
                    class_of[g.0] = Some(classes.len());
                }
                classes.push(members);
            }
        }
    }

    // composition must respect classes
    for a in cat.morphisms() {
        for b in cat.morphisms() {
            let (Some(ca), Some(cb)) = (class_of[a.0], class_of[b.0]) else { continue };
            if cat.tgt(a) != cat.src(b) {
                continue;
            }
            let want = class_of[cat.comp(b, a).0];
            for &a2 in &classes[ca] {
                for &b2 in &classes[cb] {
                    if class_of[cat.comp(b2, a2).0] != want {
                        return Err(HomotopyError::NotCompatible { f: a2, g: b2 });
                    }
                }
            }
        }
    }

    Ok(HoCategory { objects, classes, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modelstruct::minimal_model_structure;

    #[test]
    fn minimal_structure_has_no_identifications() {
        for cat in [fixtures::pt(), fixtures::diamond(), fixtures::chain2()] {
            let ms = minimal_model_structure(&cat).unwrap();
            let ho = homotopy_category(&cat, &ms).unwrap();
            assert_eq!(ho.objects.len(), cat.object_count());
            assert_eq!(ho.classes.len(), cat.morphism_count());
            for x in cat.objects() {
                for y in cat.objects() {
                    assert_eq!(ho.hom_size(&cat, x, y), cat.hom(x, y).len());
                }
            }
        }
    }

    #[test]
    fn equal_maps_are_homotopic() {
        let d = fixtures::diamond();
        let ms = minimal_model_structure(&d).unwrap();
        let ho = homotopy_category(&d, &ms).unwrap();
        for m in d.morphisms() {
            let c = ho.class_of(m).unwrap();
            assert!(ho.classes[c].contains(&m));
            let id = ho.class_of(d.id(d.src(m))).unwrap();
            assert_eq!(ho.compose(&d, c, id), Some(c));
        }
    }
}

//! Bundled example categories.

use crate::fincat::{parse_category, CategoryData, FinCat};

pub const PT: &str = include_str!("../fixtures/pt.cat");
pub const ARROW: &str = include_str!("../fixtures/arrow.cat");
pub const CHAIN2: &str = include_str!("../fixtures/chain2.cat");
pub const DIAMOND: &str = include_str!("../fixtures/diamond.cat");
pub const RETRACT: &str = include_str!("../fixtures/retract.cat");
pub const BOOLEAN3: &str = include_str!("../fixtures/boolean3.cat");

fn load(text: &str) -> FinCat {
    parse_category(text).expect("bundled fixture is valid")
}

/// One object, identity only.
pub fn pt() -> FinCat {
    load(PT)
}

/// `0 → 1`.
pub fn arrow() -> FinCat {
    load(ARROW)
}

/// `0 → 1 → 2`.
pub fn chain2() -> FinCat {
    load(CHAIN2)
}

/// The lattice `bot < a, b < top`.
pub fn diamond() -> FinCat {
    load(DIAMOND)
}

/// `s: A → B`, `r: B → A` with `r∘s = id_A` and the idempotent `e = s∘r`.
pub fn retract() -> FinCat {
    load(RETRACT)
}

/// Subsets of `{x, y, z}` under inclusion.
pub fn boolean3() -> FinCat {
    load(BOOLEAN3)
}

/// The generator the `boolean3.cat` file was written from.
pub fn boolean3_data() -> CategoryData {
    let names = ["0", "x", "y", "z", "xy", "xz", "yz", "xyz"];
    let sets: [u8; 8] = [0, 1, 2, 4, 3, 5, 6, 7];
    CategoryData::poset(&names, |a, b| sets[a] & !sets[b] == 0)
}

/// Every bundled fixture, in a fixed order.
pub fn all() -> Vec<FinCat> {
    vec![pt(), arrow(), chain2(), diamond(), retract(), boolean3()]
}

/// `(file name, text)` for every bundled fixture.
pub fn files() -> [(&'static str, &'static str); 6] {
    [
        ("pt.cat", PT),
        ("arrow.cat", ARROW),
        ("chain2.cat", CHAIN2),
        ("diamond.cat", DIAMOND),
        ("retract.cat", RETRACT),
        ("boolean3.cat", BOOLEAN3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::serialize_category;

    #[test]
    fn boolean3_file_matches_generator() {
        let generated = FinCat::new(&boolean3_data()).unwrap();
        assert_eq!(boolean3(), generated);
        assert_eq!(generated.object_count(), 8);
        assert_eq!(generated.morphism_count(), 27);
        let _ = serialize_category(&generated);
    }

    #[test]
    fn fixture_sizes() {
        let sizes: Vec<(usize, usize)> = all().iter().map(|c| (c.object_count(), c.morphism_count())).collect();
        assert_eq!(sizes, vec![(1, 1), (2, 3), (3, 6), (4, 9), (2, 5), (8, 27)]);
    }
}

//! The finitely many unconnectable classes that no parity or enclosure
//! certificate explains.
//!
//! GENERATED by `cargo run --bin gen-tables` — do not edit by hand.
//!
//! Every entry is the canonical form (least literal over the automorphism
//! group) of one such class, together with a short stable name used in
//! refutations. The regeneration test re-derives the list exhaustively.

/// `(name, canonical literal)` for each catalogued impossible class.
pub static FORBIDDEN: &[(&str, &str)] = &[
    ("double-diagonal", "00-11,01-10"),
    ("crossed-diagonals", "000-011,001-010"),
    ("parallel-diagonals", "000-011,100-111"),
    ("six-cycle-triple", "0000-0111,0001-0110,0010-0101"),
];

/// Looks up the stable name for a canonical literal, if it is catalogued.
pub fn name_of(canonical: &str) -> Option<&'static str> {
    FORBIDDEN
        .iter()
        .find(|(_, lit)| *lit == canonical)
        .map(|(name, _)| *name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::PairSet;
    use crate::symmetry::canonical_form;

    #[test]
    fn entries_are_canonical_and_named_uniquely() {
        let mut names = std::collections::BTreeSet::new();
        for (name, lit) in FORBIDDEN {
            let set = PairSet::parse(lit).expect("catalogued literal parses");
            let canon = canonical_form(&set).expect("within canonical dimension cap");
            assert_eq!(
                canon.set.to_string(),
                *lit,
                "stored literal must already be canonical"
            );
            assert!(names.insert(*name), "duplicate name {name}");
        }
    }

    #[test]
    fn lookup_by_canonical_literal() {
        for (name, lit) in FORBIDDEN {
            assert_eq!(name_of(lit), Some(*name));
        }
        assert_eq!(name_of("00-11"), None);
    }
}

//! Frozen connectors for the base-dimension catalogue.
//!
//! GENERATED by `cargo run --bin gen-tables` — do not edit by hand.
//!
//! Each entry maps the canonical form of a class (least literal over the
//! automorphism group) to one connector for that canonical set, or `None`
//! when the class admits none. The regeneration test re-derives every entry
//! from scratch and fails on any drift.

/// Balanced dimension-2 pair-sets.
pub static Q2: &[(&str, Option<&str>)] = &[
    ("00-00,01-10", Some("00;01,11,10")),
    ("00-01", Some("00,10,11,01")),
    ("00-01,10-11", Some("00,01;10,11")),
    ("00-11,01-10", None),
];

/// Balanced dimension-3 pair-sets of size two.
pub static Q3_BALANCED_2: &[(&str, Option<&str>)] = &[
    ("000-000,001-010", Some("000;001,011,111,101,100,110,010")),
    ("000-000,001-111", Some("000;001,011,010,110,100,101,111")),
    ("000-001,010-011", Some("000,001;010,110,100,101,111,011")),
    ("000-001,010-101", Some("000,001;010,011,111,110,100,101")),
    ("000-001,010-110", Some("000,001;010,011,111,101,100,110")),
    ("000-001,110-111", Some("000,010,011,001;110,100,101,111")),
    ("000-011,001-010", None),
    ("000-011,001-100", Some("000,010,011;001,101,111,110,100")),
    ("000-011,100-111", None),
    ("000-111,001-110", Some("000,010,011,111;001,101,100,110")),
];

/// Diminishable dimension-3 triples with exactly two edge-pairs.
pub static Q3_DIMINISHABLE_3: &[(&str, Option<&str>)] = &[
    ("000-001,010-101,011-111", Some("000,001;010,110,100,101;011,111")),
];

/// Resolves a catalogue label stored in a trace.
pub fn by_label(label: &str) -> Option<&'static [(&'static str, Option<&'static str>)]> {
    match label {
        "q2" => Some(Q2),
        "q3-balanced-2" => Some(Q3_BALANCED_2),
        "q3-diminishable-3" => Some(Q3_DIMINISHABLE_3),
        _ => None,
    }
}

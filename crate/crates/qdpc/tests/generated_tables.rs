//! Regeneration check for the frozen catalogue.
//!
//! The tables and the impossible-class list are generated once and committed.
//! These tests re-derive every row from scratch — enumerate the classes, ask
//! the exhaustive search for each — and compare literal for literal, so any
//! drift between the statics and the code that is supposed to reproduce them
//! fails loudly. Stored connectors are also re-verified; they are
//! certificates and must stay checkable on their own.

use std::collections::BTreeSet;

use qdpc::constructor::tables::{by_label, Q2, Q3_BALANCED_2, Q3_DIMINISHABLE_3};
use qdpc::enumeration::{enumerate_classes, EdgeCond, Filter};
use qdpc::forbidden::{name_of, FORBIDDEN};
use qdpc::oracle::{oracle_solve, verify_connector, Connector};
use qdpc::pair::PairSet;
use qdpc::symmetry::canonical_form;

/// Re-derives `(canonical literal, connectable)` rows for one filter the same
/// way the generator does: enumerate the classes in order, decide each by
/// exhaustive search.
fn rederive(n: usize, filter: &Filter) -> Vec<(String, bool)> {
    enumerate_classes(n, filter)
        .unwrap()
        .into_iter()
        .map(|rep| {
            let connectable = oracle_solve(&rep.set).unwrap().is_connectable();
            (rep.set.to_string(), connectable)
        })
        .collect()
}

fn check_table(label: &str, n: usize, filter: &Filter) {
    let table = by_label(label).unwrap_or_else(|| panic!("no table labelled {label}"));
    let derived = rederive(n, filter);
    assert_eq!(
        table.len(),
        derived.len(),
        "{label}: {} stored rows, {} derived classes",
        table.len(),
        derived.len()
    );
    for ((stored_lit, stored_conn), (derived_lit, connectable)) in table.iter().zip(&derived) {
        assert_eq!(stored_lit, derived_lit, "{label}: row drifted");
        assert_eq!(
            stored_conn.is_some(),
            *connectable,
            "{label}: verdict for {stored_lit} drifted"
        );
        let set = PairSet::parse(stored_lit).unwrap();
        assert_eq!(
            canonical_form(&set).unwrap().set,
            set,
            "{label}: {stored_lit} is not a canonical form"
        );
        match stored_conn {
            Some(lit) => {
                let connector = Connector::parse(lit).unwrap();
                verify_connector(&set, &connector).unwrap_or_else(|violation| {
                    panic!("{label}: stored connector for {stored_lit} is invalid: {violation}")
                });
                assert_eq!(name_of(stored_lit), None, "{label}: solvable row catalogued as impossible");
            }
            // A refuted row must be catalogued under a stable name, so the
            // dispatcher refutes it before ever reaching the table.
            None => assert!(
                name_of(stored_lit).is_some(),
                "{label}: refuted row {stored_lit} missing from the impossible-class list"
            ),
        }
    }
}

#[test]
fn stored_tables_match_a_fresh_derivation() {
    check_table("q2", 2, &Filter::sized(1, 2).balanced(true));
    check_table("q3-balanced-2", 3, &Filter::sized(2, 2).balanced(true));
    check_table(
        "q3-diminishable-3",
        3,
        &Filter::sized(3, 3)
            .diminishable(true)
            .edge_pairs(EdgeCond::Exactly(2)),
    );
    assert!(by_label("no-such-table").is_none());
    // `by_label` resolves exactly the three statics above.
    assert_eq!(by_label("q2"), Some(Q2));
    assert_eq!(by_label("q3-balanced-2"), Some(Q3_BALANCED_2));
    assert_eq!(by_label("q3-diminishable-3"), Some(Q3_DIMINISHABLE_3));
}

#[test]
fn impossible_class_list_matches_a_fresh_derivation() {
    let mut derived: Vec<String> = Vec::new();
    for (n, filter) in [
        (2, Filter::sized(1, 2).balanced(true)),
        (3, Filter::sized(2, 2).balanced(true)),
        (4, Filter::sized(3, 3).odd(true)),
    ] {
        for (lit, connectable) in rederive(n, &filter) {
            if !connectable {
                derived.push(lit);
            }
        }
    }
    let stored: Vec<&str> = FORBIDDEN.iter().map(|(_, lit)| *lit).collect();
    let derived: Vec<&str> = derived.iter().map(String::as_str).collect();
    assert_eq!(stored, derived);

    let names: BTreeSet<&str> = FORBIDDEN.iter().map(|(name, _)| *name).collect();
    assert_eq!(names.len(), FORBIDDEN.len(), "duplicate class names");
    for (name, lit) in FORBIDDEN {
        assert_eq!(name_of(lit), Some(*name));
    }
}

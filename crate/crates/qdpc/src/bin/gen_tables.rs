//! Regenerates the frozen catalogue sources from exhaustive search:
//! `src/constructor/tables.rs` (base-dimension connectors) and
//! `src/forbidden.rs` (the finitely many unexplained unconnectable classes).
//!
//! Every stored connector is re-verified before it is written, so the
//! generated code carries independently checkable evidence; `None` entries
//! are cross-checked by the census integration tests.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use qdpc::enumeration::{enumerate_classes, EdgeCond, Filter};
use qdpc::oracle::{oracle_solve, verify_connector, Verdict};
use qdpc::Result;

struct Entry {
    canonical: String,
    connector: Option<String>,
}

/// Decides every class matching the filter and renders one table entry per
/// class, in canonical order.
fn decide(n: usize, filter: &Filter) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for rep in enumerate_classes(n, filter)? {
        let connector = match oracle_solve(&rep.set)? {
            Verdict::Connectable(c) => {
                if let Err(violation) = verify_connector(&rep.set, &c) {
                    panic!("search returned an invalid path system for {}: {violation}", rep.set);
                }
                Some(c.to_string())
            }
            Verdict::Unconnectable(_) => None,
        };
        out.push(Entry {
            canonical: rep.set.to_string(),
            connector,
        });
    }
    Ok(out)
}

/// Stable names for the catalogued impossible classes, keyed by canonical
/// literal. A brand-new literal showing up here means the derivation changed
/// and a human must pick a name.
fn forbidden_name(canonical: &str) -> &'static str {
    match canonical {
        "00-11,01-10" => "double-diagonal",
        "000-011,001-010" => "crossed-diagonals",
        "000-011,100-111" => "parallel-diagonals",
        "0000-0111,0001-0110,0010-0101" => "six-cycle-triple",
        other => panic!("unnamed impossible class {other}; pick a stable name"),
    }
}

fn render_table(entries: &[Entry]) -> String {
    let mut s = String::from("&[\n");
    for e in entries {
        match &e.connector {
            Some(c) => writeln!(s, "    ({:?}, Some({:?})),", e.canonical, c).unwrap(),
            None => writeln!(s, "    ({:?}, None),", e.canonical).unwrap(),
        }
    }
    s.push(']');
    s
}

fn tables_source(q2: &[Entry], q3b2: &[Entry], q3d3: &[Entry]) -> String {
    format!(
        r#"//! Frozen connectors for the base-dimension catalogue.
//!
//! GENERATED by `cargo run --bin gen-tables` — do not edit by hand.
//!
//! Each entry maps the canonical form of a class (least literal over the
//! automorphism group) to one connector for that canonical set, or `None`
//! when the class admits none. The regeneration test re-derives every entry
//! from scratch and fails on any drift.

/// Balanced dimension-2 pair-sets.
pub static Q2: &[(&str, Option<&str>)] = {};

/// Balanced dimension-3 pair-sets of size two.
pub static Q3_BALANCED_2: &[(&str, Option<&str>)] = {};

/// Diminishable dimension-3 triples with exactly two edge-pairs.
pub static Q3_DIMINISHABLE_3: &[(&str, Option<&str>)] = {};

/// Resolves a catalogue label stored in a trace.
pub fn by_label(label: &str) -> Option<&'static [(&'static str, Option<&'static str>)]> {{
    match label {{
        "q2" => Some(Q2),
        "q3-balanced-2" => Some(Q3_BALANCED_2),
        "q3-diminishable-3" => Some(Q3_DIMINISHABLE_3),
        _ => None,
    }}
}}
"#,
        render_table(q2),
        render_table(q3b2),
        render_table(q3d3),
    )
}

fn forbidden_source(named: &[(String, String)]) -> String {
    let mut list = String::from("&[\n");
    for (name, lit) in named {
        writeln!(list, "    ({name:?}, {lit:?}),").unwrap();
    }
    list.push(']');
    format!(
        r#"//! The finitely many unconnectable classes that no parity or enclosure
//! certificate explains.
//!
//! GENERATED by `cargo run --bin gen-tables` — do not edit by hand.
//!
//! Every entry is the canonical form (least literal over the automorphism
//! group) of one such class, together with a short stable name used in
//! refutations. The regeneration test re-derives the list exhaustively.

/// `(name, canonical literal)` for each catalogued impossible class.
pub static FORBIDDEN: &[(&str, &str)] = {list};

/// Looks up the stable name for a canonical literal, if it is catalogued.
pub fn name_of(canonical: &str) -> Option<&'static str> {{
    FORBIDDEN
        .iter()
        .find(|(_, lit)| *lit == canonical)
        .map(|(name, _)| *name)
}}

#[cfg(test)]
mod tests {{
    use super::*;
    use crate::pair::PairSet;
    use crate::symmetry::canonical_form;

    #[test]
    fn entries_are_canonical_and_named_uniquely() {{
        let mut names = std::collections::BTreeSet::new();
        for (name, lit) in FORBIDDEN {{
            let set = PairSet::parse(lit).expect("catalogued literal parses");
            let canon = canonical_form(&set).expect("within canonical dimension cap");
            assert_eq!(
                canon.set.to_string(),
                *lit,
                "stored literal must already be canonical"
            );
            assert!(names.insert(*name), "duplicate name {{name}}");
        }}
    }}

    #[test]
    fn lookup_by_canonical_literal() {{
        for (name, lit) in FORBIDDEN {{
            assert_eq!(name_of(lit), Some(*name));
        }}
        assert_eq!(name_of("00-11"), None);
    }}
}}
"#
    )
}

fn run() -> Result<()> {
    let q2 = decide(2, &Filter::sized(1, 2).balanced(true))?;
    let q3b2 = decide(3, &Filter::sized(2, 2).balanced(true))?;
    let q3d3 = decide(
        3,
        &Filter::sized(3, 3)
            .diminishable(true)
            .edge_pairs(EdgeCond::Exactly(2)),
    )?;
    for e in &q3d3 {
        assert!(
            e.connector.is_some(),
            "diminishable triple {} has no path system",
            e.canonical
        );
    }
    // Impossible classes beyond parity and enclosure: everything the three
    // base tables refuse, plus the odd triples of dimension 4.
    let q4_odd3 = decide(4, &Filter::sized(3, 3).odd(true))?;
    let mut forbidden = Vec::new();
    for e in q2.iter().chain(&q3b2).chain(&q4_odd3) {
        if e.connector.is_none() {
            forbidden.push((
                forbidden_name(&e.canonical).to_string(),
                e.canonical.clone(),
            ));
        }
    }

    println!("q2: {} classes", q2.len());
    println!("q3-balanced-2: {} classes", q3b2.len());
    println!("q3-diminishable-3: {} classes", q3d3.len());
    println!("q4 odd triples: {} classes", q4_odd3.len());
    for (name, lit) in &forbidden {
        println!("impossible: {name} = {lit}");
    }

    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    fs::write(
        root.join("src/constructor/tables.rs"),
        tables_source(&q2, &q3b2, &q3d3),
    )
    .expect("write tables.rs");
    fs::write(root.join("src/forbidden.rs"), forbidden_source(&forbidden))
        .expect("write forbidden.rs");
    println!("wrote src/constructor/tables.rs and src/forbidden.rs");
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

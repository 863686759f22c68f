//! End-to-end checks of the binary: output shapes, exit codes, JSON schema,
//! and the verify round trip.

use std::process::{Command, Output};

fn qdpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

#[test]
fn solve_refutes_the_catalogued_triple() {
    let out = qdpc(&["solve", "0000-0111,0001-0110,0011-0100", "--engine", "auto"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("unconnectable"), "{text}");
    assert!(text.contains("six-cycle-triple"), "{text}");
}

#[test]
fn solve_json_then_verify_round_trips() {
    let out = qdpc(&["solve", "000-001,010-011", "--json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["dimension"], 3);
    assert_eq!(doc["metadata"]["verdict"], "connectable");
    let paths: Vec<String> = doc["connector"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap().to_owned())
        .collect();
    let connector = paths.join(";");

    let out = qdpc(&["verify", "000-001,010-011", &connector]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("valid"));

    // a mutilated connector must be rejected with exit 1
    let out = qdpc(&["verify", "000-001,010-011", "000,001;010,011"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("invalid"));
}

#[test]
fn gray_emits_path_and_transitions() {
    let out = qdpc(&["gray", "--from", "0000", "--to", "0001"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let path_line = text.lines().find(|l| l.starts_with("path: ")).unwrap();
    let transitions_line = text
        .lines()
        .find(|l| l.starts_with("transitions: "))
        .unwrap();
    assert_eq!(path_line.trim_start_matches("path: ").split(',').count(), 16);
    assert_eq!(
        transitions_line
            .trim_start_matches("transitions: ")
            .split(' ')
            .count(),
        15
    );

    // even distance: refused, exit 1
    let out = qdpc(&["gray", "--from", "00", "--to", "11"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn census_reports_the_known_two_bad_classes() {
    let out = qdpc(&[
        "census",
        "--n",
        "3",
        "--size",
        "2",
        "--balanced",
        "--verdict",
        "unconnectable",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("classes: 10"), "{text}");
    assert!(text.contains("unconnectable: 2 classes"), "{text}");
    assert!(text.contains("000-011,001-010"), "{text}");
    assert!(text.contains("000-011,100-111"), "{text}");
}

#[test]
fn engines_agree_and_auto_falls_back_to_search() {
    // balanced odd two-pair set of Q₅: outside the construction's catalogue
    let pairs = "00000-00001,00010-00011";
    let constructor = qdpc(&["solve", pairs, "--engine", "constructor"]);
    assert_eq!(code(&constructor), 3, "{}", stdout(&constructor));
    let auto = qdpc(&["solve", pairs, "--engine", "auto"]);
    assert_eq!(code(&auto), 0, "{}", stdout(&auto));
    assert!(stdout(&auto).contains("exhaustive search"));
    let oracle = qdpc(&["solve", pairs, "--engine", "oracle"]);
    assert_eq!(code(&oracle), 0);
}

#[test]
fn exit_codes_follow_the_contract() {
    // bad literal: usage error
    assert_eq!(code(&qdpc(&["solve", "garbage"])), 2);
    // unknown flag: usage error (from the argument parser)
    assert_eq!(code(&qdpc(&["solve", "00-01", "--frobnicate"])), 2);
    // beyond the exhaustive-search cap: unsupported
    let out = qdpc(&["solve", "000000-000001", "--engine", "oracle"]);
    assert_eq!(code(&out), 3);
    // sampling without a seed: usage error
    let out = qdpc(&["census", "--n", "5", "--sample", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn canon_folds_the_literal_into_its_class() {
    let out = qdpc(&["canon", "0000-0111,0001-0110,0011-0100"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0000-0111,0001-0110,0010-0101"));
}

#[test]
fn dot_export_is_a_graph() {
    let out = qdpc(&["solve", "00-01", "--dot"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("graph cube {"), "{text}");
    assert!(text.contains("\"00\" -- \"10\""), "{text}");
    assert!(text.trim_end().ends_with('}'), "{text}");
}

#[test]
fn sampled_census_is_deterministic() {
    let args = [
        "census", "--n", "5", "--size", "2", "--odd", "--sample", "10", "--seed", "3",
    ];
    let first = qdpc(&args);
    let second = qdpc(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("connectable: 10, unconnectable: 0"));
}

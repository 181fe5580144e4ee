//! Criterion 10: golden-file tests for every subcommand on the shipped
//! fixtures (byte-identical output), workspace round-trip, and the
//! documented exit codes exercised.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsurf")).args(args).output().expect("spawn nsurf")
}

/// Runs twice and checks the two stdouts are byte-identical before
/// comparing against the golden file.
fn assert_golden(args: &[&str], golden_name: &str) {
    let first = run(args);
    let second = run(args);
    assert_eq!(first.stdout, second.stdout, "nondeterministic output for {args:?}");
    assert!(first.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(
        String::from_utf8(first.stdout).unwrap(),
        golden(golden_name),
        "golden mismatch for {args:?}"
    );
}

#[test]
fn criterion_10_cli_golden_round_trip_exit_codes() {
    let qc = fixture("quadric-cone.ws");
    let qc = qc.to_str().unwrap();
    let p2 = fixture("p2.ws");
    let p2 = p2.to_str().unwrap();

    // every subcommand against a shipped fixture, byte-identical
    assert_golden(&["intersect", qc, "L", "L"], "intersect.txt");
    assert_golden(&["pullback", qc, "L"], "pullback.txt");
    assert_golden(&["chern", qc, "OL"], "chern.txt");
    assert_golden(&["chi", qc, "OL"], "chi.txt");
    assert_golden(&["chi", qc, "OL", "--json"], "chi.json");
    assert_golden(&["delta", qc, "O2L"], "delta.txt");
    assert_golden(&["bogomolov", p2, "badclass"], "bogomolov.txt");
    assert_golden(&["charge", p2, "O1", "--phase"], "charge.txt");
    assert_golden(&["support", qc, "OL"], "support.txt");
    assert_golden(&["walls", p2, "O", "O1", "--window", "-3:3:0.1:3", "--json"], "walls.json");

    // walls with an SVG artifact: report and file are both golden
    let dir = tempfile::tempdir().unwrap();
    let svg_path = dir.path().join("walls.svg");
    let svg_str = svg_path.to_str().unwrap();
    let args = ["walls", p2, "O", "point", "--window", "-3:3:0.1:3", "--out", svg_str];
    let out = run(&args);
    assert!(out.status.success());
    let report = String::from_utf8(out.stdout).unwrap().replace(svg_str, "WALLS_SVG_PATH");
    assert_eq!(report, golden("walls.txt"));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg, golden("walls.svg"), "SVG output is not byte-identical to golden");
    let out2 = run(&args);
    assert!(out2.status.success());
    assert_eq!(std::fs::read_to_string(&svg_path).unwrap(), svg);

    // workspace round-trip: parse -> serialize -> parse is lossless
    for f in [qc, p2] {
        let text = std::fs::read_to_string(f).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        let re = serde_json::to_string_pretty(&doc).unwrap();
        let again: serde_json::Value = serde_json::from_str(&re).unwrap();
        assert_eq!(doc, again);
    }

    // documented exit codes: 0 success (violation is a result, not an
    // error), 1 usage, 2 data/validation, 3 consistency
    assert_eq!(run(&["bogomolov", p2, "badclass"]).status.code(), Some(0));
    assert_eq!(run(&["chi", p2]).status.code(), Some(1));
    assert_eq!(run(&["chi", p2, "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "/nonexistent.ws", "O"]).status.code(), Some(2));
    assert_eq!(run(&["charge", p2, "badpoint", "--phase"]).status.code(), Some(3));

    println!(
        "PASS criterion 10: golden-file CLI outputs byte-identical, workspace \
         round-trip lossless, exit codes 0/1/2/3 exercised"
    );
}

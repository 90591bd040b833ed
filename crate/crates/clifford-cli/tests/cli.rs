//! End-to-end checks of the `ck` binary: exit-code contract, input
//! handling, and report determinism.

use std::process::{Command, Output};

fn ck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ck"))
        .args(args)
        .output()
        .expect("failed to launch ck")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("reports are utf-8")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn analyze_reports_structure_and_succeeds() {
    let out = ck(&["analyze", "@two", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("is_semilattice = true"));
    assert!(text.contains("is_clifford = true"));
    assert!(!text.contains("timing_ms"));
}

#[test]
fn timing_line_appears_by_default() {
    let out = ck(&["analyze", "@two"]);
    assert!(stdout(&out).contains("timing_ms = "));
}

#[test]
fn unknown_inputs_exit_2() {
    let out = ck(&["analyze", "@no_such_member"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ck(&["analyze", "/definitely/missing.tbl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_tables_exit_2_with_line_numbers() {
    let dir = std::env::temp_dir().join(format!("ck-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.tbl");
    std::fs::write(&path, "2\n0 0\n0\n").unwrap();
    let out = ck(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "stderr was: {err}");

    // associativity failures are input errors too
    std::fs::write(&path, "2\n1 0\n0 0\n").unwrap();
    let out = ck(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn false_verdicts_exit_1_with_witnesses() {
    let out = ck(&[
        "metric-check",
        "@chain2",
        &fixture("chain2_skewed.metric"),
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("subinvariant = false"));
    assert!(text.contains("left_witness = (0,2,1)"));
}

#[test]
fn ideal_spec_forms_agree() {
    let down = ck(&["reduced", "@chain2", "down(1)", "@z2", "--no-timing"]);
    let explicit = ck(&["reduced", "@chain2", "0,1", "@z2", "--no-timing"]);
    assert_eq!(down.status.code(), Some(0));
    assert_eq!(stdout(&down), stdout(&explicit));
    assert!(stdout(&down).contains("size = 4"));

    let empty = ck(&["reduced", "@chain2", "empty", "@z2", "--no-timing"]);
    assert!(stdout(&empty).contains("size = 6"));

    let not_ideal = ck(&["reduced", "@chain2", "2", "@z2", "--no-timing"]);
    assert_eq!(not_ideal.status.code(), Some(2));
}

#[test]
fn sparse_coordinate_sets_need_force() {
    let refused = ck(&["embed1", "@zero_ext_z2", "--A", "1", "--no-timing"]);
    assert_eq!(refused.status.code(), Some(2));

    let forced = ck(&["embed1", "@zero_ext_z2", "--A", "1", "--force", "--no-timing"]);
    assert_eq!(forced.status.code(), Some(0));
    assert!(stdout(&forced).contains("sparse_override = true"));
}

#[test]
fn refute64_handles_all_three_verdicts() {
    let witness = ck(&["refute64", "--oracle", "euclid", "--epsilon", "1/100", "--no-timing"]);
    assert_eq!(witness.status.code(), Some(0));
    assert!(stdout(&witness).contains("witness_n = 50"));

    let inconclusive = ck(&["refute64", "--oracle", "discrete", "--epsilon", "1/2", "--no-timing"]);
    assert_eq!(inconclusive.status.code(), Some(1));
    assert!(stdout(&inconclusive).contains("verdict = inconclusive"));

    let violation = ck(&[
        "refute64",
        "--oracle",
        &fixture("corrupted.oracle"),
        "--epsilon",
        "1/100",
        "--no-timing",
    ]);
    assert_eq!(violation.status.code(), Some(0));
    assert!(stdout(&violation).contains("violation_n = 1"));
}

#[test]
fn catalog_dump_round_trips() {
    let dir = std::env::temp_dir().join(format!("ck-catalog-dump-{}", std::process::id()));
    let out = ck(&["catalog", "--dump", dir.to_str().unwrap(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    for entry in clifford_kit::catalog::catalog() {
        let path = dir.join(format!("{}.tbl", entry.name));
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = clifford_kit::io::parse_semigroup(&text).unwrap();
        assert_eq!(parsed, entry.semigroup, "dump mismatch for {}", entry.name);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_are_deterministic_without_timing() {
    for args in [
        vec!["analyze", "@chain8_x_s3", "--no-timing"],
        vec!["embed2", "@cone2_z3", "--levels", "2", "--no-timing"],
        vec!["homs", "@diamond", "@two", "--no-timing"],
    ] {
        let first = ck(&args);
        let second = ck(&args);
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(first.stdout, second.stdout, "nondeterministic: {args:?}");
    }
}

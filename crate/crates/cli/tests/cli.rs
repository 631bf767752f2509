//! Behavior of the binary: exit codes, output formats, determinism, and
//! file handling.

use std::process::{Command, Output};
use twistbound::{bound_report, tau_table, BoundReport, Rational, ReportOptions, TwistKnot};
use twistbound_cli::survey::{parse_csv, SurveyRow};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistbound"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["tau", "--help"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["tau"],
        vec!["tau", "-5"],
        vec!["tau", "6", "--format", "yaml"],
        vec!["pell", "1"],
        vec!["bound", "5", "--bound", "0"],
        vec!["bound", "5", "--bound", "1025"],
        vec!["search", "5", "--bound", "-3"],
        vec!["survey", "5", "3", "--out", "/tmp/unused.csv"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 1, "args {args:?}: {}", stderr_of(&out));
    }
}

#[test]
fn computation_errors_exit_two() {
    let out = run(&["bound", "16", "--prime", "7"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("7 does not divide 65"));

    let out = run(&["bound", "16", "--prime", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn io_errors_exit_three() {
    let out = run(&["survey", "0", "2", "--out", "/nonexistent_dir_zz9/rows.csv"]);
    assert_eq!(code(&out), 3);
    assert!(stderr_of(&out).contains("/nonexistent_dir_zz9/rows.csv"));
}

#[test]
fn pell_square_wording() {
    let out = run(&["pell", "25"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("perfect square"), "{text}");
    assert!(text.contains("no solution"), "{text}");
}

#[test]
fn pell_renders_period_and_solution() {
    let text = stdout_of(&run(&["pell", "5"]));
    assert!(text.contains("[2; 4]"), "{text}");
    assert!(text.contains("period length: 1 (odd)"), "{text}");
    assert!(text.contains("x = 2, y = 1"), "{text}");

    let text = stdout_of(&run(&["pell", "205"]));
    assert!(text.contains("(even)"), "{text}");
    assert!(text.contains("negative Pell solution: none"), "{text}");

    let json: serde_json::Value =
        serde_json::from_str(&stdout_of(&run(&["pell", "13", "--format", "json"]))).unwrap();
    assert_eq!(json["solvable"], serde_json::json!(true));
    assert_eq!(json["solution"], serde_json::json!(["18", "5"]));
}

#[test]
fn stevedore_note_appears() {
    let text = stdout_of(&run(&["bound", "2"]));
    assert!(text.contains("slice (Stevedore)"), "{text}");
}

#[test]
fn tau_csv_round_trips_exactly() {
    let out = run(&["tau", "7", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let parsed = twistbound::tau::TauTable::from_csv(&stdout_of(&out)).unwrap();
    let expected = tau_table(&TwistKnot::new(7).unwrap());
    assert_eq!(parsed.values(), expected.values());
}

#[test]
fn tau_json_matches_library() {
    let out = run(&["tau", "6", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["n"], serde_json::json!(6));
    assert_eq!(json["m"], serde_json::json!(25));
    let expected = tau_table(&TwistKnot::new(6).unwrap());
    let values: Vec<String> =
        expected.values().iter().map(|v| v.to_string()).collect();
    assert_eq!(json["values"], serde_json::json!(values));
}

#[test]
fn tau_zero_emits_single_row() {
    let text = stdout_of(&run(&["tau", "0"]));
    let data_rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim_start().starts_with('s'))
        .collect();
    assert_eq!(data_rows.len(), 1);
    assert_eq!(data_rows[0].split_whitespace().collect::<Vec<_>>(), ["0", "0", "0"]);
}

fn survey_to(path: &std::path::Path, args: &[&str]) -> String {
    let path_str = path.to_str().unwrap();
    let mut full = args.to_vec();
    full.extend(["--out", path_str]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", stderr_of(&out));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn survey_rows_carry_expected_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let text = survey_to(&dir.path().join("rows.csv"), &["survey", "0", "25"]);
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 26);
    let best = |n: usize| rows[n].best_lower.clone();
    assert_eq!(best(5), Rational::new(1, 5));
    assert_eq!(best(11), Rational::new(1, 3));
    assert_eq!(best(16), Rational::new(3, 8));
    assert_eq!(best(21), Rational::new(2, 5));
    assert_eq!(rows[16].per_prime.len(), 2);
    assert_eq!(rows[16].per_prime[1].lower, Rational::new(4, 11));
    for n in [0usize, 1, 2] {
        assert_eq!(best(n), Rational::new(0, 1), "n={n}");
    }
}

#[test]
fn survey_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = survey_to(&dir.path().join("a.csv"), &["survey", "3", "12"]);
    let b = survey_to(&dir.path().join("b.csv"), &["survey", "3", "12"]);
    assert_eq!(a, b);

    let ja = survey_to(&dir.path().join("a.json"), &["survey", "3", "12", "--format", "json"]);
    let jb = survey_to(&dir.path().join("b.json"), &["survey", "3", "12", "--format", "json"]);
    assert_eq!(ja, jb);
}

#[test]
fn survey_single_point_range() {
    let dir = tempfile::tempdir().unwrap();
    let text = survey_to(&dir.path().join("one.csv"), &["survey", "3", "3"]);
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].best_lower, Rational::new(1, 8));
    assert_eq!(rows[0].upper_source, "pell_construction");
}

#[test]
fn survey_json_agrees_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = survey_to(&dir.path().join("r.csv"), &["survey", "4", "9"]);
    let json = survey_to(&dir.path().join("r.json"), &["survey", "4", "9", "--format", "json"]);
    let from_csv = parse_csv(&csv).unwrap();
    let from_json: Vec<SurveyRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(from_csv, from_json);
}

#[test]
fn search_reports_absence_without_failing() {
    let out = run(&["search", "5", "--bound", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("no witness"), "{}", stdout_of(&out));
}

#[test]
fn search_json_exposes_witness_vectors() {
    let out = run(&["search", "6", "--bound", "10", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(json["witness"]["v"], serde_json::json!(["-10", "-4", "-5", "3"]));
    assert_eq!(json["witness"]["w"], serde_json::json!(["-9", "-3", "-9", "4"]));
    assert_eq!(json["witness"]["c"], serde_json::json!("3"));
}

#[test]
fn bound_csv_is_one_parseable_row() {
    let out = run(&["bound", "16", "--format", "csv"]);
    let rows = parse_csv(&stdout_of(&out)).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].m, 65);
    assert_eq!(rows[0].upper_source, "pell_construction");
}

#[test]
fn bound_json_round_trips_through_library_type() {
    let out = run(&["bound", "21", "--format", "json"]);
    let parsed: BoundReport = serde_json::from_str(&stdout_of(&out)).unwrap();
    let expected =
        bound_report(&TwistKnot::new(21).unwrap(), &ReportOptions::default()).unwrap();
    assert_eq!(parsed, expected);
}

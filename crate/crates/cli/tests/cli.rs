//! End-to-end tests of the command-line interface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const TABLE_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/p56.txt");

const REFERENCE_OUTPUT: &str = "n_0 = 56\n\
P[n]/P[n-1] is increasing: True\n\
Q[n]/P[n] is decreasing: True\n\
g(0.24307) <= 2 - 2*sqrt(R): True\n\
g(0.24308) <= 2 - 2*sqrt(R): False\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polygrowth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn write_table(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("write table");
    path
}

#[test]
fn verify_reproduces_the_reference_output_byte_for_byte() {
    let output = run(&["verify", "--counts", TABLE_PATH]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(output.stdout, REFERENCE_OUTPUT.as_bytes());
}

#[test]
fn verify_surfaces_the_qp_tie_on_stderr() {
    let output = run(&["verify", "--counts", TABLE_PATH]);
    let err = String::from_utf8(output.stderr).expect("utf-8 stderr");
    assert!(err.contains("ties at n = [2]"), "stderr: {err}");
}

#[test]
fn verify_missing_and_malformed_tables_exit_two() {
    let output = run(&["verify", "--counts", "/nonexistent/counts.txt"]);
    assert_eq!(output.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = write_table(dir.path(), "bad.txt", "1 1\n3 6\n");
    let output = run(&["verify", "--counts", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("non-contiguous"), "stderr: {err}");
}

#[test]
fn verify_failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // geometric counts: ratios all equal, so the strict increase check fails
    let geometric = write_table(dir.path(), "geo.txt", "1 1\n2 2\n3 4\n4 8\n");
    let output = run(&[
        "verify",
        "--counts",
        geometric.to_str().unwrap(),
        "--n0",
        "4",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let out = stdout(&output);
    assert!(
        out.contains("P[n]/P[n-1] is increasing: False"),
        "stdout: {out}"
    );
}

#[test]
fn enumerate_tsv_matches_known_counts() {
    let output = run(&["enumerate", "--max", "4", "--format", "tsv"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output), "1\t1\n2\t2\n3\t6\n4\t19\n");
}

#[test]
fn enumerate_rejects_sizes_beyond_the_limit() {
    let output = run(&["enumerate", "--max", "17"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn enumerate_worker_count_does_not_change_output() {
    let one = run(&[
        "enumerate",
        "--max",
        "11",
        "--workers",
        "1",
        "--format",
        "tsv",
    ]);
    let four = run(&[
        "enumerate",
        "--max",
        "11",
        "--workers",
        "4",
        "--format",
        "tsv",
    ]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn enumerate_json_round_trips_through_the_table_parser() {
    let output = run(&["enumerate", "--max", "6", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    let table = polygrowth::table::CountTable::from_json(&value).expect("round trip");
    assert_eq!(table.max_n(), 6);
    assert_eq!(table.get(6), &num_bigint::BigUint::from(216u32));
}

#[test]
fn enumerate_reuses_a_valid_cache_and_recovers_from_a_corrupt_one() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("counts.cache");
    let first = run(&[
        "enumerate",
        "--max",
        "9",
        "--cache",
        cache.to_str().unwrap(),
        "--format",
        "tsv",
    ]);
    assert_eq!(first.status.code(), Some(0));
    assert!(cache.exists());

    // a shorter request must be served from the cached prefix
    let second = run(&[
        "enumerate",
        "--max",
        "5",
        "--cache",
        cache.to_str().unwrap(),
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&second), "1\t1\n2\t2\n3\t6\n4\t19\n5\t63\n");

    // corrupt it: the checksum fails and counts are recomputed correctly
    let mut text = std::fs::read_to_string(&cache).unwrap();
    text = text.replace("3\t6", "3\t7");
    std::fs::write(&cache, text).unwrap();
    let third = run(&[
        "enumerate",
        "--max",
        "5",
        "--cache",
        cache.to_str().unwrap(),
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&third), "1\t1\n2\t2\n3\t6\n4\t19\n5\t63\n");
}

#[test]
fn derive_q_outputs_the_inversion() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_table(dir.path(), "toy.txt", "1 1\n2 2\n3 6\n4 16\n");
    let output = run(&[
        "derive-q",
        "--counts",
        toy.to_str().unwrap(),
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&output), "1\t1\n2\t1\n3\t3\n4\t5\n");
}

#[test]
fn bound_upper_reports_the_published_bound() {
    let output = run(&[
        "bound-upper",
        "--counts",
        TABLE_PATH,
        "--digits",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid json");
    assert_eq!(value["n0"], serde_json::json!(56));
    assert_eq!(value["theta"], serde_json::json!("0.24307"));
    assert_eq!(value["digits"], serde_json::json!(5));
    assert_eq!(value["lambda_upper"], serde_json::json!("4.1141"));
    assert_eq!(value["lambda_lower"], serde_json::json!("3.9909"));
    assert_eq!(
        value["assumes"]["upper"],
        serde_json::json!("Q/P decreasing")
    );
    assert_eq!(
        value["assumes"]["lower"],
        serde_json::json!("P ratio increasing")
    );
}

#[test]
fn bound_upper_exits_one_when_qp_is_not_monotone() {
    let dir = tempfile::tempdir().unwrap();
    // Q/P increases at n = 2 for this table, so the theta search is invalid
    let toy = write_table(dir.path(), "toy.txt", "1 1\n2 2\n3 7\n");
    let output = run(&[
        "bound-upper",
        "--counts",
        toy.to_str().unwrap(),
        "--n0",
        "3",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("unsupported"), "stderr: {err}");
}

#[test]
fn bound_lower_prints_the_exact_integers() {
    let output = run(&["bound-lower", "--counts", TABLE_PATH]);
    let out = stdout(&output);
    assert!(out.contains(
        "P[56]/P[55] = 69150714562532896936574425480218/17326987021737904384935434351490"
    ));
    assert!(out.contains("lambda_lower = 3.9909"));
}

#[test]
fn u_seq_brackets_the_growth_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_table(dir.path(), "toy.txt", "1 1\n2 2\n3 6\n4 16\n");
    let output = run(&[
        "u-seq",
        "--counts",
        toy.to_str().unwrap(),
        "--n0",
        "4",
        "--max",
        "5",
    ]);
    assert_eq!(output.status.code(), Some(0));
    // U(5)/U(4) = 48/16 = 3 exactly
    assert!(
        stdout(&output).contains("U(5)/U(4) in [3.00000, 3.00000]"),
        "{}",
        stdout(&output)
    );
}

#[test]
fn compositions_and_decompose_round_trip_the_text_form() {
    let output = run(&["compositions", "0,0", "0,0"]);
    let out = stdout(&output);
    assert!(out.starts_with("count = 2\n"), "{out}");
    assert!(out.contains("0,0 0,1"));
    assert!(out.contains("0,0 1,0"));

    let output = run(&["decompose", "0,0 0,1 1,1 1,0 2,1"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("size_a = "));

    let output = run(&["decompose", "0,0"]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8(output.stderr).unwrap();
    assert!(err.contains("too small"), "stderr: {err}");
}

#[test]
fn format_flag_can_come_from_the_environment() {
    let output = bin()
        .args(["enumerate", "--max", "3"])
        .env("POLYGROWTH_FORMAT", "tsv")
        .output()
        .expect("binary runs");
    assert_eq!(stdout(&output), "1\t1\n2\t2\n3\t6\n");
}

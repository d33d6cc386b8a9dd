//! End-to-end tests against the built binary: document shape, exit codes,
//! and byte-level determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udcodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_stdout(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn decide_reports_a_code_with_trace() {
    let output = run(&["decide", "-n", "2", "-w", "1,00,1000", "--trace"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["command"], "decide");
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["results"]["is_code"], true);
    assert_eq!(doc["results"]["termination"], "repeated_dangling_set");
    let trace = doc["results"]["trace"].as_array().unwrap();
    assert_eq!(trace[0].as_array().unwrap().len(), 3);
    assert_eq!(trace[1], serde_json::json!(["000"]));
}

#[test]
fn decide_reports_a_witness_for_non_codes() {
    let output = run(&["decide", "-n", "2", "-w", "1,00,100", "--witness"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["results"]["is_code"], false);
    assert_eq!(doc["results"]["witness"]["word"], "100");
    let a = doc["results"]["witness"]["factorization_a"].as_array().unwrap().len();
    let b = doc["results"]["witness"]["factorization_b"].as_array().unwrap().len();
    assert_eq!(a.min(b), 1);
    assert_eq!(a.max(b), 2);
}

#[test]
fn decide_flags_duplicates() {
    let output = run(&["decide", "-n", "2", "-w", "0,0"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["results"]["is_code"], false);
    assert_eq!(doc["results"]["termination"], "duplicate_codewords");
}

#[test]
fn decide_rejects_unparseable_words_with_exit_2() {
    let output = run(&["decide", "-n", "2", "-w", "1,02"]);
    assert_eq!(exit_code(&output), 2);
    assert!(output.stdout.is_empty());
    assert!(!output.stderr.is_empty());
}

#[test]
fn count_prefix_formula() {
    let output = run(&["count", "pr", "-n", "2", "-L", "1,2,6"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["results"]["count"], "64");
    assert_eq!(doc["results"]["method"], "formula");
}

#[test]
fn count_both_methods_agree() {
    let output = run(&["count", "ud", "-n", "3", "-L", "1,1,2", "--method", "both"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["results"]["formula"], "30");
    assert_eq!(doc["results"]["enumeration"], "30");
    assert_eq!(doc["results"]["agreement"], true);
}

#[test]
fn count_pair_formula() {
    let output = run(&["count", "ud", "-n", "2", "-L", "2,3", "--method", "formula"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    // n^(a+b) - n^gcd(a,b) = 32 - 2.
    assert_eq!(doc["results"]["count"], "30");
}

#[test]
fn count_uncovered_family_exits_4() {
    let output = run(&["count", "ud", "-n", "3", "-L", "2,3,4", "--method", "formula"]);
    assert_eq!(exit_code(&output), 4);
}

#[test]
fn count_over_budget_exits_3() {
    let output = run(&[
        "count", "ud", "-n", "2", "-L", "8,8,8", "--method", "enumerate", "--budget", "1000",
    ]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn rho_closed_form_document() {
    let output = run(&["rho", "-n", "2", "-L", "1,2,4"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["results"]["rho"], "8/27");
    assert_eq!(doc["results"]["method"], "closed_form");
    assert_eq!(doc["results"]["pr_count"], "16");
    assert_eq!(doc["results"]["ud_count"], "54");
}

#[test]
fn rho_unrealizable_exits_2() {
    let output = run(&["rho", "-n", "2", "-L", "1,1,3"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn verify_theorem4_passes_on_a_small_grid() {
    let output = run(&["verify", "theorem4", "--n-max", "3", "--len-max", "3"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["results"]["pass"], true);
    assert_eq!(doc["results"]["failing_points"], 0);
    assert!(doc["results"]["checked_points"].as_u64().unwrap() > 0);
}

#[test]
fn verify_unknown_claim_exits_2() {
    let output = run(&["verify", "theorem9"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn table_csv_shape_and_tail() {
    let output = run(&["table", "--family", "12c", "-n", "2", "--c-max", "30", "--format", "csv"]);
    assert_eq!(exit_code(&output), 0);
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c,rho,rho_decimal,abs_error_decimal");
    assert_eq!(lines.len(), 30, "header plus 29 rows for c = 2..=30");
    let last: Vec<&str> = lines[29].split(',').collect();
    assert_eq!(last[0], "30");
    // |rho - 1/6| < 3e-4 at c = 30.
    let abs_error: f64 = last[3].parse().unwrap();
    assert!(abs_error < 3e-4);
}

#[test]
fn table_json_carries_exact_and_decimal_columns() {
    let output = run(&["table", "--family", "11c", "-n", "3", "--c-max", "5"]);
    assert_eq!(exit_code(&output), 0);
    let doc = parse_stdout(&output);
    assert_eq!(doc["results"]["limit"], "1/3");
    let rows = doc["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["c"], 1);
    assert_eq!(rows[0]["rho"], "1/1");
    assert_eq!(rows[1]["rho"], "3/5");
}

#[test]
fn table_rejects_bad_pairings_with_exit_2() {
    let output = run(&["table", "--family", "11c", "-n", "2"]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&["table", "--family", "13c", "-n", "2"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn counts_do_not_depend_on_the_thread_count() {
    let single = run(&["--threads", "1", "count", "ud", "-n", "3", "-L", "2,2,3", "--method", "enumerate"]);
    let multi = run(&["--threads", "4", "count", "ud", "-n", "3", "-L", "2,2,3", "--method", "enumerate"]);
    assert_eq!(exit_code(&single), 0);
    assert_eq!(
        parse_stdout(&single)["results"]["count"],
        parse_stdout(&multi)["results"]["count"]
    );
}

#[test]
fn documents_are_deterministic_modulo_timing() {
    let args = ["count", "ud", "-n", "2", "-L", "1,2,5", "--method", "both"];
    let strip_timing = |output: &Output| {
        let mut doc = parse_stdout(output);
        doc.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string_pretty(&doc).unwrap()
    };
    let first = run(&args);
    let second = run(&args);
    assert_eq!(strip_timing(&first), strip_timing(&second));
    let csv_args = ["table", "--family", "12c", "-n", "2", "--c-max", "12", "--format", "csv"];
    assert_eq!(run(&csv_args).stdout, run(&csv_args).stdout);
}

use std::io::Write;
use std::process::{Command, Output};

use khash::report::{
    to_json, BoundReportRecord, BoundsRecord, CheckRecord, ProbeRecord, SearchRecord,
    SelectionsRecord, VerdictRecord,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tempfile::NamedTempFile;

fn khash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khash"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parse the JSON output into its record type, emit it again and compare bytes.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = khash(&full);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema_version"], 1);
    let rec: T = serde_json::from_str(&text).unwrap();
    let mut again = to_json(&rec);
    if !again.ends_with('\n') {
        again.push('\n');
    }
    assert_eq!(text, again, "{args:?}");
    rec
}

fn code_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const PLANTED: &str = "# words 1, 2, 3 never separate\n3 3\n1 1 2\n1 2 1\n2 1 1\n";

const SKEWED: &str = "\
5 3
1 1 1
2 2 2
3 3 3
4 4 4
5 1 1
1 2 2
2 3 3
3 4 4
4 5 1
5 1 2
";

#[test]
fn json_round_trips() {
    let b: BoundsRecord = round_trip(&["bounds", "--k", "5"]);
    assert_eq!(b.alpha_exact.as_deref(), Some("24/125"));
    let _: BoundsRecord = round_trip(&["bounds", "--k", "4", "--b", "6"]);
    let r: BoundReportRecord = round_trip(&["beta", "--k", "5", "--check-conjecture", "--starts", "30"]);
    assert!((r.beta - 0.190825).abs() < 1e-5);
    let _: ProbeRecord = round_trip(&["theta", "--k", "4", "--gammas", "0.2,0.25", "--starts", "20"]);
    let s: SelectionsRecord = round_trip(&["selections", "--k", "6"]);
    assert_eq!(s.count, 3);
    let _: VerdictRecord = round_trip(&["verify-conjecture", "--k", "4", "--starts", "20"]);
    let _: SearchRecord = round_trip(&["search", "--k", "3", "--n", "3", "--trials", "200", "--seed", "4"]);
    let f = code_file(SKEWED);
    let c: CheckRecord = round_trip(&["check", f.path().to_str().unwrap(), "--gamma", "0.2"]);
    let cl = c.classification.unwrap();
    assert_eq!(cl.balanced, vec![1]);
    assert_eq!(cl.skewed, vec![2, 3]);
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["--format", "json", "beta", "--k", "5", "--mode", "verified", "--check-conjecture", "--seed", "1"];
    assert_eq!(stdout(&khash(&args)), stdout(&khash(&args)));
    let args = ["--format", "json", "search", "--k", "4", "--n", "4", "--trials", "500", "--seed", "9"];
    assert_eq!(stdout(&khash(&args)), stdout(&khash(&args)));
}

#[test]
fn identity_code_is_separated() {
    let f = code_file("4 1\n1\n2\n3\n4\n");
    let c: CheckRecord = round_trip(&["check", f.path().to_str().unwrap()]);
    assert!(c.separation.separated);
}

#[test]
fn planted_violation_reports_witness() {
    let f = code_file(PLANTED);
    let path = f.path().to_str().unwrap();
    let c: CheckRecord = round_trip(&["check", path]);
    assert!(!c.separation.separated);
    assert_eq!(c.separation.witness, Some(vec![1, 2, 3]));
    let text = stdout(&khash(&["check", path]));
    assert!(text.contains("witness") && text.contains("1,2,3"));
    // the covering check needs a separated code
    let out = khash(&["check", path, "--hansel", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("violating words 1,2,3"));
}

#[test]
fn exit_codes() {
    assert_eq!(khash(&["--help"]).status.code(), Some(0));
    assert_eq!(khash(&["bounds"]).status.code(), Some(1));
    assert_eq!(khash(&["bounds", "--k", "1"]).status.code(), Some(1));
    assert_eq!(khash(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(khash(&["check", "/nonexistent/code.txt"]).status.code(), Some(1));
    let bad = code_file("4 2\n1 2\n1 9\n");
    let out = khash(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let big = code_file(&khash::lab::Code::full(4, 3).unwrap().to_text());
    assert_eq!(khash(&["check", big.path().to_str().unwrap(), "--budget", "10"]).status.code(), Some(3));

    // a starved optimizer cannot certify the conjecture
    let out = khash(&["beta", "--k", "5", "--mode", "verified", "--check-conjecture", "--max-iters", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hansel_options() {
    let f = code_file("4 1\n1\n2\n3\n4\n");
    let c: CheckRecord = round_trip(&["check", f.path().to_str().unwrap(), "--hansel", "2", "--fixed", "1,3"]);
    let h = c.hansel.unwrap();
    assert_eq!(h.fixed, vec![1, 3]);
    assert!(h.satisfied);
    let c: CheckRecord = round_trip(&["check", f.path().to_str().unwrap(), "--hansel", "1"]);
    let h = c.hypergraph.unwrap();
    assert!(h.satisfied && !h.satisfied_ratio);
    let out = khash(&["check", f.path().to_str().unwrap(), "--hansel", "2", "--fixed", "1,9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn census_option() {
    let f = code_file(&khash::lab::Code::full(5, 2).unwrap().to_text());
    let c: CheckRecord = round_trip(&["check", f.path().to_str().unwrap(), "--census", "1,2"]);
    let cs = c.census.unwrap();
    assert_eq!(cs.total, cs.expected_total);
    assert_eq!(cs.patterns, 100);
}

#[test]
fn text_and_csv_formats() {
    let text = stdout(&khash(&["bounds", "--k", "5"]));
    assert!(text.contains("alpha") && text.contains("24/125"));
    let csv = stdout(&khash(&["--format", "csv", "selections", "--k", "5"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,index,selection,conjectured");
    assert_eq!(lines.len(), 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = khash(&["--format", "json", "--output", path.to_str().unwrap(), "bounds", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let rec: BoundsRecord = serde_json::from_str(&written).unwrap();
    assert_eq!(rec.k, 4);
}

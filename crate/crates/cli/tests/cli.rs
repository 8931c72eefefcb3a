use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hallkoorn")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn hall_polynomial_ascending() {
    assert_eq!(stdout(&["compute", "hall", "--lambda", "1,1", "--mu", "1", "--nu", "1"]), "1 + q\n");
    let s = stdout(&["compute", "hall", "--lambda", "2", "--mu", "1", "--nu", "1", "--prime", "3"]);
    assert_eq!(s, "1\nat q = 3: 1\n");
}

#[test]
fn lr_and_empty_partitions() {
    assert_eq!(stdout(&["compute", "lr", "--lambda", "2,1", "--mu", "1", "--nu", "1,1"]), "1\n");
    assert_eq!(stdout(&["compute", "lr", "--lambda", "0", "--mu", "", "--nu", "0"]), "1\n");
    assert_eq!(stdout(&["compute", "lr", "--lambda", "3", "--mu", "1", "--nu", "1,1"]), "0\n");
}

#[test]
fn measure_prints_exact_and_numeric() {
    let s = stdout(&["compute", "measure", "--case", "3", "--lambda=1,-1", "--prime", "5"]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "(1 + s^2)/s^2");
    assert!(lines[1].starts_with("at p = 5: 6"), "{s}");
}

#[test]
fn integral_against_closed_form() {
    let s = stdout(&["compute", "integral", "--case", "4", "--lambda", "1,0", "--n", "1"]);
    assert!(s.contains("lhs: 2*s\n"), "{s}");
    assert!(s.contains("closed form: 2*s\n"), "{s}");
    assert!(s.contains("dual path agrees: true"));
}

#[test]
fn hl_and_koornwinder() {
    assert_eq!(stdout(&["compute", "hl", "--lambda", "1", "--n", "2", "--t", "0"]), "(1) * x2^1 + (1) * x1^1\n");
    let s = stdout(&["compute", "koornwinder", "--case", "sp", "--mu", "1", "--n", "1"]);
    assert!(s.starts_with("(1) * x1^-1 + (1) * x1^1\n"), "{s}");
}

#[test]
fn verify_writes_sorted_jsonl_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let out = run(&["--workers", "2", "verify", "thm34", "--n", "1", "--max-weight", "4", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("thm34"));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["status"] != "mismatch"));
    assert_eq!(rows[0]["lambda"], "(0,0)");

    // the case 3 evaluation rows disagree with the closed form
    let out = run(&["verify", "thm36", "--n", "1", "--max-weight", "2", "--mu-weight", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("mismatches:"));
}

#[test]
fn bad_input_is_an_error() {
    let out = run(&["compute", "lr", "--lambda", "1,2", "--mu", "1", "--nu", "2"]);
    assert!(!out.status.success());
    let out = run(&["compute", "hl", "--lambda", "1", "--t", "q"]);
    assert_eq!(out.status.code(), Some(2));
}

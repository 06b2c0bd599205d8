use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn aac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aac"))
        .args(args)
        .env_remove("AAC_PRECISION")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_aac_at_13() {
    let o = aac(&["verify", "aac", "--p", "13"]);
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["stmt"], "AAC_EQ2");
    assert_eq!(v["holds"], true);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn verify_every_statement_at_a_valid_point() {
    let cases: &[&[&str]] = &[
        &["verify", "thm21", "--p", "13", "--a", "1,3,4,9,10,12", "--b", "2,5,6,7,8,11"],
        &["verify", "thm51", "--p", "29", "--m", "3"],
        &["verify", "cor53", "--p", "37", "--m", "5"],
        &["verify", "thm54", "--p", "13", "--M", "100000000000000000000000000002"],
        &["verify", "eisenstein", "--p", "13"],
        &["verify", "gen-eisenstein", "--p", "7", "--m", "3"],
        &["verify", "aac1952", "--p", "13", "--n", "2"],
    ];
    for args in cases {
        let o = aac(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(json_lines(&o).iter().all(|v| v["holds"] == true), "{args:?}");
    }
}

#[test]
fn thm51_emits_both_parts() {
    let o = aac(&["verify", "thm51", "--p", "13", "--m", "2"]);
    let stmts: Vec<Value> = json_lines(&o).iter().map(|v| v["stmt"].clone()).collect();
    assert_eq!(stmts, ["THM51_R", "THM51_N"]);
}

#[test]
fn cor53_notes_the_printed_form() {
    let o = aac(&["verify", "cor53", "--p", "13", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let notes = json_lines(&o)[0]["notes"].to_string();
    assert!(notes.contains("printed-form-"), "{notes}");
    assert!(notes.contains("printed-rhs="), "{notes}");
}

#[test]
fn precondition_failures_exit_2() {
    for args in [
        &["verify", "aac", "--p", "7"][..],
        &["verify", "aac", "--p", "15"],
        &["verify", "thm54", "--p", "13", "--M", "4"],
        &["verify", "cor53", "--p", "13"],
        &["verify", "gen-eisenstein", "--p", "13", "--m", "2"],
        &["verify", "nonsense", "--p", "13"],
        &["scan", "gaac", "--min", "100", "--max", "10"],
        &["unit", "--d", "49"],
        &["class-number", "--disc", "7"],
    ] {
        assert_eq!(code(&aac(args)), 2, "{args:?}");
    }
}

#[test]
fn bad_precision_env_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_aac"))
        .args(["class-number", "--disc", "5"])
        .env("AAC_PRECISION", "quad")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn extended_precision_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_aac"))
        .args(["class-number", "--disc", "229"])
        .env("AAC_PRECISION", "extended")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["dirichlet"]["precision"], "extended");
    assert_eq!(v["dirichlet"]["h"], 3);
}

#[test]
fn unit_command() {
    let o = aac(&["unit", "--d", "13"]);
    assert_eq!(code(&o), 0);
    let v = &json_lines(&o)[0];
    assert_eq!(v["cf"]["period"], serde_json::json!([1, 1, 1, 1, 6]));
    assert_eq!(v["pell"]["u1"], "649");
    assert_eq!(v["unit"]["t"], "3");
    assert_eq!(v["unit"]["norm"], -1);
}

#[test]
fn class_numbers() {
    let v = &json_lines(&aac(&["class-number", "--disc", "12"]))[0];
    assert_eq!((v["forms_proper"].as_u64(), v["forms_wide"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["dirichlet"]["h"], 1);
    let v = &json_lines(&aac(&["class-number", "--disc", "40"]))[0];
    assert_eq!(v["forms_proper"], 2);
    assert_eq!(v["dirichlet"]["h"], 2);
}

#[test]
fn gaac_scan_finds_1817() {
    let o = aac(&["scan", "gaac", "--max", "2000"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("failures: 1817\n"), "{out}");
}

#[test]
fn aac_scan_holds() {
    let o = aac(&["scan", "aac", "--max", "2000", "--jobs", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("failed 0"));
}

#[test]
fn eisenstein_scan_holds() {
    assert_eq!(code(&aac(&["scan", "eisenstein", "--max", "3000"])), 0);
}

#[test]
fn density_ratio() {
    let o = aac(&["scan", "density", "--x", "10000"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("count 3229 of x = 10000, ratio 0.3229"), "{}", stdout(&o));
}

fn scan_to(path: &Path, jobs: &str) -> Output {
    aac(&["scan", "gaac", "--max", "3000", "--jobs", jobs, "--checkpoint", path.to_str().unwrap()])
}

#[test]
fn checkpoint_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    scan_to(&a, "1");
    scan_to(&b, "4");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn resume_after_truncation_reproduces_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    assert_eq!(code(&scan_to(&full, "2")), 1);
    let records = fs::read_to_string(&full).unwrap().lines().count() - 1;
    let bytes = fs::read(&full).unwrap();
    for cut in [bytes.len() / 3, bytes.len() / 2 + 17, bytes.len() - 1, 5] {
        let part = dir.path().join(format!("cut{cut}.jsonl"));
        fs::write(&part, &bytes[..cut]).unwrap();
        let o = scan_to(&part, "3");
        assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(fs::read(&part).unwrap(), bytes, "cut at {cut}");
        let summary = format!("counted {records}, held {}, failed 1", records - 1);
        assert!(stdout(&o).contains(&summary), "{}", stdout(&o));
    }
}

#[test]
fn rerun_on_complete_checkpoint_recomputes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    scan_to(&path, "2");
    let before = fs::read(&path).unwrap();
    let o = scan_to(&path, "2");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failures: 1817"));
    assert_eq!(fs::read(&path).unwrap(), before);
}

#[test]
fn checkpoint_of_another_scan_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    scan_to(&path, "2");
    let o = aac(&["scan", "gaac", "--max", "2500", "--checkpoint", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn corrupt_checkpoint_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    scan_to(&path, "2");
    let text = fs::read_to_string(&path).unwrap();
    // flip a digit inside the third record without touching its crc
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[3] = lines[3].replacen("\"lhs\":", "\"lhs\":9", 1);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert_eq!(code(&scan_to(&path, "2")), 3);
    assert_eq!(code(&aac(&["report", "--in", path.to_str().unwrap()])), 3);

    fs::write(&path, "not json\n").unwrap();
    assert_eq!(code(&aac(&["report", "--in", path.to_str().unwrap()])), 3);
    assert_eq!(code(&aac(&["report", "--in", dir.path().join("missing").to_str().unwrap()])), 3);
}

#[test]
fn report_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    scan_to(&path, "2");
    let p = path.to_str().unwrap();

    let json = aac(&["report", "--in", p, "--format", "json"]);
    assert_eq!(code(&json), 0);
    let recs = json_lines(&json);
    assert_eq!(recs.len(), fs::read_to_string(&path).unwrap().lines().count() - 1);
    let failed: Vec<u64> = recs.iter().filter(|r| r["holds"] == false).map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(failed, [1817]);

    let csv = stdout(&aac(&["report", "--in", p, "--format", "csv"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("stmt,p,params,lhs,rhs,holds,notes"));
    assert_eq!(lines.count(), recs.len());

    let table = stdout(&aac(&["report", "--in", p]));
    assert!(table.starts_with("stmt"));
    assert!(table.lines().any(|l| l.contains("1817") && l.contains("false")));
}

#[test]
fn report_empty_and_single_record() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let o = aac(&["report", "--in", empty.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "");

    let one = dir.path().join("one.jsonl");
    assert_eq!(code(&aac(&["scan", "density", "--x", "1000", "--checkpoint", one.to_str().unwrap()])), 0);
    let recs = json_lines(&aac(&["report", "--in", one.to_str().unwrap(), "--format", "json"]));
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["stmt"], "DENSITY");
    assert_eq!(recs[0]["p"], 1000);
}

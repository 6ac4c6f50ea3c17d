use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn sysmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sysmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dump_matches_golden_file() {
    let out = sysmod(&["dump", &path("library.sm"), &path("library.ss")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let golden = std::fs::read_to_string(data("library.dump")).unwrap();
    assert_eq!(stdout(&out), golden);
}

#[test]
fn dump_is_byte_identical_across_runs() {
    let a = sysmod(&["dump", &path("library.sm"), &path("library.ss")]);
    let b = sysmod(&["dump", &path("library.sm"), &path("library.ss")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_reports_ok() {
    let out = sysmod(&["check", &path("library.sm")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "OK, 0 violations\n");
}

#[test]
fn syntax_errors_are_positioned() {
    let out = sysmod(&["check", &path("bad_syntax.sm")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("2:5: unexpected `loc` (expected `:`)"), "{}", stderr(&out));
}

#[test]
fn strict_inheritance_flag() {
    let lax = sysmod(&["check", &path("bad_decl.sm")]);
    assert_eq!(lax.status.code(), Some(1));
    assert!(stderr(&lax).contains("3:1: unknown superclass `Nowhere`"));

    let strict = sysmod(&["check", "--strict-inheritance", &path("bad_decl.sm")]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stderr(&strict).contains("2:1:"), "{}", stderr(&strict));
    assert!(stderr(&strict).contains("strict inheritance"));
}

#[test]
fn failing_script_stops_with_partial_transcript() {
    let out = sysmod(&["run", &path("library.sm"), &path("carrier.ss")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("#2 error at 2:1: "), "{}", lines[1]);
}

#[test]
fn json_output() {
    let dir = std::env::temp_dir().join(format!("sysmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("run.json");
    let out = sysmod(&[
        "run",
        &path("library.sm"),
        &path("library.ss"),
        "--json",
        &out_path.to_string_lossy(),
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(doc["failure"].is_null());
    assert_eq!(doc["violations"], 0);
    let holds = doc["snapshot"]["associations"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["name"] == "Holds")
        .unwrap();
    assert_eq!(holds["strategy"], "redundant");
    assert_eq!(holds["links"], serde_json::json!([["Copy#1", "Staff#1"]]));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sysmod(&[]).status.code(), Some(2));
    assert_eq!(sysmod(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sysmod(&["check", &path("missing.sm")]).status.code(), Some(2));
}

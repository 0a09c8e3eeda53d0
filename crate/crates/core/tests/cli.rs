//! End-to-end runs of the `coquasi` binary.

use std::path::Path;
use std::process::{Command, Output};

use coquasi::cli::file::emit_algebra;
use coquasi::cli::report::Report;
use coquasi::zoo;

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coquasi"));
    cmd.args(args).env_remove("COQUASI_MAX_DIM");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn emit_zoo(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let p = path.to_str().unwrap().to_string();
    let out = run(&["zoo", name, "--emit", &p], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn zoo_list_names_every_member() {
    let out = run(&["zoo", "list"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    for h in zoo::standard().unwrap() {
        assert!(names.contains(&h.name().to_string()), "{}", h.name());
    }
}

#[test]
fn emitted_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["H4", "kZ3_omega", "Taft3"] {
        let p = emit_zoo(dir.path(), name);
        let first = std::fs::read_to_string(&p).unwrap();
        let stdout = run(&["zoo", name], &[]).stdout;
        assert_eq!(String::from_utf8(stdout).unwrap(), first, "{name}");
        let h = coquasi::cli::file::parse_algebra(Path::new(&p)).unwrap().0;
        assert_eq!(emit_algebra(&h), first, "{name}");
    }
}

#[test]
fn report_passes_on_h4_and_is_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit_zoo(dir.path(), "H4");
    let out = run(&["--json", "report", &p], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.input.sha256, coquasi::cli::report::sha256_hex(&std::fs::read(&p).unwrap()));
    assert!(r.checks.iter().any(|c| c.name.starts_with("radford.")));
}

#[test]
fn corrupted_associator_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, emit_algebra(&zoo::denormalized_z2_cocycle().unwrap())).unwrap();
    let out = run(&["--json", "check", p.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    let r = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c.witness.is_some()), "{failed:?}");
}

#[test]
fn hopf_case_on_a_non_hopf_algebra_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit_zoo(dir.path(), "kZ3_omega");
    let out = run(&["hopf-case", &p], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn dimension_guard_is_configurable() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit_zoo(dir.path(), "Taft3");
    let out = run(&["check", &p], &[("COQUASI_MAX_DIM", "4")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('9'));
    let out = run(&["check", &p], &[]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"format\": \"coquasi-algebra/1\"}").unwrap();
    let out = run(&["check", p.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", dir.path().join("missing.json").to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_goes_to_stdout_and_usage_errors_exit_two() {
    let out = run(&["--help"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty() && out.stderr.is_empty());
    let out = run(&["no-such-command"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty() && !out.stderr.is_empty());
}

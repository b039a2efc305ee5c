//! The external-solver driver against scripted stand-in solvers.
#![cfg(unix)]

use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use relrep::catalog;
use relrep::sat::{encode, solve_external, SatError, SolveOutcome};

fn script(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format!("#!/bin/sh\n{body}\n")).unwrap();
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755)).unwrap();
    path
}

fn run(body: &str, budget: Option<Duration>) -> Result<SolveOutcome, SatError> {
    let dir = tempfile::tempdir().unwrap();
    let solver = script(dir.path(), "solver", body);
    let s = catalog::get("63_65").unwrap();
    let inst = encode(&s, 29).unwrap();
    solve_external(&inst, &s, solver.to_str().unwrap(), budget)
}

#[test]
fn unsat_verdict_is_reported() {
    assert_eq!(run("echo 's UNSATISFIABLE'; exit 20", None).unwrap(), SolveOutcome::Unsat);
}

#[test]
fn garbage_output_is_an_error_with_excerpt() {
    match run("echo 'segfault in module foo'; exit 139", None) {
        Err(SatError::Solver { excerpt, .. }) => assert!(excerpt.contains("segfault")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_verdict_is_an_error() {
    assert!(matches!(run("echo 's UNKNOWN'", None), Err(SatError::Solver { .. })));
}

#[test]
fn model_that_fails_verification_is_rejected() {
    // every orbit colored a, so b and c are empty
    let dir = tempfile::tempdir().unwrap();
    let s = catalog::get("63_65").unwrap();
    let inst = encode(&s, 29).unwrap();
    let lits: Vec<String> = (0..14)
        .flat_map(|o| (0..3).map(move |a| if a == 0 { 1 + 3 * o } else { -(1 + 3 * o + a) }))
        .map(|l| l.to_string())
        .collect();
    let body = format!("echo 's SATISFIABLE'; echo 'v {} 0'", lits.join(" "));
    let solver = script(dir.path(), "liar", &body);
    let r = solve_external(&inst, &s, solver.to_str().unwrap(), None);
    assert!(matches!(r, Err(SatError::Solver { .. })), "{r:?}");
}

#[test]
fn malformed_model_is_rejected() {
    assert!(matches!(
        run("echo 's SATISFIABLE'; echo 'v 1 2 x 0'", None),
        Err(SatError::Solver { .. })
    ));
}

#[test]
fn slow_solver_times_out() {
    let r = run("sleep 5; echo 's UNSATISFIABLE'", Some(Duration::from_millis(200))).unwrap();
    assert_eq!(r, SolveOutcome::Timeout);
}

#[test]
fn missing_program_is_an_error() {
    let s = catalog::get("63_65").unwrap();
    let inst = encode(&s, 29).unwrap();
    let r = solve_external(&inst, &s, "/nonexistent/solver --flag", None);
    assert!(matches!(r, Err(SatError::Solver { .. })));
}

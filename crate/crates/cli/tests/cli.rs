use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use relrep::io as rio;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn relrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relrep"))
        .args(args)
        .env_remove("RELREP_SOLVER")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    fixtures().join(name).to_str().unwrap().to_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn golden_colorings_verify() {
    let o = relrep(&["verify", "--algebra", "63_65", "--coloring", &fixture("63_65_z29.json")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("valid\n"));
    let o = relrep(&["verify", "--algebra", "57_65", "--coloring", &fixture("57_65_z46")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn wrong_algebra_lists_violations() {
    let o = relrep(&["verify", "--algebra", "33_65", "--coloring", &fixture("63_65_z29.json")]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("forbidden-witnessed")), "{out}");
    assert!(out.ends_with("invalid\n"));
}

#[test]
fn violation_cap_truncates() {
    let o = relrep(&["verify", "--algebra", "33_65", "--coloring", &fixture("63_65_z29.json"), "--cap", "3"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("forbidden-witnessed")).count(), 3);
    assert!(out.contains("truncated"));
}

#[test]
fn algebra_files_resolve_like_catalog_names() {
    let path = fixture("algebras/63_65.json");
    let o = relrep(&["verify", "--algebra", &path, "--coloring", &fixture("63_65_z29.json")]);
    assert_eq!(code(&o), 0);
}

#[test]
fn bad_inputs_exit_2() {
    assert_eq!(code(&relrep(&["verify", "--algebra", "99_99", "--coloring", &fixture("63_65_z29.json")])), 2);
    assert_eq!(code(&relrep(&["verify", "--algebra", "63_65", "--coloring", "/nonexistent.json"])), 2);
    assert_eq!(code(&relrep(&["search", "--algebra", "63_65", "--group", "q7"])), 2);
    assert_eq!(code(&relrep(&["search", "--algebra", "63_65", "--group", "z29", "--engine", "sat"])), 2);
    assert_eq!(code(&relrep(&["frobnicate"])), 2);
}

#[test]
fn search_writes_verifiable_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let log = dir.path().join("log.jsonl");
    let o = relrep(&[
        "search",
        "--algebra",
        "63_65",
        "--group",
        "z29",
        "--certificates",
        path_str(&certs),
        "--log",
        path_str(&log),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let cert = certs.join("63_65_z29.json");
    assert!(stdout(&o).contains("certificate="));
    let o = relrep(&["verify", "--algebra", "63_65", "--coloring", path_str(&cert)]);
    assert_eq!(code(&o), 0);
    let records = rio::read_records(&log).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].verdict, "found");
    assert_eq!(records[0].certificate.as_deref(), Some(path_str(&cert)));
}

#[test]
fn nonexistence_sweeps_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.jsonl");
    let o = relrep(&[
        "search",
        "--algebra",
        "33_65",
        "--n-min",
        "2",
        "--n-max",
        "36",
        "--certificates",
        path_str(dir.path()),
        "--log",
        path_str(&log),
    ]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let records = rio::read_records(&log).unwrap();
    assert_eq!(records.len(), 35);
    assert!(records.iter().all(|r| r.verdict == "none" && r.certificate.is_none()));

    let o = relrep(&["search", "--algebra", "33_65", "--group", "s4"]);
    assert_eq!(code(&o), 1);
    let o = relrep(&["spectrum", "--algebra", "33_65", "--n-min", "2", "--n-max", "20", "--jobs", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("spectrum 33_65: {}"), "{}", stdout(&o));
}

#[test]
fn spectrum_certificates_all_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = relrep(&[
        "spectrum",
        "--algebra",
        "63_65",
        "--n-min",
        "20",
        "--n-max",
        "32",
        "--certificates",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let found = stdout(&o).lines().filter(|l| l.contains(" found ")).count();
    let certs: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(found > 0);
    assert_eq!(certs.len(), found);
    for cert in certs {
        let o = relrep(&["verify", "--algebra", "63_65", "--coloring", path_str(&cert)]);
        assert_eq!(code(&o), 0, "{}", cert.display());
    }
}

#[test]
fn multiplier_pruning_marks_none_uncertified() {
    let o = relrep(&["search", "--algebra", "33_65", "--group", "z20", "--prune-multipliers"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("none-uncertified"));
}

#[test]
fn exhausted_budget_exits_3() {
    let o = relrep(&["search", "--algebra", "33_65", "--group", "z50", "--budget", "0.05"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).contains("timeout"));
}

#[test]
fn enumerate_counts_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = relrep(&["enumerate", "--diversity-atoms", "3", "--flexible-only", "--out-dir", path_str(dir.path())]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("10 structures\n"));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 10);
    for f in files {
        rio::load_algebra(&f).unwrap();
    }
    assert!(stdout(&relrep(&["enumerate", "--diversity-atoms", "2"])).ends_with("7 structures\n"));
}

#[test]
fn ramsey_bounds() {
    let o = relrep(&["ramsey", "--coloring", &fixture("63_65_z29.json"), "--bounds", "a=4,b=3,c=3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    // class a holds triangles
    let o = relrep(&["ramsey", "--coloring", &fixture("63_65_z29.json"), "--bounds", "a=3,b=3,c=3"]);
    assert_eq!(code(&o), 1);
    let o = relrep(&["ramsey", "--coloring", &fixture("63_65_z29.json"), "--bounds", "a=2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn encode_solve_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("i.cnf");
    let map = dir.path().join("i.map");
    let o = relrep(&["encode", "--algebra", "63_65", "--n", "29", "--cnf", path_str(&cnf), "--map", path_str(&map)]);
    assert_eq!(code(&o), 0);
    let solved = Command::new(env!("CARGO_BIN_EXE_relrep-satsolve")).arg(&cnf).output().unwrap();
    assert_eq!(code(&solved), 10);
    let model = dir.path().join("model.txt");
    std::fs::write(&model, &solved.stdout).unwrap();
    let cert = dir.path().join("decoded.json");
    let o = relrep(&[
        "decode",
        "--algebra",
        "63_65",
        "--n",
        "29",
        "--map",
        path_str(&map),
        "--model",
        path_str(&model),
        "--out",
        path_str(&cert),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&relrep(&["verify", "--algebra", "63_65", "--coloring", path_str(&cert)])), 0);

    // unsat instance
    let o = relrep(&["encode", "--algebra", "33_65", "--n", "29", "--cnf", path_str(&cnf), "--map", path_str(&map)]);
    assert_eq!(code(&o), 0);
    let solved = Command::new(env!("CARGO_BIN_EXE_relrep-satsolve")).arg(&cnf).output().unwrap();
    assert_eq!(code(&solved), 20);
    std::fs::write(&model, &solved.stdout).unwrap();
    let o = relrep(&["decode", "--algebra", "33_65", "--n", "29", "--map", path_str(&map), "--model", path_str(&model)]);
    assert_eq!(code(&o), 1);
}

#[test]
fn decode_rejects_garbage_models() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("i.cnf");
    let map = dir.path().join("i.map");
    relrep(&["encode", "--algebra", "63_65", "--n", "29", "--cnf", path_str(&cnf), "--map", path_str(&map)]);
    let model = dir.path().join("model.txt");
    std::fs::write(&model, "v 1 2 3 frog 0\n").unwrap();
    let o = relrep(&["decode", "--algebra", "63_65", "--n", "29", "--map", path_str(&map), "--model", path_str(&model)]);
    assert_eq!(code(&o), 2);
    // two colors on orbit 1
    std::fs::write(&model, "v 1 2 0\n").unwrap();
    let o = relrep(&["decode", "--algebra", "63_65", "--n", "29", "--map", path_str(&map), "--model", path_str(&model)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sat_engine_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let solver = env!("CARGO_BIN_EXE_relrep-satsolve");
    let o = relrep(&[
        "search",
        "--algebra",
        "57_65",
        "--group",
        "z46",
        "--engine",
        "sat",
        "--solver-cmd",
        solver,
        "--certificates",
        path_str(dir.path()),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let cert = dir.path().join("57_65_z46.json");
    assert_eq!(code(&relrep(&["verify", "--algebra", "57_65", "--coloring", path_str(&cert)])), 0);

    // a solver that prints nothing useful
    let o = relrep(&["search", "--algebra", "57_65", "--group", "z46", "--engine", "sat", "--solver-cmd", "echo"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no verdict"));
}

#[test]
fn match_table_pairs_every_row() {
    let o = relrep(&["match-table", "--n-max", "14"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("minima {4, 5, 6, 6, 8, 9, 12}"));
}

#[test]
fn catalog_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in relrep::catalog::names() {
        let o = relrep(&["catalog", "--show", name]);
        assert_eq!(code(&o), 0);
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, &o.stdout).unwrap();
        let loaded = rio::load_algebra(&path).unwrap();
        assert!(loaded.is_isomorphic(&relrep::catalog::get(name).unwrap()));
        let shipped = rio::load_algebra(&fixtures().join("algebras").join(format!("{name}.json"))).unwrap();
        assert_eq!(shipped.forbidden(), loaded.forbidden());
    }
}

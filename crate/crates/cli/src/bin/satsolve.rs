//! Minimal DIMACS solver front end over varisat.
//!
//! Usage: `relrep-satsolve <file.cnf>`. Prints `s SATISFIABLE` with `v`
//! lines, or `s UNSATISFIABLE`; exits 10 / 20 like most competition solvers.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::process::ExitCode;

use varisat::Solver;

fn main() -> ExitCode {
    let Some(path) = std::env::args().nth(1) else {
        eprintln!("usage: relrep-satsolve <file.cnf>");
        return ExitCode::from(2);
    };
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(2);
        }
    };
    let mut solver = Solver::new();
    if let Err(e) = solver.add_dimacs_cnf(BufReader::new(file)) {
        eprintln!("{path}: {e}");
        return ExitCode::from(2);
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match solver.solve() {
        Ok(true) => {
            let model = solver.model().unwrap_or_default();
            let _ = writeln!(out, "s SATISFIABLE");
            for chunk in model.chunks(20) {
                let lits: Vec<String> = chunk.iter().map(|l| l.to_dimacs().to_string()).collect();
                let _ = writeln!(out, "v {}", lits.join(" "));
            }
            let _ = writeln!(out, "v 0");
            ExitCode::from(10)
        }
        Ok(false) => {
            let _ = writeln!(out, "s UNSATISFIABLE");
            ExitCode::from(20)
        }
        Err(e) => {
            eprintln!("solver failed: {e}");
            let _ = writeln!(out, "s UNKNOWN");
            ExitCode::from(1)
        }
    }
}

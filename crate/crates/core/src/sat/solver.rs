//! Driving an external DIMACS solver.
//!
//! The solver is run as `<command...> <cnf-path>` and must print a
//! `s SATISFIABLE` or `s UNSATISFIABLE` line, with the model on `v` lines.
//! Exit status is ignored when a verdict is present (many solvers exit 10
//! or 20).

use std::fs::{self, File};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::{decode_model, parse_model, write_dimacs, CnfInstance, SatError};
use crate::algebra::AtomStructure;
use crate::coloring::Coloring;
use crate::verify;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Decoded and re-verified model.
    Sat(Coloring),
    Unsat,
    Timeout,
}

const EXCERPT_LEN: usize = 400;

fn excerpt(text: &str) -> String {
    let t = text.trim();
    match t.char_indices().nth(EXCERPT_LEN) {
        Some((i, _)) => format!("{}...", &t[..i]),
        None => t.to_owned(),
    }
}

pub fn solve_external(
    inst: &CnfInstance,
    s: &AtomStructure,
    command: &str,
    budget: Option<Duration>,
) -> Result<SolveOutcome, SatError> {
    let mut words = command.split_whitespace();
    let program = words.next().ok_or_else(|| SatError::Solver {
        message: "empty solver command".into(),
        excerpt: String::new(),
    })?;
    let dir = tempfile::tempdir().map_err(|e| SatError::io(std::env::temp_dir(), e))?;
    let cnf = dir.path().join("instance.cnf");
    let out_path = dir.path().join("stdout");
    let err_path = dir.path().join("stderr");
    fs::write(&cnf, write_dimacs(inst)).map_err(|e| SatError::io(&cnf, e))?;
    let stdout = File::create(&out_path).map_err(|e| SatError::io(&out_path, e))?;
    let stderr = File::create(&err_path).map_err(|e| SatError::io(&err_path, e))?;

    let mut child = Command::new(program)
        .args(words)
        .arg(&cnf)
        .stdin(Stdio::null())
        .stdout(stdout)
        .stderr(stderr)
        .spawn()
        .map_err(|e| SatError::Solver {
            message: format!("cannot start {program:?}: {e}"),
            excerpt: String::new(),
        })?;
    let start = Instant::now();
    let status = loop {
        match child.try_wait() {
            Ok(Some(status)) => break status,
            Ok(None) => {}
            Err(e) => {
                return Err(SatError::Solver {
                    message: format!("waiting for solver: {e}"),
                    excerpt: String::new(),
                })
            }
        }
        if budget.is_some_and(|b| start.elapsed() >= b) {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(SolveOutcome::Timeout);
        }
        std::thread::sleep(Duration::from_millis(5));
    };

    let output = fs::read_to_string(&out_path).map_err(|e| SatError::io(&out_path, e))?;
    let verdict = output
        .lines()
        .filter_map(|l| l.trim().strip_prefix("s "))
        .map(str::trim)
        .next();
    match verdict {
        Some("UNSATISFIABLE") => Ok(SolveOutcome::Unsat),
        Some("SATISFIABLE") => {
            let model = parse_model(&output).map_err(|e| SatError::Solver {
                message: e.to_string(),
                excerpt: excerpt(&output),
            })?;
            let coloring = decode_model(&inst.map, &model, s).map_err(|e| SatError::Solver {
                message: format!("model does not decode: {e}"),
                excerpt: excerpt(&output),
            })?;
            let report = verify::verify(s, &coloring).map_err(|e| SatError::Solver {
                message: e.to_string(),
                excerpt: String::new(),
            })?;
            if !report.is_valid() {
                let first = report.violations.first().map(ToString::to_string).unwrap_or_default();
                return Err(SatError::Solver {
                    message: "solver model fails verification".into(),
                    excerpt: first,
                });
            }
            Ok(SolveOutcome::Sat(coloring))
        }
        Some(other) => Err(SatError::Solver {
            message: format!("unknown verdict {other:?}"),
            excerpt: excerpt(&output),
        }),
        None => {
            let err = fs::read_to_string(&err_path).unwrap_or_default();
            Err(SatError::Solver {
                message: format!("no verdict from solver (exit {status})"),
                excerpt: excerpt(&format!("{output}{err}")),
            })
        }
    }
}

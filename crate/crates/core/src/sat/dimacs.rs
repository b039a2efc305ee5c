use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{CnfInstance, PairVar, SatError, VarMap};
use crate::group::FiniteGroup;

/// DIMACS text: comment lines, `p cnf <vars> <clauses>`, one clause per
/// line terminated by ` 0`.
pub fn write_dimacs(inst: &CnfInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c relrep {} n={}", inst.algebra, inst.map.n);
    let _ = writeln!(out, "p cnf {} {}", inst.num_vars(), inst.clauses.len());
    for clause in &inst.clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Sidecar map: `v <id> <orbit-rep> <atom>` lines, then
/// `d <id> <y> <atom> <z> <atom>` lines.
pub fn write_map(map: &VarMap) -> String {
    let mut out = String::new();
    for (o, rep) in map.orbits.iter().enumerate() {
        for (a, atom) in map.atoms.iter().enumerate() {
            let _ = writeln!(out, "v {} {} {}", map.color_var(o, a), rep, atom);
        }
    }
    let base = map.num_color_vars();
    for (k, p) in map.pairs.iter().enumerate() {
        let _ = writeln!(
            out,
            "d {} {} {} {} {}",
            base + k + 1,
            p.y,
            map.atoms[p.i],
            p.z,
            map.atoms[p.j]
        );
    }
    out
}

pub fn emit_dimacs(inst: &CnfInstance, cnf_path: &Path, map_path: &Path) -> Result<(), SatError> {
    fs::write(cnf_path, write_dimacs(inst)).map_err(|e| SatError::io(cnf_path, e))?;
    fs::write(map_path, write_map(&inst.map)).map_err(|e| SatError::io(map_path, e))?;
    Ok(())
}

/// Parses DIMACS CNF into `(variable count, clauses)`.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), SatError> {
    let bad = |m: String| SatError::DimacsParse(m);
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let f: Vec<&str> = rest.split_whitespace().collect();
            match f.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| bad(format!("bad header {line:?}")))?;
                    let c = c.parse().map_err(|_| bad(format!("bad header {line:?}")))?;
                    header = Some((v, c));
                }
                _ => return Err(bad(format!("bad header {line:?}"))),
            }
            continue;
        }
        let (vars, _) = header.ok_or_else(|| bad("clause before header".into()))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(bad(format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| bad("missing header".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(bad(format!("header says {count} clauses, found {}", clauses.len())));
    }
    Ok((vars, clauses))
}

/// Parses a map file for modulus `n`. Color ids must be orbit-major over
/// the orbits of `Z/n` in increasing order.
pub fn parse_map(text: &str, n: usize) -> Result<VarMap, SatError> {
    let bad = |m: String| SatError::MapParse(m);
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad(format!("bad number {t:?}")));
    let mut colors: Vec<(usize, usize, String)> = Vec::new();
    let mut pairs: Vec<(usize, usize, String, usize, String)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            ["v", id, rep, atom] => colors.push((num(id)?, num(rep)?, atom.to_string())),
            ["d", id, y, i, z, j] => {
                pairs.push((num(id)?, num(y)?, i.to_string(), num(z)?, j.to_string()))
            }
            _ => return Err(bad(format!("unrecognised line {line:?}"))),
        }
    }
    let mut atoms: Vec<String> = Vec::new();
    let mut orbits: Vec<usize> = Vec::new();
    for (_, rep, atom) in &colors {
        if !atoms.contains(atom) {
            atoms.push(atom.clone());
        }
        if orbits.last() != Some(rep) {
            orbits.push(*rep);
        }
    }
    let g = FiniteGroup::cyclic(n).map_err(|_| bad(format!("bad modulus {n}")))?;
    let expected: Vec<usize> = g.inverse_orbits().iter().map(|o| o.rep).collect();
    if orbits != expected {
        return Err(bad(format!("orbit representatives do not match Z/{n}")));
    }
    let mut map = VarMap {
        n,
        atoms,
        orbits,
        pairs: Vec::new(),
    };
    for (k, (id, rep, atom)) in colors.iter().enumerate() {
        let o = k / map.atoms.len();
        let a = map.atoms.iter().position(|x| x == atom).unwrap();
        if map.orbits.get(o) != Some(rep) || map.color_var(o, a) as usize != *id {
            return Err(bad(format!("unexpected color line v {id} {rep} {atom}")));
        }
    }
    if colors.len() != map.num_color_vars() {
        return Err(bad("color lines do not cover every orbit and atom".into()));
    }
    let atom = |name: &str| {
        map.atoms
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| bad(format!("unknown atom {name:?}")))
    };
    let mut parsed = Vec::with_capacity(pairs.len());
    for (k, (id, y, i, z, j)) in pairs.iter().enumerate() {
        if *id != map.num_color_vars() + k + 1 {
            return Err(bad(format!("pair id {id} out of sequence")));
        }
        parsed.push(PairVar { y: *y, i: atom(i)?, z: *z, j: atom(j)? });
    }
    map.pairs = parsed;
    Ok(map)
}

/// Extracts true variable ids from solver output (`v` lines) or from a bare
/// list of literals.
pub fn parse_model(text: &str) -> Result<BTreeSet<u32>, SatError> {
    let has_v = text.lines().any(|l| l.trim_start().starts_with("v ") || l.trim() == "v");
    let mut model = BTreeSet::new();
    for line in text.lines().map(str::trim) {
        let body = if has_v {
            match line.strip_prefix('v') {
                Some(rest) => rest,
                None => continue,
            }
        } else if line.starts_with('c') || line.starts_with('s') || line.is_empty() {
            continue;
        } else {
            line
        };
        for tok in body.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| SatError::DimacsParse(format!("bad model literal {tok:?}")))?;
            if lit > 0 {
                model.insert(lit as u32);
            }
        }
    }
    Ok(model)
}

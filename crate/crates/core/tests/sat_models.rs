//! The CNF encoding checked against the backtracker and the verifier with an
//! in-process solver.

use std::collections::BTreeSet;
use std::sync::Arc;

use relrep::sat::{decode_model, encode, encode_with, CnfInstance};
use relrep::search::{search_group, SearchConfig};
use relrep::{catalog, enumerate_structures, verify, AtomStructure, FiniteGroup};
use varisat::{ExtendFormula, Lit, Solver};

fn solver_for(inst: &CnfInstance) -> Solver<'static> {
    let mut solver = Solver::new();
    for clause in &inst.clauses {
        let lits: Vec<Lit> = clause.iter().map(|&l| Lit::from_dimacs(l as isize)).collect();
        solver.add_clause(&lits);
    }
    solver
}

/// All models projected onto the color variables, via blocking clauses.
fn all_color_models(inst: &CnfInstance) -> Vec<BTreeSet<u32>> {
    let mut solver = solver_for(inst);
    let colors = inst.map.num_color_vars() as isize;
    let mut out = Vec::new();
    while solver.solve().unwrap() {
        let model: BTreeSet<u32> = solver
            .model()
            .unwrap()
            .iter()
            .map(|l| l.to_dimacs())
            .filter(|&l| l > 0)
            .map(|l| l as u32)
            .collect();
        let block: Vec<Lit> = (1..=colors)
            .map(|v| {
                let lit = Lit::from_dimacs(v);
                if model.contains(&(v as u32)) {
                    !lit
                } else {
                    lit
                }
            })
            .collect();
        solver.add_clause(&block);
        out.push(model);
    }
    out
}

fn naive_count(s: &AtomStructure, n: usize) -> usize {
    let g = Arc::new(FiniteGroup::cyclic(n).unwrap());
    let orbits = g.inverse_orbits();
    let m = s.num_atoms();
    (0..m.pow(orbits.len() as u32))
        .filter(|&code| {
            let mut classes: Vec<(String, Vec<usize>)> =
                s.atoms().iter().map(|a| (a.name().to_owned(), Vec::new())).collect();
            let mut rest = code;
            for o in &orbits {
                classes[rest % m].1.extend(o.members());
                rest /= m;
            }
            let c = relrep::Coloring::new(g.clone(), classes).unwrap();
            verify(s, &c).unwrap().is_valid()
        })
        .count()
}

fn small_structures() -> Vec<AtomStructure> {
    let mut v: Vec<AtomStructure> = catalog::names().into_iter().map(|n| catalog::get(n).unwrap()).collect();
    v.extend(enumerate_structures(2, false).unwrap());
    v.extend(enumerate_structures(1, false).unwrap());
    v
}

#[test]
fn every_model_decodes_to_a_valid_coloring() {
    for s in small_structures() {
        for n in 2..=8 {
            let Ok(inst) = encode(&s, n) else { continue };
            let models = all_color_models(&inst);
            for model in &models {
                let c = decode_model(&inst.map, model, &s).unwrap();
                assert!(verify(&s, &c).unwrap().is_valid(), "{s} n={n}");
            }
            assert_eq!(models.len(), naive_count(&s, n), "{s} n={n}");
        }
    }
}

#[test]
fn sat_verdicts_match_backtracking() {
    for name in catalog::names() {
        let s = catalog::get(name).unwrap();
        for n in 2..=20 {
            let bt = search_group(&s, Arc::new(FiniteGroup::cyclic(n).unwrap()), &SearchConfig::default())
                .unwrap()
                .is_found();
            let sat = match encode(&s, n) {
                Ok(inst) => solver_for(&inst).solve().unwrap(),
                Err(_) => false,
            };
            assert_eq!(sat, bt, "{name} n={n}");
        }
    }
}

#[test]
fn symmetry_breaking_preserves_satisfiability() {
    for s in small_structures() {
        for n in 3..=16 {
            let (Ok(plain), Ok(broken)) = (encode(&s, n), encode_with(&s, n, true)) else { continue };
            assert_eq!(
                solver_for(&plain).solve().unwrap(),
                solver_for(&broken).solve().unwrap(),
                "{s} n={n}"
            );
        }
    }
}

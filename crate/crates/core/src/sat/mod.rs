//! CNF encoding of "structure `s` has a representation over `Z/n`".
//!
//! Color variables live on inverse orbits: `v(o, a)` is true iff the orbit
//! `o` carries atom `a`. Mandatory cycles use auxiliary pair variables
//! `d(y, i, z, j)` that imply `y ∈ i` and `z ∈ j`; they only occur
//! positively in the mandatory clauses, so one-sided definitions suffice.

mod dimacs;
mod solver;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::AtomStructure;
use crate::coloring::Coloring;
use crate::group::FiniteGroup;

pub use dimacs::{emit_dimacs, parse_dimacs, parse_map, parse_model, write_dimacs, write_map};
pub use solver::{solve_external, SolveOutcome};

#[derive(Debug, Error)]
pub enum SatError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(usize),
    #[error("{atoms} atoms but only {orbits} inverse orbits")]
    TooFewOrbits { atoms: usize, orbits: usize },
    #[error("{0} is not a relation algebra atom structure")]
    NotAnAlgebra(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed map: {0}")]
    MapParse(String),
    #[error("malformed dimacs: {0}")]
    DimacsParse(String),
    #[error("malformed model for orbit {orbit}: {detail}")]
    MalformedModel { orbit: usize, detail: String },
    #[error("solver error: {message}\n{excerpt}")]
    Solver { message: String, excerpt: String },
}

impl SatError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SatError::Io { path: path.into(), source }
    }
}

/// Auxiliary pair variable `d(y, i, z, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairVar {
    pub y: usize,
    pub i: usize,
    pub z: usize,
    pub j: usize,
}

/// Variable numbering. Color ids are `1..=orbits*atoms`, orbit-major; pair
/// ids follow in order of first use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    pub atoms: Vec<String>,
    /// Orbit representatives, increasing.
    pub orbits: Vec<usize>,
    pub pairs: Vec<PairVar>,
}

impl VarMap {
    pub fn num_color_vars(&self) -> usize {
        self.orbits.len() * self.atoms.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_color_vars() + self.pairs.len()
    }

    pub fn color_var(&self, orbit: usize, atom: usize) -> i32 {
        (1 + orbit * self.atoms.len() + atom) as i32
    }

    /// `(orbit index, atom index)` of a color variable.
    pub fn color_of(&self, var: u32) -> Option<(usize, usize)> {
        let v = var as usize;
        (v >= 1 && v <= self.num_color_vars())
            .then(|| ((v - 1) / self.atoms.len(), (v - 1) % self.atoms.len()))
    }

    pub fn pair_var(&self, id: u32) -> Option<&PairVar> {
        (id as usize)
            .checked_sub(self.num_color_vars() + 1)
            .and_then(|k| self.pairs.get(k))
    }
}

/// Clause tallies by origin; a clause identical to an earlier one is counted
/// only under the group that produced it first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClauseCounts {
    pub at_least_one: usize,
    pub at_most_one: usize,
    pub forbidden: usize,
    pub mandatory: usize,
    pub definitions: usize,
    pub nonempty: usize,
    pub symmetry: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub algebra: String,
    pub clauses: Vec<Vec<i32>>,
    pub map: VarMap,
    pub counts: ClauseCounts,
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.map.num_vars()
    }
}

#[derive(Clone, Copy)]
enum Group {
    AtLeastOne,
    AtMostOne,
    Forbidden,
    Mandatory,
    Definition,
    Nonempty,
    Symmetry,
}

struct Builder {
    clauses: Vec<Vec<i32>>,
    seen: HashSet<Vec<i32>>,
    counts: ClauseCounts,
}

impl Builder {
    fn add(&mut self, group: Group, mut lits: Vec<i32>) {
        lits.sort_by_key(|&l| (l.unsigned_abs(), l < 0));
        lits.dedup();
        debug_assert!(!lits.is_empty());
        if lits.windows(2).any(|w| w[0] == -w[1]) || !self.seen.insert(lits.clone()) {
            return;
        }
        let c = &mut self.counts;
        *match group {
            Group::AtLeastOne => &mut c.at_least_one,
            Group::AtMostOne => &mut c.at_most_one,
            Group::Forbidden => &mut c.forbidden,
            Group::Mandatory => &mut c.mandatory,
            Group::Definition => &mut c.definitions,
            Group::Nonempty => &mut c.nonempty,
            Group::Symmetry => &mut c.symmetry,
        } += 1;
        self.clauses.push(lits);
    }
}

/// Encodes without symmetry breaking.
pub fn encode(s: &AtomStructure, n: usize) -> Result<CnfInstance, SatError> {
    encode_with(s, n, false)
}

/// Encodes; with `symmetry_break`, adds clauses forcing the color of orbit
/// `{1, -1}` to be no larger than that of any unit's orbit. Those clauses
/// preserve satisfiability but make an unsat verdict depend on that argument.
pub fn encode_with(s: &AtomStructure, n: usize, symmetry_break: bool) -> Result<CnfInstance, SatError> {
    if n < 2 {
        return Err(SatError::BadModulus(n));
    }
    if !s.validate_ra().is_valid() {
        return Err(SatError::NotAnAlgebra(s.name().to_owned()));
    }
    let g = FiniteGroup::cyclic(n).expect("n >= 2");
    let orbits = g.inverse_orbits();
    let m = s.num_atoms();
    if orbits.len() < m {
        return Err(SatError::TooFewOrbits { atoms: m, orbits: orbits.len() });
    }
    let oi = g.orbit_index();
    let mut map = VarMap {
        n,
        atoms: s.atoms().iter().map(|a| a.name().to_owned()).collect(),
        orbits: orbits.iter().map(|o| o.rep).collect(),
        pairs: Vec::new(),
    };
    let mut b = Builder {
        clauses: Vec::new(),
        seen: HashSet::new(),
        counts: ClauseCounts::default(),
    };
    let v = |x: usize, a: usize| (1 + oi[x] * m + a) as i32;

    for o in 0..orbits.len() {
        let color = |a: usize| (1 + o * m + a) as i32;
        b.add(Group::AtLeastOne, (0..m).map(color).collect());
        for a in 0..m {
            for c in a + 1..m {
                b.add(Group::AtMostOne, vec![-color(a), -color(c)]);
            }
        }
    }

    for cycle in s.forbidden() {
        let orderings = cycle.orderings();
        for y in 1..n {
            for z in 1..n {
                let x = (y + z) % n;
                if x == 0 {
                    continue;
                }
                for &[i, j, k] in &orderings {
                    b.add(Group::Forbidden, vec![-v(y, i), -v(z, j), -v(x, k)]);
                }
            }
        }
    }

    let mut pair_ids: HashMap<PairVar, i32> = HashMap::new();
    let color_vars = map.num_color_vars() as i32;
    for cycle in s.allowed_cycles() {
        for (k, i, j) in cycle.targets() {
            for x in 1..n {
                let mut clause = vec![-v(x, k)];
                let mut fresh = Vec::new();
                for y in 1..n {
                    let z = (x + n - y) % n;
                    if z == 0 {
                        continue;
                    }
                    let p = PairVar { y, i, z, j };
                    let id = *pair_ids.entry(p).or_insert_with(|| {
                        map.pairs.push(p);
                        fresh.push(p);
                        color_vars + map.pairs.len() as i32
                    });
                    clause.push(id);
                }
                b.add(Group::Mandatory, clause);
                for p in fresh {
                    let id = pair_ids[&p];
                    b.add(Group::Definition, vec![-id, v(p.y, p.i)]);
                    b.add(Group::Definition, vec![-id, v(p.z, p.j)]);
                }
            }
        }
    }

    for a in 0..m {
        b.add(Group::Nonempty, (0..orbits.len()).map(|o| (1 + o * m + a) as i32).collect());
    }

    if symmetry_break {
        for u in 2..n {
            if gcd(u, n) != 1 || oi[u] == oi[1] {
                continue;
            }
            for a in 0..m {
                for c in 0..a {
                    b.add(Group::Symmetry, vec![-v(1, a), -v(u, c)]);
                }
            }
        }
    }

    Ok(CnfInstance {
        algebra: s.name().to_owned(),
        clauses: b.clauses,
        map,
        counts: b.counts,
    })
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Expands a model (the set of true variable ids) into a coloring. Each
/// orbit must have exactly one true color variable.
pub fn decode_model(map: &VarMap, model: &BTreeSet<u32>, s: &AtomStructure) -> Result<Coloring, SatError> {
    let g = Arc::new(FiniteGroup::cyclic(map.n).map_err(|_| SatError::BadModulus(map.n))?);
    let atom_idx: Vec<usize> = map
        .atoms
        .iter()
        .map(|a| {
            s.atom_index(a)
                .ok_or_else(|| SatError::MapParse(format!("atom {a:?} not in {}", s.name())))
        })
        .collect::<Result<_, _>>()?;
    let mut labels = vec![None; map.n];
    for (o, &rep) in map.orbits.iter().enumerate() {
        let on: Vec<usize> = (0..map.atoms.len())
            .filter(|&a| model.contains(&(map.color_var(o, a) as u32)))
            .collect();
        let atom = match on.as_slice() {
            [a] => atom_idx[*a],
            [] => {
                return Err(SatError::MalformedModel {
                    orbit: rep,
                    detail: "no color assigned".into(),
                })
            }
            _ => {
                let names: Vec<&str> = on.iter().map(|&a| map.atoms[a].as_str()).collect();
                return Err(SatError::MalformedModel {
                    orbit: rep,
                    detail: format!("several colors assigned: {}", names.join(",")),
                });
            }
        };
        labels[rep] = Some(atom);
        labels[g.inv(rep)] = Some(atom);
    }
    Ok(Coloring::from_labels(g, s, &labels))
}

/// Reads a map file and decodes `model` against it.
pub fn decode(
    map_path: &std::path::Path,
    model: &BTreeSet<u32>,
    s: &AtomStructure,
    n: usize,
) -> Result<Coloring, SatError> {
    let text = std::fs::read_to_string(map_path).map_err(|e| SatError::io(map_path, e))?;
    let map = parse_map(&text, n)?;
    decode_model(&map, model, s)
}

//! Clique-freeness of circulant colorings.
//!
//! A coloring of `Z/n` colors the edge `{u, v}` of the complete graph on `n`
//! vertices by the class of `v - u`. A class with bound `t` must contain no
//! monochromatic `K_t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coloring::Coloring;
use crate::error::ColoringError;

/// Clique bound per class; every bound is at least 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyBounds(BTreeMap<String, usize>);

impl RamseyBounds {
    pub fn new<I, S>(bounds: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (atom, t) in bounds {
            let atom = atom.into();
            if t < 3 {
                return Err(ColoringError::BadBound(format!("{atom}={t}")));
            }
            map.insert(atom, t);
        }
        Ok(RamseyBounds(map))
    }

    pub fn get(&self, atom: &str) -> Option<usize> {
        self.0.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl FromStr for RamseyBounds {
    type Err = ColoringError;

    /// Parses `a=4,b=3,c=3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pairs = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                let (atom, t) = p
                    .split_once('=')
                    .ok_or_else(|| ColoringError::BadBound(p.to_owned()))?;
                let t: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| ColoringError::BadBound(p.to_owned()))?;
                Ok((atom.trim().to_owned(), t))
            })
            .collect::<Result<Vec<_>, ColoringError>>()?;
        RamseyBounds::new(pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassResult {
    pub atom: String,
    pub bound: usize,
    /// Vertices of a monochromatic `K_bound`, if one exists.
    pub clique: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyReport {
    pub n: usize,
    pub classes: Vec<ClassResult>,
}

impl RamseyReport {
    pub fn is_clique_free(&self) -> bool {
        self.classes.iter().all(|c| c.clique.is_none())
    }
}

impl fmt::Display for RamseyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            match &c.clique {
                None => writeln!(f, "class {} bound {}: clique-free", c.atom, c.bound)?,
                Some(v) => {
                    let v: Vec<String> = v.iter().map(usize::to_string).collect();
                    writeln!(f, "class {} bound {}: K_{} on {{{}}}", c.atom, c.bound, c.bound, v.join(","))?
                }
            }
        }
        Ok(())
    }
}

/// Searches each bounded class for a monochromatic clique. Bounds must be
/// keyed by exactly the coloring's classes, and the group must be cyclic.
pub fn ramsey_check(c: &Coloring, bounds: &RamseyBounds) -> Result<RamseyReport, ColoringError> {
    let n = c.group().cyclic_modulus().ok_or(ColoringError::NotCyclic)?;
    let keys: BTreeSet<&str> = bounds.iter().map(|(a, _)| a).collect();
    let names: BTreeSet<&str> = c.classes().keys().map(String::as_str).collect();
    if keys != names {
        return Err(ColoringError::AtomMismatch {
            expected: names.into_iter().map(str::to_owned).collect(),
            found: keys.into_iter().map(str::to_owned).collect(),
        });
    }
    let mut classes = Vec::new();
    for (atom, set) in c.classes() {
        if set.iter().any(|&x| !set.contains(&((n - x) % n))) {
            return Err(ColoringError::NotInverseClosed(atom.clone()));
        }
        let bound = bounds.get(atom).unwrap();
        let mut adj = vec![false; n];
        for &x in set {
            adj[x % n] = true;
        }
        adj[0] = false;
        classes.push(ClassResult {
            atom: atom.clone(),
            bound,
            clique: find_clique(n, &adj, bound),
        });
    }
    Ok(RamseyReport { n, classes })
}

/// First clique of size `t` containing vertex 0 in the circulant graph with
/// connection set `adj`; the graph is vertex-transitive, so this is complete.
fn find_clique(n: usize, adj: &[bool], t: usize) -> Option<Vec<usize>> {
    fn extend(n: usize, adj: &[bool], t: usize, chosen: &mut Vec<usize>, cands: &[usize]) -> bool {
        if chosen.len() == t {
            return true;
        }
        for (i, &v) in cands.iter().enumerate() {
            if chosen.len() + (cands.len() - i) < t {
                return false;
            }
            chosen.push(v);
            let next: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[(w + n - v) % n])
                .collect();
            if extend(n, adj, t, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let cands: Vec<usize> = (1..n).filter(|&v| adj[v]).collect();
    let mut chosen = vec![0];
    extend(n, adj, t, &mut chosen, &cands).then_some(chosen)
}

//! Complete backtracking over inverse-orbit color assignments.

use std::time::Instant;

use crate::algebra::AtomStructure;
use crate::group::{FiniteGroup, InverseOrbit};

const NONE: u8 = u8::MAX;

pub(crate) enum Verdict {
    Found(Vec<Option<usize>>),
    Exhausted,
    Timeout,
}

pub(crate) struct Backtracker<'a> {
    g: &'a FiniteGroup,
    m: usize,
    orbits: Vec<InverseOrbit>,
    /// Atom index per element, `NONE` while unassigned (always for 0).
    label: Vec<u8>,
    /// `forbidden[(i * m + j) * m + k]`, symmetric in all three indices.
    forbidden: Vec<bool>,
    /// Flank pairs `(i, j)` required at each element of target atom `k`.
    requirements: Vec<Vec<(u8, u8)>>,
    used: Vec<usize>,
    /// Nontrivial multipliers for lex-leader pruning (cyclic groups only).
    multipliers: Vec<usize>,
    /// Position of each element's orbit in `orbits`.
    orbit_pos: Vec<usize>,
    deadline: Option<Instant>,
    pub nodes: u64,
}

impl<'a> Backtracker<'a> {
    pub fn new(s: &AtomStructure, g: &'a FiniteGroup, prune_multipliers: bool) -> Self {
        let m = s.num_atoms();
        let mut forbidden = vec![false; m * m * m];
        for c in s.forbidden() {
            for [i, j, k] in c.orderings() {
                forbidden[(i * m + j) * m + k] = true;
            }
        }
        let mut requirements = vec![Vec::new(); m];
        for c in s.allowed_cycles() {
            for (k, i, j) in c.targets() {
                requirements[k].push((i as u8, j as u8));
            }
        }
        let multipliers = match g.cyclic_modulus() {
            Some(n) if prune_multipliers => (2..n.saturating_sub(1))
                .filter(|&u| gcd(u, n) == 1)
                .collect(),
            _ => Vec::new(),
        };
        Backtracker {
            g,
            m,
            orbits: g.inverse_orbits(),
            label: vec![NONE; g.order()],
            forbidden,
            requirements,
            used: vec![0; m],
            multipliers,
            orbit_pos: g.orbit_index(),
            deadline: None,
            nodes: 0,
        }
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    pub fn run(&mut self) -> Verdict {
        if self.orbits.len() < self.m {
            return Verdict::Exhausted;
        }
        match self.dfs(0) {
            Some(true) => Verdict::Found(
                self.label
                    .iter()
                    .map(|&l| (l != NONE).then_some(l as usize))
                    .collect(),
            ),
            Some(false) => Verdict::Exhausted,
            None => Verdict::Timeout,
        }
    }

    /// `Some(true)` when a full assignment was found, `None` on timeout.
    fn dfs(&mut self, pos: usize) -> Option<bool> {
        if pos == self.orbits.len() {
            return Some(self.used.iter().all(|&u| u > 0) && self.mandatory_ok());
        }
        let missing = self.used.iter().filter(|&&u| u == 0).count();
        if missing > self.orbits.len() - pos {
            return Some(false);
        }
        let orbit = self.orbits[pos];
        for k in 0..self.m {
            self.nodes += 1;
            if self.nodes & 0xfff == 0 {
                if let Some(d) = self.deadline {
                    if Instant::now() >= d {
                        return None;
                    }
                }
            }
            self.set(orbit, k as u8);
            if self.forbidden_ok(orbit.rep, k) && self.lex_ok(pos) && self.mandatory_ok() {
                match self.dfs(pos + 1) {
                    Some(false) => {}
                    other => return other,
                }
            }
            self.set(orbit, NONE);
        }
        Some(false)
    }

    fn set(&mut self, orbit: InverseOrbit, k: u8) {
        let old = self.label[orbit.rep];
        if old != NONE {
            self.used[old as usize] -= 1;
        }
        if k != NONE {
            self.used[k as usize] += 1;
        }
        for x in orbit.members() {
            self.label[x] = k;
        }
    }

    /// Any forbidden triangle touching the orbit of `e` can be rotated so
    /// that `e` is the left factor, so `e * y = x` over assigned `y`, `x`
    /// covers every new triangle.
    fn forbidden_ok(&self, e: usize, k: usize) -> bool {
        let m = self.m;
        let base = k * m;
        for y in 1..self.g.order() {
            let ly = self.label[y];
            if ly == NONE {
                continue;
            }
            let lx = self.label[self.g.op(e, y)];
            if lx != NONE && self.forbidden[(base + ly as usize) * m + lx as usize] {
                return false;
            }
        }
        true
    }

    /// Every assigned element still has a possible witness for each of its
    /// requirements, counting unassigned elements as wildcards.
    fn mandatory_ok(&self) -> bool {
        let g = self.g;
        for x in 1..g.order() {
            let k = self.label[x];
            if k == NONE {
                continue;
            }
            'req: for &(i, j) in &self.requirements[k as usize] {
                for y in 1..g.order() {
                    let ly = self.label[y];
                    if ly != i && ly != NONE {
                        continue;
                    }
                    let z = g.op(g.inv(y), x);
                    if z == 0 {
                        continue;
                    }
                    let lz = self.label[z];
                    if lz == j || lz == NONE {
                        continue 'req;
                    }
                }
                return false;
            }
        }
        true
    }

    /// Lex-leader test against every multiplier image: the orbit label
    /// sequence must not be beaten by `x -> u * x` on the decided prefix.
    fn lex_ok(&self, pos: usize) -> bool {
        let n = self.g.order();
        'unit: for &u in &self.multipliers {
            for p in 0..=pos {
                let a = self.label[self.orbits[p].rep];
                let image = self.orbits[p].rep * u % n;
                if self.orbit_pos[image] > pos {
                    continue 'unit;
                }
                let b = self.label[image];
                if b < a {
                    return false;
                }
                if b > a {
                    continue 'unit;
                }
            }
        }
        true
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

//! Atom structures of finite symmetric integral relation algebras.
//!
//! A structure is described by its diversity atoms and the set of diversity
//! cycles it forbids. All atoms are self-converse, so a cycle is an unordered
//! multiset of three atoms. The identity atom is implicit: integrality fixes
//! every cycle that contains it.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest number of diversity atoms supported by the bitmask compositions.
pub const MAX_ATOMS: usize = 63;

/// A named diversity atom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom(s.to_owned())
    }
}

/// A diversity cycle: a multiset of three atom indices, kept sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle([usize; 3]);

impl Cycle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        let mut atoms = [a, b, c];
        atoms.sort_unstable();
        Cycle(atoms)
    }

    pub fn atoms(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.0.contains(&atom)
    }

    /// Distinct choices of target atom `k` together with the two flanking
    /// atoms `(i, j)`, in multiset order. Three entries when all atoms differ,
    /// two when exactly two coincide, one for `xxx`.
    pub fn targets(&self) -> Vec<(usize, usize, usize)> {
        let [a, b, c] = self.0;
        let mut out = vec![(a, b, c)];
        if b != a {
            out.push((b, a, c));
        }
        if c != b {
            out.push((c, a, b));
        }
        out
    }

    /// Distinct orderings `(i, j, k)` of the multiset.
    pub fn orderings(&self) -> Vec<[usize; 3]> {
        let [a, b, c] = self.0;
        let mut out: Vec<[usize; 3]> = [
            [a, b, c],
            [a, c, b],
            [b, a, c],
            [b, c, a],
            [c, a, b],
            [c, b, a],
        ]
        .into_iter()
        .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn relabel(&self, perm: &[usize]) -> Cycle {
        Cycle::new(perm[self.0[0]], perm[self.0[1]], perm[self.0[2]])
    }
}

/// All 3-multisets over `m` atoms, in lexicographic order.
pub fn all_cycles(m: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                out.push(Cycle([a, b, c]));
            }
        }
    }
    out
}

/// Element of a composition: the identity atom or a diversity atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Identity,
    Diversity(usize),
}

/// An atom structure given by its forbidden diversity cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomStructure {
    name: String,
    atoms: Vec<Atom>,
    forbidden: BTreeSet<Cycle>,
}

impl AtomStructure {
    /// Builds a structure from atom names and forbidden cycles given by name.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        atoms: &[S],
        forbidden: &[[S; 3]],
    ) -> Result<Self, AlgebraError> {
        let atoms: Vec<Atom> = atoms.iter().map(|a| Atom::new(a.as_ref())).collect();
        if atoms.is_empty() {
            return Err(AlgebraError::NoAtoms);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(AlgebraError::TooManyAtoms(atoms.len()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.name().is_empty() || a.name().chars().any(char::is_whitespace) {
                return Err(AlgebraError::BadAtomName(a.name().to_owned()));
            }
            if atoms[..i].contains(a) {
                return Err(AlgebraError::DuplicateAtom(a.name().to_owned()));
            }
        }
        let lookup = |n: &str| {
            atoms
                .iter()
                .position(|a| a.name() == n)
                .ok_or_else(|| AlgebraError::UnknownAtom(n.to_owned()))
        };
        let mut set = BTreeSet::new();
        for [x, y, z] in forbidden {
            set.insert(Cycle::new(
                lookup(x.as_ref())?,
                lookup(y.as_ref())?,
                lookup(z.as_ref())?,
            ));
        }
        Ok(AtomStructure {
            name: name.into(),
            atoms,
            forbidden: set,
        })
    }

    /// Builds a structure from atom indices. Atom names must be distinct.
    pub fn from_cycles(
        name: impl Into<String>,
        atoms: Vec<Atom>,
        forbidden: impl IntoIterator<Item = Cycle>,
    ) -> Result<Self, AlgebraError> {
        let m = atoms.len();
        let forbidden: BTreeSet<Cycle> = forbidden.into_iter().collect();
        if let Some(c) = forbidden.iter().find(|c| c.0[2] >= m) {
            return Err(AlgebraError::UnknownAtom(format!("#{}", c.0[2])));
        }
        let names: Vec<&str> = atoms.iter().map(Atom::name).collect();
        let mut s = AtomStructure::new(name, &names, &[])?;
        s.forbidden = forbidden;
        Ok(s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.name() == name)
    }

    pub fn forbidden(&self) -> &BTreeSet<Cycle> {
        &self.forbidden
    }

    pub fn is_forbidden(&self, c: &Cycle) -> bool {
        self.forbidden.contains(c)
    }

    /// Every 3-multiset over the diversity atoms that is not forbidden.
    pub fn allowed_cycles(&self) -> BTreeSet<Cycle> {
        all_cycles(self.num_atoms())
            .into_iter()
            .filter(|c| !self.forbidden.contains(c))
            .collect()
    }

    /// Atoms that occur in no forbidden cycle.
    pub fn flexible_atoms(&self) -> BTreeSet<Atom> {
        self.flexible_atom_indices()
            .into_iter()
            .map(|i| self.atoms[i].clone())
            .collect()
    }

    pub fn flexible_atom_indices(&self) -> Vec<usize> {
        (0..self.num_atoms())
            .filter(|&a| !self.forbidden.iter().any(|c| c.contains(a)))
            .collect()
    }

    /// Label of a cycle, e.g. `bbc`, or `{x1,x2,x3}` for longer atom names.
    pub fn cycle_label(&self, c: &Cycle) -> String {
        let names: Vec<&str> = c.0.iter().map(|&i| self.atoms[i].name()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            format!("{{{}}}", names.join(","))
        }
    }

    /// Forbidden cycles as triples of atom names.
    pub fn forbidden_names(&self) -> Vec<[String; 3]> {
        self.forbidden
            .iter()
            .map(|c| c.0.map(|i| self.atoms[i].name().to_owned()))
            .collect()
    }

    /// Bitmask table of `x;y` for diversity atoms: bit 0 is the identity,
    /// bit `k + 1` is atom `k`.
    fn composition_table(&self) -> Vec<u64> {
        let m = self.num_atoms();
        let mut table = vec![0u64; m * m];
        for c in all_cycles(m) {
            if self.forbidden.contains(&c) {
                continue;
            }
            for [i, j, k] in c.orderings() {
                table[i * m + j] |= 1 << (k + 1);
            }
        }
        for x in 0..m {
            table[x * m + x] |= 1;
        }
        table
    }

    /// Composition `x;y` of two diversity atoms.
    pub fn compose(&self, x: usize, y: usize) -> Vec<Relation> {
        let bits = self.composition_table()[x * self.num_atoms() + y];
        decode_relations(bits)
    }

    /// Checks that the complex algebra over the atoms is an integral RA:
    /// every composition of diversity atoms is nonempty and composition is
    /// associative on atoms.
    pub fn validate_ra(&self) -> ValidityReport {
        let m = self.num_atoms();
        let table = self.composition_table();
        let mut report = ValidityReport::default();
        for x in 0..m {
            for y in 0..m {
                if table[x * m + y] == 0 {
                    report.issues.push(RaIssue::EmptyComposition {
                        x: self.atoms[x].clone(),
                        y: self.atoms[y].clone(),
                    });
                }
            }
        }
        // composition of a diversity-or-identity bitmask with an atom, on the
        // right and on the left
        let right = |set: u64, z: usize| -> u64 {
            let mut out = 0;
            if set & 1 != 0 {
                out |= 1 << (z + 1);
            }
            for w in iter_bits(set >> 1) {
                out |= table[w * m + z];
            }
            out
        };
        let left = |x: usize, set: u64| -> u64 {
            let mut out = 0;
            if set & 1 != 0 {
                out |= 1 << (x + 1);
            }
            for w in iter_bits(set >> 1) {
                out |= table[x * m + w];
            }
            out
        };
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let lhs = right(table[x * m + y], z);
                    let rhs = left(x, table[y * m + z]);
                    if lhs != rhs {
                        report.issues.push(RaIssue::NotAssociative {
                            x: self.atoms[x].clone(),
                            y: self.atoms[y].clone(),
                            z: self.atoms[z].clone(),
                        });
                    }
                }
            }
        }
        report
    }

    /// Applies a relabeling: atom `i` becomes atom `perm[i]`. Atom names stay
    /// in place, so this changes which named atom carries which cycles.
    pub fn relabel(&self, perm: &[usize]) -> AtomStructure {
        AtomStructure {
            name: self.name.clone(),
            atoms: self.atoms.clone(),
            forbidden: self.forbidden.iter().map(|c| c.relabel(perm)).collect(),
        }
    }

    /// Isomorphism-invariant form: atoms sorted by name, forbidden set the
    /// lexicographically least sorted cycle list over all relabelings.
    pub fn canonicalize(&self) -> AtomStructure {
        let m = self.num_atoms();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| self.atoms[a].cmp(&self.atoms[b]));
        let atoms: Vec<Atom> = order.iter().map(|&i| self.atoms[i].clone()).collect();
        let best = (0..m)
            .permutations(m)
            .map(|perm| {
                let mut cycles: Vec<Cycle> =
                    self.forbidden.iter().map(|c| c.relabel(&perm)).collect();
                cycles.sort_unstable();
                cycles
            })
            .min()
            .unwrap_or_default();
        AtomStructure {
            name: self.name.clone(),
            atoms,
            forbidden: best.into_iter().collect(),
        }
    }

    /// Whether two structures are isomorphic as atom structures.
    pub fn is_isomorphic(&self, other: &AtomStructure) -> bool {
        self.num_atoms() == other.num_atoms()
            && self.canonicalize().forbidden == other.canonicalize().forbidden
    }
}

impl fmt::Display for AtomStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<&str> = self.atoms.iter().map(Atom::name).collect();
        let forbidden: Vec<String> = self.forbidden.iter().map(|c| self.cycle_label(c)).collect();
        write!(
            f,
            "{} atoms=[{}] forbidden=[{}]",
            self.name,
            atoms.join(","),
            forbidden.join(",")
        )
    }
}

/// A failed relation-algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RaIssue {
    EmptyComposition { x: Atom, y: Atom },
    NotAssociative { x: Atom, y: Atom, z: Atom },
}

impl fmt::Display for RaIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RaIssue::EmptyComposition { x, y } => write!(f, "empty composition {x};{y}"),
            RaIssue::NotAssociative { x, y, z } => {
                write!(f, "({x};{y});{z} differs from {x};({y};{z})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub issues: Vec<RaIssue>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

fn iter_bits(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

fn decode_relations(bits: u64) -> Vec<Relation> {
    let mut out = Vec::new();
    if bits & 1 != 0 {
        out.push(Relation::Identity);
    }
    out.extend(iter_bits(bits >> 1).map(Relation::Diversity));
    out
}

/// Default names for enumerated atoms: `a`, `b`, ... `z`, then `x26`, ...
pub fn default_atom_names(m: usize) -> Vec<Atom> {
    (0..m)
        .map(|i| {
            if i < 26 {
                Atom::new(((b'a' + i as u8) as char).to_string())
            } else {
                Atom::new(format!("x{i}"))
            }
        })
        .collect()
}

/// All symmetric integral RA atom structures with `m` diversity atoms, one per
/// isomorphism class, in lexicographic order of canonical forbidden sets.
///
/// Cost grows as `2^C(m+2,3)`; `m = 4` takes a couple of seconds.
pub fn enumerate_structures(
    m: usize,
    flexible_only: bool,
) -> Result<Vec<AtomStructure>, AlgebraError> {
    if m == 0 {
        return Err(AlgebraError::NoAtoms);
    }
    let cycles = all_cycles(m);
    if cycles.len() >= 32 {
        return Err(AlgebraError::TooManyAtoms(m));
    }
    let atoms = default_atom_names(m);
    let mut seen: BTreeSet<Vec<Cycle>> = BTreeSet::new();
    for mask in 0u32..(1u32 << cycles.len()) {
        let forbidden: Vec<Cycle> = cycles
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| *c)
            .collect();
        let s = AtomStructure::from_cycles("", atoms.clone(), forbidden)?;
        if !s.validate_ra().is_valid() {
            continue;
        }
        let canon = s.canonicalize();
        seen.insert(canon.forbidden.into_iter().collect());
    }
    let mut out = Vec::new();
    for (k, forbidden) in seen.into_iter().enumerate() {
        let s = AtomStructure::from_cycles(format!("enum{m}_{:02}", k + 1), atoms.clone(), forbidden)?;
        if flexible_only && s.flexible_atom_indices().is_empty() {
            continue;
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn single(forbidden: &[[&str; 3]]) -> AtomStructure {
        AtomStructure::new("t", &["a"], forbidden).unwrap()
    }

    #[test]
    fn cycles_are_multisets() {
        assert_eq!(Cycle::new(2, 1, 1), Cycle::new(1, 1, 2));
        assert_ne!(Cycle::new(1, 2, 2), Cycle::new(1, 1, 2));
        assert_eq!(all_cycles(3).len(), 10);
        assert_eq!(Cycle::new(0, 1, 2).targets().len(), 3);
        assert_eq!(Cycle::new(0, 1, 1).targets(), vec![(0, 1, 1), (1, 0, 1)]);
        assert_eq!(Cycle::new(1, 1, 1).targets().len(), 1);
        assert_eq!(Cycle::new(0, 1, 1).orderings().len(), 3);
    }

    #[test]
    fn allowed_cycle_counts() {
        assert_eq!(catalog::get("63_65").unwrap().allowed_cycles().len(), 8);
        assert_eq!(catalog::get("33_65").unwrap().allowed_cycles().len(), 7);
        let s = single(&[]);
        assert_eq!(s.allowed_cycles().into_iter().collect::<Vec<_>>(), vec![Cycle::new(0, 0, 0)]);
    }

    #[test]
    fn flexible_atoms_of_catalog() {
        let a: BTreeSet<Atom> = [Atom::from("a")].into();
        assert_eq!(catalog::get("63_65").unwrap().flexible_atoms(), a);
        assert_eq!(catalog::get("33_65").unwrap().flexible_atoms(), a);
        assert_eq!(catalog::get("57_65").unwrap().flexible_atoms(), a);
        let none = AtomStructure::new("t", &["a", "b"], &[["a", "a", "a"], ["b", "b", "b"]]).unwrap();
        assert!(none.flexible_atoms().is_empty());
    }

    #[test]
    fn validity_examples() {
        assert!(catalog::get("63_65").unwrap().validate_ra().is_valid());
        let bad = AtomStructure::new("t", &["a", "b"], &[["a", "a", "b"], ["a", "b", "b"]]).unwrap();
        let report = bad.validate_ra();
        assert!(!report.is_valid());
        assert!(report.issues.contains(&RaIssue::EmptyComposition {
            x: "a".into(),
            y: "b".into()
        }));
        let s = single(&[["a", "a", "a"]]);
        assert!(s.validate_ra().is_valid());
        assert_eq!(s.compose(0, 0), vec![Relation::Identity]);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            AtomStructure::new("t", &["a", "a"], &[]),
            Err(AlgebraError::DuplicateAtom(_))
        ));
        assert!(matches!(
            AtomStructure::new("t", &["a"], &[["a", "a", "q"]]),
            Err(AlgebraError::UnknownAtom(_))
        ));
        assert!(matches!(enumerate_structures(0, false), Err(AlgebraError::NoAtoms)));
    }

    #[test]
    fn canonical_form_of_swapped_structures() {
        let x = AtomStructure::new("x", &["a", "b"], &[["a", "a", "a"]]).unwrap();
        let y = AtomStructure::new("y", &["a", "b"], &[["b", "b", "b"]]).unwrap();
        assert_eq!(x.canonicalize().forbidden(), y.canonicalize().forbidden());
    }

    #[test]
    fn canonical_form_of_63_65() {
        // brute force over the six relabelings
        let s = catalog::get("63_65").unwrap();
        let min = (0..3)
            .permutations(3)
            .map(|p| {
                let mut v: Vec<[usize; 3]> = s.relabel(&p).forbidden().iter().map(|c| c.atoms()).collect();
                v.sort();
                v
            })
            .min()
            .unwrap();
        assert_eq!(min, vec![[0, 0, 0], [1, 1, 1]]);
        let canon: Vec<[usize; 3]> = s.canonicalize().forbidden().iter().map(|c| c.atoms()).collect();
        assert_eq!(canon, min);
    }

    #[test]
    fn canonicalize_idempotent_over_all_three_atom_sets() {
        let cycles = all_cycles(3);
        for mask in 0u32..1024 {
            let f = cycles.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| *c);
            let s = AtomStructure::from_cycles("t", default_atom_names(3), f).unwrap();
            let c = s.canonicalize();
            assert_eq!(c.canonicalize(), c);
            for p in (0..3).permutations(3) {
                assert_eq!(s.relabel(&p).canonicalize(), c);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_structures(1, false).unwrap().len(), 2);
        assert_eq!(enumerate_structures(2, false).unwrap().len(), 7);
        let three = enumerate_structures(3, false).unwrap();
        assert_eq!(three.len(), 65);
        assert_eq!(enumerate_structures(3, true).unwrap().len(), 10);
        let canon: BTreeSet<_> = three.iter().map(|s| s.canonicalize().forbidden().clone()).collect();
        assert_eq!(canon.len(), 65);
        for name in ["63_65", "57_65", "33_65"] {
            let c = catalog::get(name).unwrap().canonicalize();
            assert!(three.iter().any(|s| s.forbidden() == c.forbidden()), "{name}");
        }
    }
}

//! Finite groups as dense Cayley tables with the identity at index 0.

use std::fmt;
use std::fs;
use std::path::Path;

use itertools::Itertools;

use crate::error::{GroupError, IoError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Symmetric(usize),
    Table,
}

/// A finite group over the indices `0..order`, identity at 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    kind: GroupKind,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

/// The pair `{x, x⁻¹}`; `rep == inv` for involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InverseOrbit {
    pub rep: usize,
    pub inv: usize,
}

impl InverseOrbit {
    pub fn is_singleton(&self) -> bool {
        self.rep == self.inv
    }

    pub fn members(&self) -> impl Iterator<Item = usize> {
        let second = (!self.is_singleton()).then_some(self.inv);
        std::iter::once(self.rep).chain(second)
    }
}

impl FiniteGroup {
    /// `Z/n` under addition.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + b) % n) as u32);
            }
        }
        let inv = (0..n).map(|a| ((n - a) % n) as u32).collect();
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            kind: GroupKind::Cyclic(n),
            label: format!("z{n}"),
        })
    }

    /// `S_k` for `1 <= k <= 5`. Elements are ordered lexicographically by
    /// one-line notation, so the identity comes first; `op(p, q) = p ∘ q`.
    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if !(1..=5).contains(&k) {
            return Err(GroupError::Degree(k));
        }
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for p in &perms {
            for q in &perms {
                let pq: Vec<usize> = (0..k).map(|i| p[q[i]]).collect();
                table.push(index(&pq) as u32);
            }
        }
        let inv = perms
            .iter()
            .map(|p| {
                let mut q = vec![0; k];
                for (i, &pi) in p.iter().enumerate() {
                    q[pi] = i;
                }
                index(&q) as u32
            })
            .collect();
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            kind: GroupKind::Symmetric(k),
            label: format!("s{k}"),
        })
    }

    /// Validates a Cayley table and re-indexes it so the identity is 0.
    /// Reports the first failed axiom: closure, identity, inverses, then
    /// associativity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    order: n,
                });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        let op = |a: usize, b: usize| rows[a][b];
        let e = (0..n)
            .find(|&e| (0..n).all(|x| op(e, x) == x && op(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| op(a, b) == e && op(b, a) == e)
                    .ok_or(GroupError::NoInverse(a))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = op(a, b);
                for c in 0..n {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        // swap labels e and 0
        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[swap(a) * n + swap(b)] = swap(op(a, b)) as u32;
            }
        }
        let mut new_inv = vec![0u32; n];
        for a in 0..n {
            new_inv[swap(a)] = swap(inv[a]) as u32;
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inv: new_inv,
            kind: GroupKind::Table,
            label: "cayley".to_owned(),
        })
    }

    /// Parses the Cayley-table file format: the order on the first line,
    /// then `order` rows of space-separated indices.
    pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>, String> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let order: usize = lines
            .next()
            .ok_or("empty file")?
            .parse()
            .map_err(|e| format!("bad order: {e}"))?;
        let rows: Vec<Vec<usize>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| format!("bad entry {t:?}: {e}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        if rows.len() != order {
            return Err(format!("expected {order} rows, found {}", rows.len()));
        }
        Ok(rows)
    }

    pub fn load_table(path: &Path) -> Result<Self, IoError> {
        let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
        let rows = Self::parse_table(&text).map_err(|msg| GroupError::Parse {
            path: path.to_owned(),
            msg,
        })?;
        let mut g = Self::from_table(&rows)?;
        g.label = format!("cayley:{}", path.display());
        Ok(g)
    }

    /// Resolves a group spec string: `zN`, `sK` or `cayley:<path>`.
    pub fn from_spec(spec: &str) -> Result<Self, IoError> {
        let bad = || GroupError::BadSpec(spec.to_owned());
        if let Some(path) = spec.strip_prefix("cayley:") {
            return Self::load_table(Path::new(path));
        }
        let (head, tail) = spec.split_at(spec.chars().next().map_or(0, char::len_utf8));
        let n: usize = tail.parse().map_err(|_| bad())?;
        Ok(match head {
            "z" | "Z" => Self::cyclic(n)?,
            "s" | "S" => Self::symmetric(n)?,
            _ => return Err(bad().into()),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Spec string this group was built from.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cyclic_modulus(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn non_identity(&self) -> std::ops::Range<usize> {
        1..self.order
    }

    /// Addition table rows, as accepted by [`FiniteGroup::from_table`].
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// Partition of the non-identity elements into `{x, x⁻¹}`, ordered by
    /// smallest member.
    pub fn inverse_orbits(&self) -> Vec<InverseOrbit> {
        self.non_identity()
            .filter(|&x| self.inv(x) >= x)
            .map(|x| InverseOrbit { rep: x, inv: self.inv(x) })
            .collect()
    }

    /// Index of each element's orbit in [`FiniteGroup::inverse_orbits`];
    /// `usize::MAX` for the identity.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.order];
        for (k, o) in self.inverse_orbits().iter().enumerate() {
            for m in o.members() {
                idx[m] = k;
            }
        }
        idx
    }

    /// Exhaustive check of the group axioms against the stored tables.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.op(0, a) != a || self.op(a, 0) != a {
                return Err(GroupError::NoIdentity);
            }
            if self.op(a, self.inv(a)) != 0 || self.op(self.inv(a), a) != 0 {
                return Err(GroupError::NoInverse(a));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

//! Known cyclic spectra of the seven three-atom symmetric integral
//! algebras, and matching of computed spectra against them.
//!
//! The pairing between enumerated structures and the labels `1_7..7_7` is
//! computed by comparing spectra, never assumed.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{spectrum, SearchConfig, SearchError, SpectrumReport};
use crate::algebra::AtomStructure;

pub struct TableRow {
    pub label: &'static str,
    pub cyclic_spec: &'static str,
    contains: fn(usize) -> bool,
}

impl TableRow {
    pub fn contains(&self, n: usize) -> bool {
        (self.contains)(n)
    }

    pub fn truncated(&self, n_min: usize, n_max: usize) -> BTreeSet<usize> {
        (n_min..=n_max).filter(|&n| self.contains(n)).collect()
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub const CYCLIC_SPECTRA: [TableRow; 7] = [
    TableRow { label: "1_7", cyclic_spec: "{4}", contains: |n| n == 4 },
    TableRow { label: "2_7", cyclic_spec: "{2k : k >= 3}", contains: |n| n >= 6 && n % 2 == 0 },
    TableRow { label: "3_7", cyclic_spec: "{2k : k >= 3}", contains: |n| n >= 6 && n % 2 == 0 },
    TableRow {
        label: "4_7",
        cyclic_spec: "{n >= 9} minus {p, 2p : p prime}",
        contains: |n| n >= 9 && !is_prime(n) && !(n % 2 == 0 && is_prime(n / 2)),
    },
    TableRow { label: "5_7", cyclic_spec: "{5}", contains: |n| n == 5 },
    TableRow { label: "6_7", cyclic_spec: "{8} u {n >= 11}", contains: |n| n == 8 || n >= 11 },
    TableRow { label: "7_7", cyclic_spec: "{n >= 12}", contains: |n| n >= 12 },
];

pub struct TableMatch {
    pub n_min: usize,
    pub n_max: usize,
    pub spectra: Vec<(AtomStructure, SpectrumReport)>,
    /// For each structure, the table label it is paired with, when the
    /// computed spectra and the truncated rows agree as multisets.
    pub pairing: Option<Vec<&'static str>>,
}

impl TableMatch {
    pub fn minima(&self) -> Vec<Option<usize>> {
        let mut v: Vec<Option<usize>> = self
            .spectra
            .iter()
            .map(|(_, r)| r.found().first().copied())
            .collect();
        v.sort();
        v
    }

    pub fn partial(&self) -> bool {
        self.spectra.iter().any(|(_, r)| r.partial())
    }

    /// Structure paired with the given table label.
    pub fn structure_for(&self, label: &str) -> Option<&(AtomStructure, SpectrumReport)> {
        let pairing = self.pairing.as_ref()?;
        pairing
            .iter()
            .position(|&l| l == label)
            .map(|i| &self.spectra[i])
    }
}

/// Finds a bijection `structure -> row` with equal truncated spectra.
pub fn pair_with_table(
    spectra: &[BTreeSet<usize>],
    n_min: usize,
    n_max: usize,
) -> Option<Vec<&'static str>> {
    if spectra.len() != CYCLIC_SPECTRA.len() {
        return None;
    }
    let rows: Vec<BTreeSet<usize>> = CYCLIC_SPECTRA
        .iter()
        .map(|r| r.truncated(n_min, n_max))
        .collect();
    (0..rows.len())
        .permutations(rows.len())
        .find(|p| p.iter().enumerate().all(|(i, &r)| spectra[i] == rows[r]))
        .map(|p| p.into_iter().map(|r| CYCLIC_SPECTRA[r].label).collect())
}

/// Computes the spectra of the given structures over `2..=n_max` and pairs
/// them with the reference rows truncated identically.
pub fn match_table(
    structures: &[AtomStructure],
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<TableMatch, SearchError> {
    let n_min = 2;
    let spectra = structures
        .iter()
        .map(|s| Ok((s.clone(), spectrum(s, n_min, n_max, cfg)?)))
        .collect::<Result<Vec<_>, SearchError>>()?;
    let sets: Vec<BTreeSet<usize>> = spectra.iter().map(|(_, r)| r.found()).collect();
    let pairing = pair_with_table(&sets, n_min, n_max);
    Ok(TableMatch {
        n_min,
        n_max,
        spectra,
        pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_rows() {
        let row = |l: &str| CYCLIC_SPECTRA.iter().find(|r| r.label == l).unwrap();
        assert_eq!(row("4_7").truncated(2, 14), [9, 12].into());
        assert_eq!(row("6_7").truncated(2, 14), [8, 11, 12, 13, 14].into());
        assert_eq!(row("7_7").truncated(2, 14), [12, 13, 14].into());
        assert_eq!(row("2_7").truncated(2, 14), [6, 8, 10, 12, 14].into());
        let minima: Vec<usize> = CYCLIC_SPECTRA
            .iter()
            .map(|r| *r.truncated(2, 14).first().unwrap())
            .sorted()
            .collect();
        assert_eq!(minima, vec![4, 5, 6, 6, 8, 9, 12]);
    }

    #[test]
    fn pairing_requires_a_bijection() {
        let rows: Vec<BTreeSet<usize>> = CYCLIC_SPECTRA.iter().rev().map(|r| r.truncated(2, 14)).collect();
        let p = pair_with_table(&rows, 2, 14).unwrap();
        assert_eq!(p[0], "7_7");
        let mut wrong = rows.clone();
        wrong[0] = [13].into();
        assert!(pair_with_table(&wrong, 2, 14).is_none());
    }
}

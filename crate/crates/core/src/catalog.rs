//! Built-in algebras. Each has diversity atoms `a`, `b`, `c`.

use crate::algebra::AtomStructure;
use crate::error::AlgebraError;

pub struct CatalogEntry {
    pub structure: AtomStructure,
    pub note: &'static str,
}

const ENTRIES: &[(&str, &[[&str; 3]], &str)] = &[
    (
        "33_65",
        &[["c", "c", "c"], ["b", "c", "c"], ["c", "b", "b"]],
        "forbidden ccc, bcc, cbb; no cyclic representation for n <= 100 nor over S_n for n <= 5",
    ),
    (
        "57_65",
        &[["c", "c", "c"], ["c", "b", "b"]],
        "forbidden ccc, cbb; represented over Z/46",
    ),
    (
        "63_65",
        &[["b", "b", "b"], ["c", "c", "c"]],
        "forbidden bbb, ccc; represented over Z/29",
    ),
];

pub fn entries() -> Vec<CatalogEntry> {
    ENTRIES
        .iter()
        .map(|(name, forbidden, note)| CatalogEntry {
            structure: AtomStructure::new(*name, &["a", "b", "c"], forbidden)
                .expect("catalog entries are well-formed"),
            note,
        })
        .collect()
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

pub fn get(name: &str) -> Result<AtomStructure, AlgebraError> {
    entries()
        .into_iter()
        .find(|e| e.structure.name() == name)
        .map(|e| e.structure)
        .ok_or_else(|| AlgebraError::UnknownAlgebra(name.to_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_contents() {
        assert_eq!(names(), vec!["33_65", "57_65", "63_65"]);
        for e in entries() {
            assert!(e.structure.validate_ra().is_valid(), "{}", e.structure.name());
        }
        let s = get("33_65").unwrap();
        let labels: Vec<String> = s.forbidden().iter().map(|c| s.cycle_label(c)).collect();
        assert_eq!(labels, vec!["bbc", "bcc", "ccc"]);
        assert!(get("59_65").is_err());
    }
}

//! File formats: algebra files, coloring files and the sweep results log.
//! All are JSON; the results log holds one record per line.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AtomStructure;
use crate::catalog;
use crate::coloring::Coloring;
use crate::error::{AlgebraError, IoError};
use crate::group::FiniteGroup;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub diversity_atoms: Vec<String>,
    pub forbidden: Vec<[String; 3]>,
}

impl From<&AtomStructure> for AlgebraFile {
    fn from(s: &AtomStructure) -> Self {
        AlgebraFile {
            name: s.name().to_owned(),
            diversity_atoms: s.atoms().iter().map(|a| a.name().to_owned()).collect(),
            forbidden: s.forbidden_names(),
        }
    }
}

impl AlgebraFile {
    pub fn into_structure(self) -> Result<AtomStructure, AlgebraError> {
        AtomStructure::new(self.name, &self.diversity_atoms, &self.forbidden)
    }
}

pub fn algebra_to_json(s: &AtomStructure) -> String {
    let f = AlgebraFile::from(s);
    let atoms = serde_json::to_string(&f.diversity_atoms).unwrap();
    let cycles: Vec<String> = f
        .forbidden
        .iter()
        .map(|c| serde_json::to_string(c).unwrap())
        .collect();
    format!(
        "{{\n  \"name\": {},\n  \"diversity_atoms\": {},\n  \"forbidden\": [{}]\n}}\n",
        serde_json::to_string(&f.name).unwrap(),
        atoms,
        cycles.join(", ")
    )
}

pub fn load_algebra(path: &Path) -> Result<AtomStructure, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    let file: AlgebraFile = serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: path.to_owned(),
        source,
    })?;
    file.into_structure().map_err(|source| IoError::Algebra {
        path: path.to_owned(),
        source,
    })
}

/// A catalog name, or else a path to an algebra file.
pub fn resolve_algebra(name_or_path: &str) -> Result<AtomStructure, IoError> {
    match catalog::get(name_or_path) {
        Ok(s) => Ok(s),
        Err(e) => {
            let path = Path::new(name_or_path);
            if path.exists() {
                load_algebra(path)
            } else {
                Err(IoError::Algebra {
                    path: path.to_owned(),
                    source: e,
                })
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringFile {
    pub group: String,
    pub classes: BTreeMap<String, Vec<usize>>,
}

/// Falls back to `<path>.json` when `path` itself does not exist.
pub fn with_json_fallback(path: &Path) -> PathBuf {
    if !path.exists() && path.extension().is_none() {
        let alt = path.with_extension("json");
        if alt.exists() {
            return alt;
        }
    }
    path.to_owned()
}

pub fn load_coloring(path: &Path) -> Result<Coloring, IoError> {
    let path = with_json_fallback(path);
    let text = fs::read_to_string(&path).map_err(|e| IoError::io(&path, e))?;
    let file: ColoringFile = serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: path.clone(),
        source,
    })?;
    let group = Arc::new(FiniteGroup::from_spec(&file.group)?);
    Coloring::new(group, file.classes).map_err(|source| IoError::Coloring { path, source })
}

pub fn coloring_to_json(c: &Coloring) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!(
        "  \"group\": {},\n  \"classes\": {{\n",
        serde_json::to_string(c.group().label()).unwrap()
    ));
    let lines: Vec<String> = c
        .classes()
        .iter()
        .map(|(atom, set)| {
            let elems: Vec<String> = set.iter().map(usize::to_string).collect();
            format!(
                "    {}: [{}]",
                serde_json::to_string(atom).unwrap(),
                elems.join(", ")
            )
        })
        .collect();
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  }\n}\n");
    out
}

pub fn save_coloring(c: &Coloring, path: &Path) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| IoError::io(dir, e))?;
    }
    fs::write(path, coloring_to_json(c)).map_err(|e| IoError::io(path, e))
}

/// One line of the sweep results log.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algebra: String,
    pub group: String,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    pub wall_time_s: f64,
}

pub fn append_record(log: &Path, record: &ResultRecord) -> Result<(), IoError> {
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(log)
        .map_err(|e| IoError::io(log, e))?;
    let line = serde_json::to_string(record).expect("record serializes");
    writeln!(f, "{line}").map_err(|e| IoError::io(log, e))
}

pub fn read_records(log: &Path) -> Result<Vec<ResultRecord>, IoError> {
    let text = fs::read_to_string(log).map_err(|e| IoError::io(log, e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            serde_json::from_str(l).map_err(|source| IoError::Json {
                path: log.to_owned(),
                source,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for name in catalog::names() {
            let s = catalog::get(name).unwrap();
            let p = dir.path().join(format!("{name}.json"));
            fs::write(&p, algebra_to_json(&s)).unwrap();
            assert_eq!(load_algebra(&p).unwrap(), s);
            assert_eq!(resolve_algebra(p.to_str().unwrap()).unwrap(), s);
        }
        assert!(resolve_algebra("nope_65").is_err());
    }

    #[test]
    fn algebra_file_errors() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        fs::write(&p, r#"{"name":"x","diversity_atoms":["a"],"forbidden":[["a","a","b"]]}"#).unwrap();
        assert!(matches!(load_algebra(&p), Err(IoError::Algebra { .. })));
        fs::write(&p, "{").unwrap();
        assert!(matches!(load_algebra(&p), Err(IoError::Json { .. })));
    }

    #[test]
    fn coloring_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        let c = fixtures::coloring_57_65_z46();
        save_coloring(&c, &p).unwrap();
        assert_eq!(load_coloring(&p).unwrap(), c);
        assert_eq!(load_coloring(&dir.path().join("c")).unwrap(), c);
    }

    #[test]
    fn coloring_rejects_out_of_range() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        fs::write(&p, r#"{"group":"z5","classes":{"a":[1,4,9]}}"#).unwrap();
        assert!(matches!(load_coloring(&p), Err(IoError::Coloring { .. })));
        fs::write(&p, r#"{"group":"q5","classes":{"a":[1,4]}}"#).unwrap();
        assert!(matches!(load_coloring(&p), Err(IoError::Group(_))));
    }

    #[test]
    fn log_appends() {
        let dir = tempfile::tempdir().unwrap();
        let log = dir.path().join("results.jsonl");
        let r = ResultRecord {
            algebra: "33_65".into(),
            group: "z7".into(),
            verdict: "none".into(),
            certificate: None,
            nodes: Some(12),
            wall_time_s: 0.5,
        };
        append_record(&log, &r).unwrap();
        append_record(&log, &r).unwrap();
        assert_eq!(read_records(&log).unwrap(), vec![r.clone(), r]);
    }
}

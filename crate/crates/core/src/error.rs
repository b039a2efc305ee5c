use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure has no diversity atoms")]
    NoAtoms,
    #[error("too many diversity atoms ({0})")]
    TooManyAtoms(usize),
    #[error("bad atom name {0:?}")]
    BadAtomName(String),
    #[error("duplicate atom {0:?}")]
    DuplicateAtom(String),
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("symmetric group degree {0} outside 1..=5")]
    Degree(usize),
    #[error("table row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("no inverse for {0}")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("bad group spec {0:?} (expected zN, sK or cayley:<path>)")]
    BadSpec(String),
    #[error("cayley table {path}: {msg}")]
    Parse { path: PathBuf, msg: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("element {element} of class {atom:?} is outside the group (order {order})")]
    OutOfRange { atom: String, element: usize, order: usize },
    #[error("class keys {found:?} do not match diversity atoms {expected:?}")]
    AtomMismatch { expected: Vec<String>, found: Vec<String> },
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("class {0:?} is not closed under inverses")]
    NotInverseClosed(String),
    #[error("bad ramsey bound {0:?}")]
    BadBound(String),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Algebra {
        path: PathBuf,
        #[source]
        source: AlgebraError,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{path}: {source}")]
    Coloring {
        path: PathBuf,
        #[source]
        source: ColoringError,
    },
}

impl IoError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        IoError::Io {
            path: path.into(),
            source,
        }
    }
}

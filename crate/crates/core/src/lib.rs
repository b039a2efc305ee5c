//! Representations of finite symmetric integral relation algebras over
//! finite groups: atom structures given by forbidden diversity cycles, an
//! exhaustive verifier for colorings, complete search over cyclic and small
//! permutation groups, and a CNF encoding for external SAT solvers.

pub mod algebra;
pub mod catalog;
pub mod coloring;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod io;
pub mod ramsey;
pub mod sat;
pub mod search;
pub mod verify;

pub use algebra::{enumerate_structures, Atom, AtomStructure, Cycle, RaIssue, ValidityReport};
pub use coloring::Coloring;
pub use error::{AlgebraError, ColoringError, GroupError, IoError};
pub use group::{FiniteGroup, InverseOrbit};
pub use ramsey::{ramsey_check, RamseyBounds, RamseyReport};
pub use search::{search_group, spectrum, Engine, SearchConfig, SearchOutcome, SearchResult};
pub use verify::{verify, Status, VerificationReport, Violation, ViolationKind};

//! Deciding whether a coloring represents an atom structure.
//!
//! A coloring of a group's non-identity elements represents a structure when
//! its classes partition the non-identity elements into nonempty
//! inverse-closed sets, no forbidden cycle is realised by a product
//! `y * z = x`, and every allowed cycle is realised at every element of each
//! of its target classes. Edge `(u, v)` of the Cayley representation carries
//! the class of `u⁻¹ * v`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::AtomStructure;
use crate::coloring::Coloring;
use crate::error::ColoringError;

pub const DEFAULT_VIOLATION_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    NotPartition,
    EmptyClass,
    NotInverseClosed,
    ForbiddenWitnessed,
    MandatoryUnwitnessed,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NotPartition => "not-partition",
            ViolationKind::EmptyClass => "empty-class",
            ViolationKind::NotInverseClosed => "not-inverse-closed",
            ViolationKind::ForbiddenWitnessed => "forbidden-witnessed",
            ViolationKind::MandatoryUnwitnessed => "mandatory-unwitnessed",
        })
    }
}

/// One counterexample. The fields are enough to re-check it by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `element` lies in `classes`: zero classes for a missing element, two
    /// or more for a duplicate, one or more for the identity.
    NotPartition { element: usize, classes: Vec<String> },
    EmptyClass { atom: String },
    /// `element` is in `atom` but `inverse` is not.
    NotInverseClosed { atom: String, element: usize, inverse: usize },
    /// `y * z = x` with `y`, `z`, `x` in classes `atoms[0..3]`.
    ForbiddenWitnessed {
        cycle: String,
        atoms: [String; 3],
        y: usize,
        z: usize,
        x: usize,
    },
    /// No `y` in `flanks[0]`, `z` in `flanks[1]` with `y * z = element`,
    /// although `element` is in `target`.
    MandatoryUnwitnessed {
        cycle: String,
        target: String,
        flanks: [String; 2],
        element: usize,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::NotPartition { .. } => ViolationKind::NotPartition,
            Violation::EmptyClass { .. } => ViolationKind::EmptyClass,
            Violation::NotInverseClosed { .. } => ViolationKind::NotInverseClosed,
            Violation::ForbiddenWitnessed { .. } => ViolationKind::ForbiddenWitnessed,
            Violation::MandatoryUnwitnessed { .. } => ViolationKind::MandatoryUnwitnessed,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.kind())?;
        match self {
            Violation::NotPartition { element, classes } => {
                write!(f, "element={element} classes=[{}]", classes.join(","))
            }
            Violation::EmptyClass { atom } => write!(f, "atom={atom}"),
            Violation::NotInverseClosed { atom, element, inverse } => {
                write!(f, "atom={atom} element={element} inverse={inverse}")
            }
            Violation::ForbiddenWitnessed { cycle, atoms, y, z, x } => write!(
                f,
                "cycle={cycle} y={y}({}) z={z}({}) x=y*z={x}({})",
                atoms[0], atoms[1], atoms[2]
            ),
            Violation::MandatoryUnwitnessed { cycle, target, flanks, element } => write!(
                f,
                "cycle={cycle} target={target} element={element} flanks={},{}",
                flanks[0], flanks[1]
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Valid,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub status: Status,
    pub violations: Vec<Violation>,
    /// Set when the violation cap was reached and the list is incomplete.
    pub truncated: bool,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    pub fn has_kind(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind() == kind)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: DEFAULT_VIOLATION_CAP }
    }
}

struct Sink {
    out: Vec<Violation>,
    cap: usize,
    truncated: bool,
}

impl Sink {
    fn new(cap: usize) -> Self {
        Sink { out: Vec::new(), cap, truncated: false }
    }

    /// Returns false once the cap is reached.
    fn push(&mut self, v: Violation) -> bool {
        if self.out.len() >= self.cap {
            self.truncated = true;
            return false;
        }
        self.out.push(v);
        true
    }

    fn full(&self) -> bool {
        self.truncated
    }
}

fn check_partition_into(c: &Coloring, sink: &mut Sink) {
    let g = c.group();
    let mut holders: Vec<Vec<&str>> = vec![Vec::new(); g.order()];
    for (atom, set) in c.classes() {
        for &x in set {
            holders[x].push(atom);
        }
    }
    for (x, h) in holders.iter().enumerate() {
        let bad = if x == 0 { !h.is_empty() } else { h.len() != 1 };
        if bad {
            let v = Violation::NotPartition {
                element: x,
                classes: h.iter().map(|s| s.to_string()).collect(),
            };
            if !sink.push(v) {
                return;
            }
        }
    }
    for (atom, set) in c.classes() {
        if set.is_empty() && !sink.push(Violation::EmptyClass { atom: atom.clone() }) {
            return;
        }
    }
    for (atom, set) in c.classes() {
        for &x in set {
            let inverse = g.inv(x);
            if !set.contains(&inverse) {
                let v = Violation::NotInverseClosed {
                    atom: atom.clone(),
                    element: x,
                    inverse,
                };
                if !sink.push(v) {
                    return;
                }
            }
        }
    }
}

fn check_forbidden_into(s: &AtomStructure, c: &Coloring, sink: &mut Sink) {
    let g = c.group();
    let empty = BTreeSet::new();
    let class = |k: usize| c.class(s.atoms()[k].name()).unwrap_or(&empty);
    for cycle in s.forbidden() {
        let [i, j, k] = cycle.atoms();
        for &y in class(i) {
            for &z in class(j) {
                let x = g.op(y, z);
                if class(k).contains(&x) {
                    let name = |a: usize| s.atoms()[a].name().to_owned();
                    let v = Violation::ForbiddenWitnessed {
                        cycle: s.cycle_label(cycle),
                        atoms: [name(i), name(j), name(k)],
                        y,
                        z,
                        x,
                    };
                    if !sink.push(v) {
                        return;
                    }
                }
            }
        }
    }
}

fn check_mandatory_into(s: &AtomStructure, c: &Coloring, sink: &mut Sink) {
    let g = c.group();
    let empty = BTreeSet::new();
    let class = |k: usize| c.class(s.atoms()[k].name()).unwrap_or(&empty);
    for cycle in s.allowed_cycles() {
        for (k, i, j) in cycle.targets() {
            let (ci, cj) = (class(i), class(j));
            for &x in class(k) {
                let witnessed = ci.iter().any(|&y| cj.contains(&g.op(g.inv(y), x)));
                if !witnessed {
                    let name = |a: usize| s.atoms()[a].name().to_owned();
                    let v = Violation::MandatoryUnwitnessed {
                        cycle: s.cycle_label(&cycle),
                        target: name(k),
                        flanks: [name(i), name(j)],
                        element: x,
                    };
                    if !sink.push(v) {
                        return;
                    }
                }
            }
        }
    }
}

/// Partition, nonemptiness and inverse-closure faults.
pub fn check_partition(c: &Coloring) -> Vec<Violation> {
    let mut sink = Sink::new(usize::MAX);
    check_partition_into(c, &mut sink);
    sink.out
}

/// Witnesses of forbidden cycles. One orientation per multiset suffices for
/// inverse-closed classes.
pub fn check_forbidden(s: &AtomStructure, c: &Coloring) -> Vec<Violation> {
    let mut sink = Sink::new(usize::MAX);
    check_forbidden_into(s, c, &mut sink);
    sink.out
}

/// Elements of a target class lacking a witness for some allowed cycle.
pub fn check_mandatory(s: &AtomStructure, c: &Coloring) -> Vec<Violation> {
    let mut sink = Sink::new(usize::MAX);
    check_mandatory_into(s, c, &mut sink);
    sink.out
}

pub fn verify(s: &AtomStructure, c: &Coloring) -> Result<VerificationReport, ColoringError> {
    verify_with(s, c, VerifyOptions::default())
}

/// Runs the partition checks and, when those are clean, the forbidden and
/// mandatory checks.
pub fn verify_with(
    s: &AtomStructure,
    c: &Coloring,
    opts: VerifyOptions,
) -> Result<VerificationReport, ColoringError> {
    let expected: BTreeSet<String> = s.atoms().iter().map(|a| a.name().to_owned()).collect();
    let found: BTreeSet<String> = c.classes().keys().cloned().collect();
    if expected != found {
        return Err(ColoringError::AtomMismatch {
            expected: expected.into_iter().collect(),
            found: found.into_iter().collect(),
        });
    }
    let mut sink = Sink::new(opts.cap);
    check_partition_into(c, &mut sink);
    if sink.out.is_empty() {
        check_forbidden_into(s, c, &mut sink);
        if !sink.full() {
            check_mandatory_into(s, c, &mut sink);
        }
    }
    let status = if sink.out.is_empty() && !sink.truncated {
        Status::Valid
    } else {
        Status::Invalid
    };
    Ok(VerificationReport {
        status,
        violations: sink.out,
        truncated: sink.truncated,
    })
}

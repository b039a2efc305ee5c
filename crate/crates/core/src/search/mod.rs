//! Existence search over a single group, cyclic spectra and sweeps.

mod backtrack;
pub mod table;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algebra::AtomStructure;
use crate::coloring::Coloring;
use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::sat::{self, SatError, SolveOutcome};
use crate::verify;

use backtrack::{Backtracker, Verdict};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{0} is not a relation algebra atom structure")]
    NotAnAlgebra(String),
    #[error("the sat engine needs a cyclic group, got {0}")]
    NotCyclic(String),
    #[error("bad modulus range {0}..={1}")]
    BadRange(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error("internal error: search returned a coloring that fails verification")]
    Unsound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    Backtrack,
    /// External DIMACS solver, invoked as `command <cnf-path>`.
    Sat { command: String },
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub engine: Engine,
    /// Number of moduli searched concurrently by [`spectrum`].
    pub parallel_width: usize,
    /// Multiplier symmetry breaking. A `None` result obtained with this set
    /// is reported as uncertified.
    pub prune_multipliers: bool,
    /// Per-group wall-clock budget; `None` is unlimited.
    pub time_budget: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            engine: Engine::Backtrack,
            parallel_width: 1,
            prune_multipliers: false,
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Coloring),
    None,
    Timeout,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Backtracking nodes; 0 for the sat engine.
    pub nodes: u64,
    pub wall: Duration,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub group: String,
    pub order: usize,
    pub result: SearchResult,
    /// False for a `None` that relied on symmetry breaking.
    pub certified: bool,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn verdict(&self) -> &'static str {
        match self.result {
            SearchResult::Found(_) => "found",
            SearchResult::None if self.certified => "none",
            SearchResult::None => "none-uncertified",
            SearchResult::Timeout => "timeout",
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self.result, SearchResult::Found(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match &self.result {
            SearchResult::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches for a representation of `s` over `g`. Found colorings are
/// re-verified before being returned.
///
/// Groups with fewer inverse orbits than diversity atoms cannot carry
/// nonempty classes and yield `None` without search.
pub fn search_group(
    s: &AtomStructure,
    g: Arc<FiniteGroup>,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    if !s.validate_ra().is_valid() {
        return Err(SearchError::NotAnAlgebra(s.name().to_owned()));
    }
    let start = Instant::now();
    let deadline = cfg.time_budget.map(|b| start + b);
    let too_small = g.inverse_orbits().len() < s.num_atoms();
    let (result, nodes) = match &cfg.engine {
        _ if too_small => (SearchResult::None, 0),
        Engine::Backtrack => {
            let mut bt = Backtracker::new(s, &g, cfg.prune_multipliers).with_deadline(deadline);
            let verdict = bt.run();
            let result = match verdict {
                Verdict::Found(labels) => {
                    SearchResult::Found(Coloring::from_labels(g.clone(), s, &labels))
                }
                Verdict::Exhausted => SearchResult::None,
                Verdict::Timeout => SearchResult::Timeout,
            };
            (result, bt.nodes)
        }
        Engine::Sat { command } => {
            let n = g
                .cyclic_modulus()
                .ok_or_else(|| SearchError::NotCyclic(g.label().to_owned()))?;
            let inst = sat::encode_with(s, n, cfg.prune_multipliers)?;
            let result = match sat::solve_external(&inst, s, command, cfg.time_budget)? {
                SolveOutcome::Sat(c) => SearchResult::Found(c),
                SolveOutcome::Unsat => SearchResult::None,
                SolveOutcome::Timeout => SearchResult::Timeout,
            };
            (result, 0)
        }
    };
    if let SearchResult::Found(c) = &result {
        let report = verify::verify(s, c).map_err(|_| SearchError::Unsound)?;
        if !report.is_valid() {
            return Err(SearchError::Unsound);
        }
    }
    let certified = !(matches!(result, SearchResult::None) && cfg.prune_multipliers);
    Ok(SearchOutcome {
        group: g.label().to_owned(),
        order: g.order(),
        result,
        certified,
        stats: SearchStats {
            nodes,
            wall: start.elapsed(),
        },
    })
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub algebra: String,
    /// One outcome per modulus, in increasing order.
    pub outcomes: Vec<SearchOutcome>,
}

impl SpectrumReport {
    pub fn found(&self) -> BTreeSet<usize> {
        self.outcomes
            .iter()
            .filter(|o| o.is_found())
            .map(|o| o.order)
            .collect()
    }

    /// Set when some modulus timed out or its `None` is uncertified.
    pub fn partial(&self) -> bool {
        self.outcomes
            .iter()
            .any(|o| matches!(o.result, SearchResult::Timeout) || !o.certified)
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found: Vec<String> = self.found().iter().map(usize::to_string).collect();
        write!(f, "{}: {{{}}}", self.algebra, found.join(", "))?;
        if self.partial() {
            write!(f, " (partial)")?;
        }
        Ok(())
    }
}

/// Cyclic spectrum of `s` over `n_min..=n_max`. Moduli are distributed over
/// `cfg.parallel_width` workers; the report is ordered by modulus.
pub fn spectrum(
    s: &AtomStructure,
    n_min: usize,
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<SpectrumReport, SearchError> {
    spectrum_with(s, n_min, n_max, cfg, |_| {})
}

/// [`spectrum`] with a callback invoked as each modulus completes, in
/// completion order.
pub fn spectrum_with(
    s: &AtomStructure,
    n_min: usize,
    n_max: usize,
    cfg: &SearchConfig,
    mut on_done: impl FnMut(&SearchOutcome),
) -> Result<SpectrumReport, SearchError> {
    if n_min == 0 || n_min > n_max {
        return Err(SearchError::BadRange(n_min, n_max));
    }
    if !s.validate_ra().is_valid() {
        return Err(SearchError::NotAnAlgebra(s.name().to_owned()));
    }
    let moduli: Vec<usize> = (n_min..=n_max).collect();
    let workers = cfg.parallel_width.clamp(1, moduli.len());
    let mut outcomes = Vec::with_capacity(moduli.len());
    if workers == 1 {
        for &n in &moduli {
            let o = search_group(s, Arc::new(FiniteGroup::cyclic(n)?), cfg)?;
            on_done(&o);
            outcomes.push(o);
        }
    } else {
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                let moduli = &moduli;
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&n) = moduli.get(i) else { break };
                    let r = FiniteGroup::cyclic(n)
                        .map_err(SearchError::from)
                        .and_then(|g| search_group(s, Arc::new(g), cfg));
                    if tx.send(r).is_err() {
                        break;
                    }
                });
            }
            drop(tx);
            for r in rx {
                let o = r?;
                on_done(&o);
                outcomes.push(o);
            }
            Ok::<(), SearchError>(())
        })?;
        outcomes.sort_by_key(|o| o.order);
    }
    Ok(SpectrumReport {
        algebra: s.name().to_owned(),
        outcomes,
    })
}

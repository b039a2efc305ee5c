//! `relrep`: verify, search for and encode representations of symmetric
//! integral relation algebras over finite groups.
//!
//! Exit codes: 0 affirmative (valid / found / sat / clique-free), 1 negative,
//! 2 usage or input error, 3 timeout or partial result.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use relrep::io::{self as rio, ResultRecord};
use relrep::sat;
use relrep::search::table::{self, CYCLIC_SPECTRA};
use relrep::search::{self, Engine, SearchConfig, SearchOutcome, SearchResult};
use relrep::{catalog, enumerate_structures, ramsey_check, verify, AtomStructure, FiniteGroup, RamseyBounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Yes = 0,
    No = 1,
    Partial = 3,
}

#[derive(Parser)]
#[command(name = "relrep", version, about = "Representations of symmetric integral relation algebras over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in algebras, or print one as an algebra file.
    Catalog {
        #[arg(long)]
        show: Option<String>,
    },
    /// Check a coloring against an algebra.
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        coloring: PathBuf,
        /// Stop after this many violations.
        #[arg(long, default_value_t = relrep::verify::DEFAULT_VIOLATION_CAP)]
        cap: usize,
    },
    /// Search for a representation over one group or a range of cyclic groups.
    Search {
        #[arg(long)]
        algebra: String,
        /// Group spec: zN, sK or cayley:<path>.
        #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
        group: Option<String>,
        #[arg(long, requires = "n_max")]
        n_min: Option<usize>,
        #[arg(long, requires = "n_min")]
        n_max: Option<usize>,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Cyclic spectrum over a range of moduli.
    Spectrum {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Spectra of the seven three-atom structures paired with the reference table.
    MatchTable {
        #[arg(long, default_value_t = 14)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Enumerate atom structures up to isomorphism.
    Enumerate {
        #[arg(long)]
        diversity_atoms: usize,
        #[arg(long)]
        flexible_only: bool,
        /// Write each structure as an algebra file into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Write the CNF encoding and its variable map.
    Encode {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Add multiplier symmetry-breaking clauses (unsat verdicts then
        /// rely on the symmetry argument).
        #[arg(long)]
        symmetry_break: bool,
    },
    /// Decode a solver model into a coloring and verify it.
    Decode {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        map: PathBuf,
        /// Solver output (`v` lines) or a bare literal list.
        #[arg(long)]
        model: PathBuf,
        /// Write the decoded coloring here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a cyclic coloring for monochromatic cliques.
    Ramsey {
        #[arg(long)]
        coloring: PathBuf,
        /// Clique bounds, e.g. a=4,b=3,c=3.
        #[arg(long)]
        bounds: String,
    },
}

#[derive(Args)]
struct SearchOpts {
    #[arg(long, value_enum, default_value_t = EngineArg::Backtrack)]
    engine: EngineArg,
    /// Solver command for the sat engine; the CNF path is appended.
    #[arg(long, env = "RELREP_SOLVER")]
    solver_cmd: Option<String>,
    /// Per-group time budget in seconds (0 = unlimited).
    #[arg(long, default_value_t = 0.0)]
    budget: f64,
    /// Moduli searched concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Multiplier symmetry breaking; `none` verdicts become uncertified.
    #[arg(long)]
    prune_multipliers: bool,
    /// Directory for certificate colorings.
    #[arg(long, default_value = "certificates")]
    certificates: PathBuf,
    /// Append one JSON record per group to this log.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Backtrack,
    Sat,
}

impl SearchOpts {
    fn config(&self) -> Result<SearchConfig> {
        let engine = match self.engine {
            EngineArg::Backtrack => Engine::Backtrack,
            EngineArg::Sat => Engine::Sat {
                command: self
                    .solver_cmd
                    .clone()
                    .context("--engine sat needs --solver-cmd or RELREP_SOLVER")?,
            },
        };
        if !(self.budget >= 0.0 && self.budget.is_finite()) {
            bail!("bad --budget {}", self.budget);
        }
        Ok(SearchConfig {
            engine,
            parallel_width: self.jobs.max(1),
            prune_multipliers: self.prune_multipliers,
            time_budget: (self.budget > 0.0).then(|| Duration::from_secs_f64(self.budget)),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => ExitCode::from(v as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Catalog { show } => cmd_catalog(show),
        Command::Verify { algebra, coloring, cap } => cmd_verify(&algebra, &coloring, cap),
        Command::Search { algebra, group, n_min, n_max, opts } => {
            let s = rio::resolve_algebra(&algebra)?;
            let cfg = opts.config()?;
            match (group, n_min, n_max) {
                (Some(spec), _, _) => {
                    let g = Arc::new(FiniteGroup::from_spec(&spec)?);
                    let o = search::search_group(&s, g, &cfg)?;
                    report_outcomes(&s, &[o], &opts)
                }
                (None, Some(lo), Some(hi)) => {
                    let r = search::spectrum_with(&s, lo, hi, &cfg, progress)?;
                    report_outcomes(&s, &r.outcomes, &opts)
                }
                _ => bail!("give --group or --n-min/--n-max"),
            }
        }
        Command::Spectrum { algebra, n_min, n_max, opts } => {
            let s = rio::resolve_algebra(&algebra)?;
            let cfg = opts.config()?;
            let r = search::spectrum_with(&s, n_min, n_max, &cfg, progress)?;
            let v = report_outcomes(&s, &r.outcomes, &opts)?;
            println!("spectrum {r}");
            println!("certificates in {}", opts.certificates.display());
            Ok(v)
        }
        Command::MatchTable { n_max, jobs } => cmd_match_table(n_max, jobs),
        Command::Enumerate { diversity_atoms, flexible_only, out_dir } => {
            cmd_enumerate(diversity_atoms, flexible_only, out_dir.as_deref())
        }
        Command::Encode { algebra, n, cnf, map, symmetry_break } => {
            let s = rio::resolve_algebra(&algebra)?;
            let inst = sat::encode_with(&s, n, symmetry_break)?;
            sat::emit_dimacs(&inst, &cnf, &map)?;
            println!(
                "{} over z{n}: {} variables ({} color), {} clauses -> {}, {}",
                s.name(),
                inst.num_vars(),
                inst.map.num_color_vars(),
                inst.clauses.len(),
                cnf.display(),
                map.display()
            );
            Ok(Verdict::Yes)
        }
        Command::Decode { algebra, n, map, model, out } => {
            let s = rio::resolve_algebra(&algebra)?;
            let text = std::fs::read_to_string(&model).with_context(|| model.display().to_string())?;
            if text.lines().any(|l| l.trim() == "s UNSATISFIABLE") {
                println!("unsat");
                return Ok(Verdict::No);
            }
            let c = sat::decode(&map, &sat::parse_model(&text)?, &s, n)?;
            match &out {
                Some(p) => rio::save_coloring(&c, p)?,
                None => print!("{}", rio::coloring_to_json(&c)),
            }
            let report = verify(&s, &c)?;
            print_report(&report);
            Ok(if report.is_valid() { Verdict::Yes } else { Verdict::No })
        }
        Command::Ramsey { coloring, bounds } => {
            let c = rio::load_coloring(&coloring)?;
            let bounds: RamseyBounds = bounds.parse()?;
            let r = ramsey_check(&c, &bounds)?;
            print!("{r}");
            Ok(if r.is_clique_free() {
                println!("clique-free");
                Verdict::Yes
            } else {
                println!("clique found");
                Verdict::No
            })
        }
    }
}

fn cmd_catalog(show: Option<String>) -> Result<Verdict> {
    match show {
        Some(name) => print!("{}", rio::algebra_to_json(&catalog::get(&name)?)),
        None => {
            for e in catalog::entries() {
                let s = &e.structure;
                let flex: Vec<String> = s.flexible_atoms().iter().map(ToString::to_string).collect();
                println!("{s} flexible=[{}]  {}", flex.join(","), e.note);
            }
        }
    }
    Ok(Verdict::Yes)
}

fn print_report(report: &relrep::VerificationReport) {
    for v in &report.violations {
        println!("{v}");
    }
    if report.truncated {
        println!("(violation list truncated)");
    }
    println!("{}", if report.is_valid() { "valid" } else { "invalid" });
}

fn cmd_verify(algebra: &str, coloring: &Path, cap: usize) -> Result<Verdict> {
    let s = rio::resolve_algebra(algebra)?;
    let c = rio::load_coloring(coloring)?;
    let report = relrep::verify::verify_with(&s, &c, relrep::verify::VerifyOptions { cap })?;
    print_report(&report);
    Ok(if report.is_valid() { Verdict::Yes } else { Verdict::No })
}

fn progress(o: &SearchOutcome) {
    eprintln!("{} {} ({:.2}s)", o.group, o.verdict(), o.stats.wall.as_secs_f64());
}

fn file_stem(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect()
}

/// Prints one line per group, writes certificates and log records.
fn report_outcomes(s: &AtomStructure, outcomes: &[SearchOutcome], opts: &SearchOpts) -> Result<Verdict> {
    let mut any_found = false;
    let mut partial = false;
    for o in outcomes {
        let mut certificate = None;
        if let SearchResult::Found(c) = &o.result {
            any_found = true;
            let path = opts
                .certificates
                .join(format!("{}_{}.json", file_stem(s.name()), file_stem(&o.group)));
            rio::save_coloring(c, &path)?;
            certificate = Some(path.display().to_string());
        }
        partial |= matches!(o.result, SearchResult::Timeout) || !o.certified;
        match &certificate {
            Some(p) => println!("{} {} {} certificate={p}", s.name(), o.group, o.verdict()),
            None => println!("{} {} {} nodes={}", s.name(), o.group, o.verdict(), o.stats.nodes),
        }
        if let Some(log) = &opts.log {
            let nodes = certificate.is_none().then_some(o.stats.nodes);
            rio::append_record(
                log,
                &ResultRecord {
                    algebra: s.name().to_owned(),
                    group: o.group.clone(),
                    verdict: o.verdict().to_owned(),
                    certificate,
                    nodes,
                    wall_time_s: o.stats.wall.as_secs_f64(),
                },
            )?;
        }
    }
    Ok(if partial {
        Verdict::Partial
    } else if any_found {
        Verdict::Yes
    } else {
        Verdict::No
    })
}

fn cmd_enumerate(m: usize, flexible_only: bool, out_dir: Option<&Path>) -> Result<Verdict> {
    let list = enumerate_structures(m, flexible_only)?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).with_context(|| dir.display().to_string())?;
    }
    for s in &list {
        let flex: Vec<String> = s.flexible_atoms().iter().map(ToString::to_string).collect();
        println!("{s} flexible=[{}]", flex.join(","));
        if let Some(dir) = out_dir {
            let path = dir.join(format!("{}.json", s.name()));
            std::fs::write(&path, rio::algebra_to_json(s)).with_context(|| path.display().to_string())?;
        }
    }
    println!("{} structures", list.len());
    Ok(Verdict::Yes)
}

fn cmd_match_table(n_max: usize, jobs: usize) -> Result<Verdict> {
    let structures = enumerate_structures(2, false)?;
    let cfg = SearchConfig {
        parallel_width: jobs.max(1),
        ..SearchConfig::default()
    };
    let m = table::match_table(&structures, n_max, &cfg)?;
    for (i, (s, r)) in m.spectra.iter().enumerate() {
        let label = m.pairing.as_ref().map_or("?", |p| p[i]);
        println!("{s} -> {label} spectrum[2..={n_max}] {:?}", r.found());
    }
    for row in &CYCLIC_SPECTRA {
        println!("{} {} truncated {:?}", row.label, row.cyclic_spec, row.truncated(2, n_max));
    }
    let minima: Vec<String> = m
        .minima()
        .iter()
        .map(|x| x.map_or("-".into(), |v| v.to_string()))
        .collect();
    println!("minima {{{}}}", minima.join(", "));
    Ok(if m.partial() {
        Verdict::Partial
    } else if m.pairing.is_some() {
        println!("matches table");
        Verdict::Yes
    } else {
        println!("does not match table");
        Verdict::No
    })
}

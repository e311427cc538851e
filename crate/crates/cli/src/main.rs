//! `ksforge`: build and certify generalized Hadamard matrices, S-Hadamard
//! matrices and Kochen-Specker pairs from the command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
//! 3 no construction for the requested order.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ksforge::ghmat::search::{DEFAULT_BUDGET, DEFAULT_MAX_SIDE};
use ksforge::{
    build_ks, dephase, from_gh, gh_compose, gh_cyclic_prime, gh_import, gh_search, ks_import, ks_stats,
    noncolor_check, parity_refutes, run_pipeline, shad_import, verify_gh, verify_ks, verify_shadamard, Error,
    NoncolorOutcome, PipelineConfig, PipelineOutcome, Planner, SearchConfig, SearchOutcome, EXCLUDED_ORDERS,
};
use serde_json::json;

use output::{read_object, Emit, Format};

#[derive(Parser, Debug)]
#[command(name = "ksforge", version, about = "Exact GH / S-Hadamard / Kochen-Specker toolkit")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Node budget for the GH and non-colorability searches.
    #[arg(long, global = true, env = "KSFORGE_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Largest matrix side the GH search will attempt.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIDE,
          value_parser = positive_usize)]
    max_side: usize,
    /// Write the produced object here; stdout then carries only the report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Accepted for compatibility. Every search is deterministic.
    #[arg(long, global = true)]
    seedless: bool,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized Hadamard matrices over Z_g.
    #[command(subcommand)]
    Gh(GhCmd),
    /// S-Hadamard matrices.
    #[command(subcommand)]
    Shad(ShadCmd),
    /// Kochen-Specker pairs.
    #[command(subcommand)]
    Ks(KsCmd),
    /// Print the construction recipe for an even order.
    Plan {
        n: usize,
        /// Register a verified GH matrix file as a building block.
        #[arg(long = "import")]
        imports: Vec<PathBuf>,
    },
    /// Plan, build and verify every stage for an even order.
    Pipeline {
        n: usize,
        #[arg(long = "import")]
        imports: Vec<PathBuf>,
        /// Also run the exhaustive non-colorability search (uses --budget).
        #[arg(long)]
        noncolor: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GhCmd {
    /// The multiplication table of Z_p, a GH(p, 1).
    MakePrime {
        p: u32,
    },
    /// Backtracking search for a GH(g, λ).
    Search {
        g: u32,
        lambda: u32,
    },
    /// Kronecker sum of two GH matrices over the same group.
    Compose {
        a: PathBuf,
        b: PathBuf,
    },
    Verify {
        file: PathBuf,
    },
    /// Load and verify a GH matrix, re-emitting it with its report.
    Import {
        file: PathBuf,
    },
    /// Re-serialize a verified GH matrix in canonical form.
    Export {
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ShadCmd {
    /// Exponentiate a GH(g, λ) with g > 2.
    FromGh {
        file: PathBuf,
    },
    Verify {
        file: PathBuf,
    },
    /// Make the first row all ones.
    Dephase {
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum KsCmd {
    /// Build the pair from an even-order S-Hadamard matrix.
    Build {
        file: PathBuf,
    },
    Verify {
        file: PathBuf,
    },
    /// Exhaustive search for a valid marking.
    Noncolor {
        file: PathBuf,
    },
    Stats {
        file: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
    Unreachable(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotVerified(_) | Error::SearchFailed { .. } => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verify(msg)) => {
            eprintln!("ksforge: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ksforge: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Unreachable(msg)) => {
            eprintln!("ksforge: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let r = &cli.run;
    let emit = match &cli.command {
        Command::Gh(c) => gh(c, r)?,
        Command::Shad(c) => shad(c)?,
        Command::Ks(c) => ks(c, r)?,
        Command::Plan { n, imports } => plan(*n, imports, r)?,
        Command::Pipeline { n, imports, noncolor } => pipeline(*n, imports, *noncolor, r)?,
    };
    let pass = emit.pass;
    output::write(emit, r.format, r.out.as_deref())?;
    Ok(pass)
}

fn search_config(r: &RunArgs) -> SearchConfig {
    SearchConfig { budget: r.budget, max_side: r.max_side }
}

fn load(path: &PathBuf) -> Result<String, Failure> {
    read_object(path).map_err(Failure::Usage)
}

fn note(r: &RunArgs, msg: impl AsRef<str>) {
    if r.verbose > 0 {
        eprintln!("{}", msg.as_ref());
    }
}

fn gh(cmd: &GhCmd, r: &RunArgs) -> Result<Emit, Failure> {
    Ok(match cmd {
        GhCmd::MakePrime { p } => {
            let m = gh_cyclic_prime(*p)?;
            let report = verify_gh(&m);
            Emit::new(report.pass, &report).object(&m).line(format!("GH({p}, 1) from Z_{p}"))
        }
        GhCmd::Search { g, lambda } => {
            note(r, format!("searching GH({g}, {lambda}) with budget {}", r.budget));
            match gh_search(*g, *lambda, &search_config(r))? {
                SearchOutcome::Found { matrix, nodes } => {
                    let report = verify_gh(&matrix);
                    Emit::new(report.pass, &report)
                        .object(&matrix)
                        .extra("nodes", nodes)
                        .line(format!("found GH({g}, {lambda}) after {nodes} nodes"))
                }
                SearchOutcome::NotFound { reason, nodes } => {
                    Emit::new(false, json!({ "found": false, "reason": reason }))
                        .extra("nodes", nodes)
                        .line(format!("no GH({g}, {lambda}): {reason:?} after {nodes} nodes"))
                }
            }
        }
        GhCmd::Compose { a, b } => {
            let (ma, ra) = gh_import(&load(a)?)?;
            let (mb, rb) = gh_import(&load(b)?)?;
            if !(ra.pass && rb.pass) {
                return Err(Error::NotVerified("generalized Hadamard matrix").into());
            }
            let m = gh_compose(&ma, &mb)?;
            let report = verify_gh(&m);
            Emit::new(report.pass, &report).object(&m).line(format!(
                "GH({}, {}) of side {}",
                m.g(),
                m.lambda(),
                m.side()
            ))
        }
        GhCmd::Verify { file } => {
            let (m, report) = gh_import(&load(file)?)?;
            let mut e = Emit::new(report.pass, &report).line(format!(
                "GH({}, {}) of side {}",
                m.g(),
                m.lambda(),
                m.side()
            ));
            if let Some(w) = &report.witness {
                e = e.line(format!("rows {:?} have difference histogram {:?}", w.rows, w.histogram));
            }
            e
        }
        GhCmd::Import { file } => {
            let (m, report) = gh_import(&load(file)?)?;
            Emit::new(report.pass, &report).object(&m)
        }
        GhCmd::Export { file } => {
            let (m, report) = gh_import(&load(file)?)?;
            if !report.pass {
                return Err(Error::NotVerified("generalized Hadamard matrix").into());
            }
            Emit::new(true, &report).object(&m)
        }
    })
}

fn shad(cmd: &ShadCmd) -> Result<Emit, Failure> {
    Ok(match cmd {
        ShadCmd::FromGh { file } => {
            let (m, _) = gh_import(&load(file)?)?;
            let h = from_gh(&m)?;
            let report = verify_shadamard(&h);
            Emit::new(report.pass, &report).object(&h).line(format!(
                "order {} over the {}-th roots of unity",
                h.n(),
                h.root_order()
            ))
        }
        ShadCmd::Verify { file } => {
            let (h, report) = shad_import(&load(file)?)?;
            let mut e = Emit::new(report.pass, &report).line(format!("order {}", h.n()));
            for f in &report.failures {
                e = e.line(format!("condition ({}) fails at rows {:?}", f.condition, f.rows));
            }
            e
        }
        ShadCmd::Dephase { file } => {
            let (h, _) = shad_import(&load(file)?)?;
            let d = dephase(&h);
            let report = verify_shadamard(&d);
            Emit::new(report.pass, &report).object(&d)
        }
    })
}

fn ks(cmd: &KsCmd, r: &RunArgs) -> Result<Emit, Failure> {
    Ok(match cmd {
        KsCmd::Build { file } => {
            let (h, _) = shad_import(&load(file)?)?;
            let p = build_ks(&h)?;
            let report = verify_ks(&p);
            let stats = ks_stats(&p);
            Emit::new(report.pass, &report)
                .object(&p)
                .line(format!("|V| = {}, |B| = {}", stats.vectors, stats.bases))
                .extra("stats", stats)
        }
        KsCmd::Verify { file } => {
            let (p, report) = ks_import(&load(file)?)?;
            Emit::new(report.pass, &report).line(format!(
                "|V| = {}, |B| = {}",
                p.vectors().len(),
                p.bases().len()
            ))
        }
        KsCmd::Noncolor { file } => {
            let (p, report) = ks_import(&load(file)?)?;
            note(r, format!("coloring search with budget {}", r.budget));
            let outcome = noncolor_check(&p, r.budget);
            let refuted = matches!(outcome, NoncolorOutcome::NoValidColoring { .. });
            Emit::new(refuted, &outcome)
                .extra("parity_refutes", parity_refutes(&p))
                .extra("pair_verified", report.pass)
                .line(format!("{outcome:?}"))
        }
        KsCmd::Stats { file } => {
            let (p, report) = ks_import(&load(file)?)?;
            let stats = ks_stats(&p);
            Emit::new(report.pass, &report)
                .line(format!(
                    "|V| = {} (bound {}), |B| = {}",
                    stats.vectors, stats.vector_bound, stats.bases
                ))
                .extra("stats", stats)
        }
    })
}

fn planner(imports: &[PathBuf], r: &RunArgs) -> Result<Planner, Failure> {
    let mut planner = Planner::new(search_config(r));
    for path in imports {
        let (m, _) = gh_import(&load(path)?)?;
        planner.register_import(source_name(path), m)?;
    }
    Ok(planner)
}

fn source_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned())
}

fn unreachable_message(n: usize, planner: &Planner) -> String {
    if EXCLUDED_ORDERS.contains(&n) && !planner.has_imports() {
        format!(
            "order {n} is on the exclusion list {EXCLUDED_ORDERS:?}: no GH(g, n/g) over a cyclic group \
             with g > 2 is available, so no recipe exists (register one with --import)"
        )
    } else {
        format!("no recipe for order {n} within the search limits")
    }
}

fn plan(n: usize, imports: &[PathBuf], r: &RunArgs) -> Result<Emit, Failure> {
    let planner = planner(imports, r)?;
    match planner.plan(n)? {
        Some(recipe) => {
            Ok(Emit::new(true, json!({ "reachable": true })).line(recipe.to_string()).object(recipe))
        }
        None => Err(Failure::Unreachable(unreachable_message(n, &planner))),
    }
}

fn pipeline(n: usize, imports: &[PathBuf], noncolor: bool, r: &RunArgs) -> Result<Emit, Failure> {
    let config =
        PipelineConfig { planner: planner(imports, r)?, noncolor_budget: noncolor.then_some(r.budget) };
    note(r, format!("pipeline for order {n}"));
    let bundle = match run_pipeline(n, &config)? {
        PipelineOutcome::Unreachable { n } => {
            return Err(Failure::Unreachable(unreachable_message(n, &config.planner)))
        }
        PipelineOutcome::Completed(b) => b,
    };
    let mut e = Emit::new(bundle.pass, &*bundle).line(bundle.recipe.to_string());
    if let Some(ks) = &bundle.ks {
        e = e.line(format!("|V| = {}, |B| = {}", ks.stats.vectors, ks.stats.bases)).object(&ks.pair);
    }
    Ok(e)
}

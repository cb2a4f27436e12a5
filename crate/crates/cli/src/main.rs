//! `hubsolve`: solvers, reductions, gadgets and the self-check suite.
//!
//! Reports are `key=value` lines on stdout; timings go to stderr. Exit codes:
//! 0 yes/success, 1 no/infeasible, 2 usage or input error, 3 size cap
//! exceeded, 4 a witness failed re-verification.

mod gadget;
mod reduce;
mod report;
mod solve;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hubsolve_core::selfcheck::{selfcheck, Level};
use report::{CliError, CliResult, Report, Verdict};
use solve::ColoringKind;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "hubsolve", version, about = "Hub-parameterized exact solvers and reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a verified witness.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Transform an instance: group-sat, cover-family, structured-split,
    /// partition-to-triangle, setcover-to-domset, hittingset-to-domset, or a
    /// set-system reduction by name.
    Reduce(ReduceArgs),
    /// Build or verify gadgets.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Run the property suite against the brute-force oracles.
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "quick")]
        level: String,
    },
}

#[derive(Args)]
pub struct ColorArgs {
    #[arg(long)]
    q: usize,
    #[arg(long)]
    graph: PathBuf,
    /// Hub file; a greedy hub is used when omitted.
    #[arg(long)]
    hub: Option<PathBuf>,
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Answer yes iff the optimum deletion cost is at most this.
    #[arg(long)]
    budget: Option<usize>,
    /// Print search-tree leaf counts.
    #[arg(long)]
    stats: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SplitterKind {
    Exhaustive,
    Mc,
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Proper q-coloring.
    Coloring(ColorArgs),
    /// Proper coloring from per-vertex lists.
    ListColoring(ColorArgs),
    /// Fewest vertex deletions for a list coloring.
    Vd(ColorArgs),
    /// Fewest edge deletions for a q-coloring.
    Ed(ColorArgs),
    /// Minimum-cost assignment of a wildcard CSP.
    Wcsp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Decide a set-system question.
    Setsys {
        #[arg(long)]
        input: PathBuf,
    },
    /// Is there a packing of at least `target` vertex-disjoint triangles?
    Triangle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        hub: PathBuf,
        #[arg(long)]
        target: usize,
        /// Hub vertices each splitter color class may hold.
        #[arg(long)]
        capacity: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        splitter: SplitterKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimum dominating set.
    Domset {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        hub: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct ReduceArgs {
    name: String,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Group size for group-sat.
    #[arg(long)]
    p: Option<usize>,
    /// Block size for cover-family and structured-split.
    #[arg(long)]
    block: Option<usize>,
    /// Parameter of a set-system reduction (block or multiplier).
    #[arg(long)]
    param: Option<usize>,
    #[arg(long)]
    d_prime: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Cover each block by an exact minimum cover instead of greedily.
    #[arg(long)]
    exact_block: bool,
}

#[derive(Args)]
pub struct BuildArgs {
    /// One of or2, or2-pow, or, or-weighted, forbid, relation, one-realizer.
    name: String,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    omega: Option<usize>,
    /// Excluded tuple for forbid, 1-based colors separated by commas.
    #[arg(long)]
    tuple: Option<String>,
    #[arg(long)]
    relation: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum GadgetCommand {
    Build(BuildArgs),
    /// Report the cost of every portal state and whether the relation is
    /// realized.
    Verify {
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        omega: Option<u64>,
    },
    /// The triangle equality gadget.
    Trieq {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cmd: Command, out: &mut Report) -> CliResult<Verdict> {
    match cmd {
        Command::Solve(s) => match s {
            SolveCommand::Coloring(a) => solve::coloring(ColoringKind::Plain, &a, out),
            SolveCommand::ListColoring(a) => solve::coloring(ColoringKind::List, &a, out),
            SolveCommand::Vd(a) => solve::coloring(ColoringKind::VertexDeletion, &a, out),
            SolveCommand::Ed(a) => solve::coloring(ColoringKind::EdgeDeletion, &a, out),
            SolveCommand::Wcsp { input, stats } => solve::wcsp(&input, stats, out),
            SolveCommand::Setsys { input } => solve::setsys(&input, out),
            SolveCommand::Triangle {
                graph,
                hub,
                target,
                capacity,
                splitter,
                seed,
            } => solve::triangle(
                solve::TriangleArgs {
                    graph: &graph,
                    hub: &hub,
                    target,
                    capacity,
                    splitter,
                    seed,
                },
                out,
            ),
            SolveCommand::Domset { graph, hub } => solve::domset(&graph, hub.as_deref(), out),
        },
        Command::Reduce(a) => reduce::reduce(&a, out),
        Command::Gadget(g) => match g {
            GadgetCommand::Build(a) => gadget::build(&a, out),
            GadgetCommand::Verify {
                gadget: gf,
                relation,
                omega,
            } => gadget::verify(&gf, &relation, omega, out),
            GadgetCommand::Trieq { r, out: path } => gadget::trieq(r, &path, out),
        },
        Command::Selfcheck { seed, level } => {
            let level: Level = level
                .parse()
                .map_err(|e: hubsolve_core::Error| CliError::Usage(format!("--level: {e}")))?;
            Ok(run_selfcheck(level, seed, out))
        }
    }
}

fn run_selfcheck(level: Level, seed: u64, out: &mut Report) -> Verdict {
    let results = selfcheck(level, seed);
    let passed = results.iter().filter(|r| r.passed).count();
    for r in &results {
        let status = if r.passed { "pass" } else { "fail" };
        out.kv(&format!("check{}.{}", r.id, r.name), status);
        out.kv(&format!("check{}.detail", r.id), &r.detail);
        let budget = r
            .budget
            .map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
        eprintln!(
            "check{} {}: {:.2}s{budget}",
            r.id,
            r.name,
            r.elapsed.as_secs_f64()
        );
    }
    out.kv("passed", format!("{passed}/{}", results.len()));
    let verdict = Verdict::from_bool(passed == results.len());
    out.verdict(verdict);
    verdict
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut out = Report::default();
    let result = run(cli.command, &mut out);
    eprintln!("time={:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(v) => {
            out.print();
            v.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

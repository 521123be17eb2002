use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use rainbow_core::experiment::{run_experiment, ExperimentConfig};
use rainbow_core::io::save_instance_with_comment;
use rainbow_core::solvers::analyze;
use rainbow_core::{
    check_rainbow_matching, load_edge_list, load_instance, solve_with, Algorithm, EdgeColoredGraph, Family,
    GenSpec, SolveError, DEFAULT_BUDGET,
};

/// Rainbow matchings in edge-colored graphs.
#[derive(Parser)]
#[command(name = "rainbow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Seed for generators and orientation tie-breaks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for the exact search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the structural analysis and full trace of `solve` here.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    /// Output file (standard output if omitted).
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Search for a rainbow matching with k edges.
    Solve(SolveArgs),
    /// Check that a list of edges is a rainbow matching of an instance.
    Verify {
        instance: PathBuf,
        matching: PathBuf,
    },
    /// Run many generated instances and report success rates.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    /// Number of colors (random family; default 3k).
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value = "pipeline")]
    alg: Algorithm,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    /// A value `3`, a range `2..3`, or a list `2,4`.
    #[arg(long, default_value = "2..3", value_parser = parse_ks)]
    k: KRange,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Fixed vertex count (default floor(4.25k^2) + 1).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "random", value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Comma-separated algorithms.
    #[arg(long, default_value = "pipeline", value_delimiter = ',')]
    alg: Vec<Algorithm>,
    /// Also write the rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    serde_json::from_value(json!(s)).map_err(|_| format!("unknown family `{s}`"))
}

#[derive(Clone, Debug, PartialEq)]
struct KRange(Vec<usize>);

fn parse_ks(s: &str) -> Result<KRange, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad k `{t}`: {e}"));
    let ks = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if ks.is_empty() {
        return Err(format!("empty k range `{s}`"));
    }
    Ok(KRange(ks))
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 2, error: e.into() }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_instance(path: &Path) -> Result<EdgeColoredGraph> {
    load_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn cmd_gen(g: &Global, a: &GenArgs) -> Result<u8, Failure> {
    let spec = GenSpec { family: a.family, n: a.n, k: a.k, q: a.q.unwrap_or(3 * a.k), p: a.p, seed: g.seed };
    let graph = spec.generate().map_err(|e| anyhow!("invalid generator flags: {e}"))?;
    emit(&g.output, &save_instance_with_comment(&graph, Some(&spec.describe())))?;
    Ok(0)
}

fn cmd_solve(g: &Global, a: &SolveArgs) -> Result<u8, Failure> {
    let graph = read_instance(&a.file)?;
    let outcome = solve_with(a.alg, &graph, a.k, g.budget, g.seed);
    if let Some(path) = &g.trace {
        let analysis = analyze(&graph, a.k, g.seed).map(|x| x.to_json()).unwrap_or_else(|e| json!({ "error": e.to_string() }));
        let result = match &outcome {
            Ok(r) => r.to_json(),
            Err(e) => json!({ "error": e.to_string() }),
        };
        fs::write(path, pretty(&json!({ "analysis": analysis, "result": result })))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match outcome {
        Ok(r) => {
            emit(&g.output, &pretty(&r.to_json()))?;
            Ok(if r.succeeded { 0 } else { 1 })
        }
        Err(SolveError::BudgetExceeded { budget, best }) => {
            let v = json!({ "error": "budget exceeded", "budget": budget, "size": best.len(), "best": best });
            emit(&g.output, &pretty(&v))?;
            Ok(3)
        }
        Err(e) => Err(Failure { code: 1, error: e.into() }),
    }
}

fn cmd_verify(instance: &Path, matching: &Path) -> Result<u8, Failure> {
    let graph = read_instance(instance)?;
    let edges = load_edge_list(&read(matching)?).with_context(|| format!("parsing {}", matching.display()))?;
    match check_rainbow_matching(&graph, &edges) {
        Ok(()) => {
            println!("ok: rainbow matching with {} edges", edges.len());
            Ok(0)
        }
        Err(v) => {
            println!("invalid: {v}");
            Ok(1)
        }
    }
}

fn cmd_experiment(g: &Global, a: &ExperimentArgs) -> Result<u8, Failure> {
    let cfg = ExperimentConfig {
        ks: a.k.0.clone(),
        trials: a.trials,
        n: a.n,
        family: a.family,
        q: a.q,
        p: a.p,
        algorithms: a.alg.clone(),
        seed: g.seed,
        budget: g.budget,
    };
    if let Some(&k) = cfg.ks.iter().find(|&&k| !rainbow_core::structure::above_threshold(cfg.n_for(k), k)) {
        eprintln!("note: n = {} is not above 4.25k^2 for k = {k}", cfg.n_for(k));
    }
    let report = run_experiment(&cfg)?;
    emit(&g.output, &pretty(&serde_json::to_value(&report).expect("json")))?;
    if let Some(path) = &a.csv {
        fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    for s in &report.summary {
        eprintln!("k={} {}: {}/{} succeeded", s.k, s.algorithm, s.successes, s.runs);
    }
    if report.hypothesis_failures > 0 {
        eprintln!("{} pipeline run(s) with n > 4.25k^2 and color degree >= k failed", report.hypothesis_failures);
        return Ok(1);
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(&cli.global, a),
        Command::Solve(a) => cmd_solve(&cli.global, a),
        Command::Verify { instance, matching } => cmd_verify(instance, matching),
        Command::Experiment(a) => {
            if a.trials == 0 {
                return Err(anyhow!("--trials must be at least 1").into());
            }
            cmd_experiment(&cli.global, a)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

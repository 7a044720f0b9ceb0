//! Batch command-line front end: `gen`, `estimate`, `exact`, `select`, and
//! `experiment` subcommands over the library.
//!
//! Node arguments accept the labels of the input file (or the special names
//! from a fixture sidecar); dense internal ids never appear in output. Exit
//! codes: 0 success, 2 usage error, 3 input/parse error, 4 infeasible
//! request. Every failure prints one machine-parseable line
//! `error:<category>: <message>` to standard error first.

use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cascade::{
    exact_probabilities_with_cap, prob_est, CascadeConfig, SeedSet, DEFAULT_EXACT_ARC_CAP,
};
use crate::error::{Error, Result};
use crate::experiments::{run_sweep, write_reports, ExperimentConfig};
use crate::fixtures::{generate, FixtureName, FixtureSpec, Sidecar};
use crate::graph::Graph;
use crate::seeding::{select_seeds, Evaluator, Method};

#[derive(Parser)]
#[command(
    name = "accessgap",
    version,
    about = "Maximin information access in social networks",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark fixture as an edge list plus a JSON sidecar
    Gen(GenArgs),
    /// Estimate access probabilities by Monte Carlo simulation
    Estimate(EstimateArgs),
    /// Compute access probabilities exactly by live-edge enumeration
    Exact(ExactArgs),
    /// Select seeds with a heuristic and write the result as JSON
    Select(SelectArgs),
    /// Run a full experiment sweep from a JSON config
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Fixture name: fig2, greed_is_bad, h_level, h_composite,
    /// star_imbalance, disjoint_imbalance, path, star
    fixture: String,
    /// Fixture parameter as key=value (repeatable), e.g. --param ell=4
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Output edge-list path; the sidecar is written next to it as <PATH>.json
    #[arg(short = 'o', long = "out", value_name = "PATH")]
    out: PathBuf,
}

#[derive(Args)]
struct EstimateArgs {
    /// Input edge-list path (a <PATH>.json sidecar is honored when present)
    #[arg(short = 'g', long = "graph", value_name = "PATH")]
    graph: PathBuf,
    /// Treat the input as directed (implied by a sidecar that says so)
    #[arg(long)]
    directed: bool,
    /// Transmission probability in [0, 1]
    #[arg(long)]
    alpha: f64,
    /// Number of Monte Carlo replications
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    /// Comma-separated seed node labels
    #[arg(long = "seed-nodes", value_name = "LIST")]
    seed_nodes: String,
    /// Master RNG seed
    #[arg(long = "rng", value_name = "SEED", default_value_t = 0)]
    rng: u64,
    /// Worker threads (0 = auto)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output CSV path
    #[arg(short = 'o', long = "out", value_name = "CSV")]
    out: PathBuf,
}

#[derive(Args)]
struct ExactArgs {
    /// Input edge-list path (a <PATH>.json sidecar is honored when present)
    #[arg(short = 'g', long = "graph", value_name = "PATH")]
    graph: PathBuf,
    /// Treat the input as directed (implied by a sidecar that says so)
    #[arg(long)]
    directed: bool,
    /// Transmission probability in [0, 1]
    #[arg(long)]
    alpha: f64,
    /// Comma-separated seed node labels
    #[arg(long = "seed-nodes", value_name = "LIST")]
    seed_nodes: String,
    /// Arc-coin cap for the 2^m enumeration
    #[arg(long, default_value_t = DEFAULT_EXACT_ARC_CAP)]
    cap: usize,
    /// Output CSV path
    #[arg(short = 'o', long = "out", value_name = "CSV")]
    out: PathBuf,
}

#[derive(Args)]
struct SelectArgs {
    /// Input edge-list path (a <PATH>.json sidecar is honored when present)
    #[arg(short = 'g', long = "graph", value_name = "PATH")]
    graph: PathBuf,
    /// Treat the input as directed (implied by a sidecar that says so)
    #[arg(long)]
    directed: bool,
    /// Heuristic: greedy, myopic, naive-myopic, gonzalez, random, reach-greedy
    #[arg(long)]
    method: String,
    /// Number of seeds to add
    #[arg(short = 'k', long = "k", value_name = "K")]
    k: usize,
    /// Transmission probability in [0, 1]
    #[arg(long)]
    alpha: f64,
    /// Monte Carlo replications per estimate (ignored with --exact)
    #[arg(long, default_value_t = 1000)]
    reps: u64,
    /// Master RNG seed
    #[arg(long = "rng", value_name = "SEED", default_value_t = 0)]
    rng: u64,
    /// Comma-separated initial seed labels
    #[arg(long, value_name = "LIST")]
    initial: Option<String>,
    /// Evaluate with the exact live-edge oracle instead of Monte Carlo
    #[arg(long)]
    exact: bool,
    /// Worker threads (0 = auto)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output JSON path
    #[arg(short = 'o', long = "out", value_name = "JSON")]
    out: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment config JSON path
    #[arg(long, value_name = "JSON")]
    config: PathBuf,
    /// Worker threads (0 = auto)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output directory for the report files
    #[arg(short = 'o', long = "out", value_name = "DIR")]
    out: PathBuf,
}

/// Parses arguments and executes; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first = e.to_string();
            let first_line = first.lines().next().unwrap_or("invalid arguments");
            eprintln!("error:usage: {}", first_line.trim_start_matches("error: "));
            eprint!("{e}");
            return 2;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            let category = err.category();
            eprintln!("error:{category}: {err}");
            match category {
                "input" => 3,
                "infeasible" => 4,
                _ => 2,
            }
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Estimate(args) => with_threads(args.threads, || cmd_estimate(args)),
        Command::Exact(args) => cmd_exact(args),
        Command::Select(args) => with_threads(args.threads, || cmd_select(args)),
        Command::Experiment(args) => with_threads(args.threads, || cmd_experiment(args)),
    }
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction cannot fail for positive sizes")
        .install(f)
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.to_path_buf(),
                source,
            })?;
        }
    }
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn sidecar_path(graph_path: &Path) -> PathBuf {
    let mut s = graph_path.as_os_str().to_os_string();
    s.push(".json");
    PathBuf::from(s)
}

/// Loads an edge list, honoring a fixture sidecar for directedness and
/// special node labels.
fn load_graph(path: &Path, directed_flag: bool) -> Result<Graph> {
    let sidecar = read_sidecar(&sidecar_path(path))?;
    let directed = directed_flag || sidecar.as_ref().is_some_and(|s| s.directed);
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut g = Graph::load_edge_list(BufReader::new(file), directed)?;
    if let Some(sc) = sidecar {
        for (name, id) in sc.special {
            if id < g.n() {
                g.set_label(id, name);
            }
        }
    }
    Ok(g)
}

fn read_sidecar(path: &Path) -> Result<Option<Sidecar>> {
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let sc = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Some(sc))
}

fn parse_seed_list(g: &Graph, list: &str) -> Result<SeedSet> {
    let mut ids = Vec::new();
    for token in list.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        ids.push(g.resolve_label(token)?);
    }
    Ok(SeedSet::new(ids))
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let name: FixtureName = args.fixture.parse()?;
    let mut spec = FixtureSpec::new(name);
    for p in &args.params {
        let (key, value) = p.split_once('=').ok_or_else(|| Error::InvalidFixtureParams {
            reason: format!("--param expects key=value, got {p:?}"),
        })?;
        let value: usize = value.parse().map_err(|_| Error::InvalidFixtureParams {
            reason: format!("parameter {key} must be a non-negative integer, got {value:?}"),
        })?;
        spec = spec.with(key.trim(), value);
    }
    let fix = generate(&spec)?;
    write_output(&args.out, &fix.graph.canonical_edge_list())?;
    let sidecar = serde_json::to_string_pretty(&fix.sidecar()).expect("sidecar serializes") + "\n";
    write_output(&sidecar_path(&args.out), &sidecar)
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let g = load_graph(&args.graph, args.directed)?;
    let seeds = parse_seed_list(&g, &args.seed_nodes)?;
    let cfg = CascadeConfig {
        alpha: args.alpha,
        reps: args.reps,
        master_seed: args.rng,
    };
    let probs = prob_est(&g, &seeds, &cfg)?;
    write_output(&args.out, &probs.to_csv(&g))
}

fn cmd_exact(args: ExactArgs) -> Result<()> {
    let g = load_graph(&args.graph, args.directed)?;
    let seeds = parse_seed_list(&g, &args.seed_nodes)?;
    let probs = exact_probabilities_with_cap(&g, &seeds, args.alpha, args.cap)?;
    write_output(&args.out, &probs.to_csv(&g))
}

/// Selection result as written to disk. Wall time is deliberately absent:
/// identical invocations must produce byte-identical files.
#[derive(Serialize)]
struct SelectionOutput {
    schema: u32,
    method: String,
    k: usize,
    alpha: f64,
    exact: bool,
    reps: Option<u64>,
    rng: u64,
    initial: Vec<String>,
    seeds: Vec<String>,
    added: Vec<String>,
    per_round_min: Vec<f64>,
    evaluations: usize,
}

fn cmd_select(args: SelectArgs) -> Result<()> {
    let g = load_graph(&args.graph, args.directed)?;
    let method: Method = args.method.parse()?;
    let initial = match &args.initial {
        Some(list) => parse_seed_list(&g, list)?,
        None => SeedSet::empty(),
    };
    let eval = if args.exact {
        Evaluator::exact(args.alpha)
    } else {
        Evaluator::MonteCarlo(CascadeConfig {
            alpha: args.alpha,
            reps: args.reps,
            master_seed: args.rng,
        })
    };
    let result = select_seeds(method, &g, &initial, args.k, &eval, args.rng)?;
    let label = |v: usize| g.label(v);
    let output = SelectionOutput {
        schema: 1,
        method: method.as_str().to_string(),
        k: args.k,
        alpha: args.alpha,
        exact: args.exact,
        reps: if args.exact { None } else { Some(args.reps) },
        rng: args.rng,
        initial: initial.iter().map(label).collect(),
        seeds: result.seeds.iter().map(label).collect(),
        added: result
            .seeds
            .iter()
            .filter(|&v| !initial.contains(v))
            .map(label)
            .collect(),
        per_round_min: result.per_round_min,
        evaluations: result.evaluations,
    };
    let json = serde_json::to_string_pretty(&output).expect("selection serializes") + "\n";
    write_output(&args.out, &json)
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.config).map_err(|source| Error::Io {
        path: args.config.clone(),
        source,
    })?;
    let cfg: ExperimentConfig = serde_json::from_str(&text).map_err(|source| Error::Json {
        path: args.config.clone(),
        source,
    })?;
    let report = run_sweep(&cfg)?;
    write_reports(&report, &args.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_structure_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn seed_list_resolution() {
        let g = Graph::load_edge_list_str("10 20\n20 30", true).unwrap();
        let seeds = parse_seed_list(&g, "10,30").unwrap();
        assert_eq!(seeds, SeedSet::new([0, 2]));
        assert!(parse_seed_list(&g, "99").is_err());
    }
}

//! Experiment harness: dataset preparation (largest strongly connected
//! component), heuristic sweeps over transmission probabilities and budgets,
//! rank correlations against network position, probability histograms, and
//! per-method timing.
//!
//! Reports are machine readable: `sweep.csv`, `correlations.csv`,
//! `histogram.csv`, `timing.csv`, and a `report.json` manifest. Identical
//! configs produce identical reports at any worker count, except for the
//! measured wall-clock columns (`seconds` in `sweep.csv` and all of
//! `timing.csv`), which are genuinely non-reproducible.

use std::collections::BTreeMap;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cascade::{prob_est, stream_seed, CascadeConfig, ProbVector, SeedSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::seeding::{select_seeds, Evaluator, Method};

/// Bins used for report histograms.
pub const REPORT_BINS: usize = 20;
/// Final seed sets are re-evaluated with this many times the selection
/// replication count, decoupling selection noise from reporting noise.
pub const EVAL_REPS_FACTOR: u64 = 10;

fn default_alphas() -> Vec<f64> {
    vec![0.1, 0.2, 0.3, 0.4, 0.5]
}

fn default_reps() -> u64 {
    1000
}

fn default_repeats() -> usize {
    20
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub graph_path: PathBuf,
    #[serde(default)]
    pub directed: bool,
    pub methods: Vec<Method>,
    #[serde(default = "default_alphas")]
    pub alphas: Vec<f64>,
    pub ks: Vec<usize>,
    #[serde(default = "default_reps")]
    pub reps_per_estimate: u64,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    #[serde(default)]
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidExperimentConfig { reason });
        if self.methods.is_empty() {
            return fail("methods must be nonempty".into());
        }
        if self.alphas.is_empty() || self.ks.is_empty() {
            return fail("alphas and ks must be nonempty".into());
        }
        if self.alphas.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return fail("alphas must lie in [0, 1]".into());
        }
        if self.ks.iter().any(|&k| !(1..=100).contains(&k)) {
            return fail("intervention sizes must lie in [1, 100]".into());
        }
        if self.reps_per_estimate == 0 {
            return fail("reps_per_estimate must be >= 1".into());
        }
        if self.repeats == 0 {
            return fail("repeats must be >= 1".into());
        }
        Ok(())
    }
}

/// Graph restricted to its largest strongly connected component, with the
/// sizes before and after restriction.
pub struct PreparedDataset {
    pub graph: Graph,
    pub original_nodes: usize,
    pub original_edges: usize,
    pub retained_nodes: usize,
    pub retained_edges: usize,
}

/// Loads an edge list and restricts it to the largest strongly connected
/// component (largest connected component when undirected).
pub fn prepare_dataset(path: &Path, directed: bool) -> Result<PreparedDataset> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let full = Graph::load_edge_list(BufReader::new(file), directed)?;
    Ok(prepare_graph(full))
}

pub fn prepare_graph(full: Graph) -> PreparedDataset {
    let (core, _) = full.largest_scc();
    PreparedDataset {
        original_nodes: full.n(),
        original_edges: full.edge_count(),
        retained_nodes: core.n(),
        retained_edges: core.edge_count(),
        graph: core,
    }
}

/// Spearman rank correlation with average ranks for ties. Errors when either
/// vector is constant (the correlation is undefined).
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::BadCorrelationInput);
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::ConstantInput);
    }
    Ok(cov / (vx * vy).sqrt())
}

fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap());
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        // ranks are 1-based; a tied run gets the average of its positions
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &orig in &idx[i..=j] {
            ranks[orig] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlations of the post-intervention probabilities against
/// three proxies for network position. `None` marks an undefined
/// correlation (constant input).
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct PositionCorrelations {
    /// Against the probabilities with the highest-degree vertex as sole seed.
    pub vs_baseline: Option<f64>,
    /// Against total degree.
    pub vs_degree: Option<f64>,
    /// Against hop distance from the graph center.
    pub vs_center_distance: Option<f64>,
}

fn spearman_or_none(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    match spearman(x, y) {
        Ok(rho) => Ok(Some(rho)),
        Err(Error::ConstantInput) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Position axes of a graph: degrees and hop distance from the center.
pub struct PositionAxes {
    pub degrees: Vec<f64>,
    pub center: NodeId,
    pub center_distance: Vec<f64>,
}

impl PositionAxes {
    pub fn compute(g: &Graph) -> Result<PositionAxes> {
        let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
        let center = g.graph_center()?;
        let center_distance: Vec<f64> = g
            .bfs_hop_distances(&[center], true)
            .into_iter()
            .map(|d| d as f64)
            .collect();
        Ok(PositionAxes {
            degrees,
            center,
            center_distance,
        })
    }

    pub fn correlate(
        &self,
        final_probs: &ProbVector,
        baseline_probs: &ProbVector,
    ) -> Result<PositionCorrelations> {
        Ok(PositionCorrelations {
            vs_baseline: spearman_or_none(final_probs.values(), baseline_probs.values())?,
            vs_degree: spearman_or_none(final_probs.values(), &self.degrees)?,
            vs_center_distance: spearman_or_none(final_probs.values(), &self.center_distance)?,
        })
    }
}

/// Correlations of `final_probs` against the baseline probabilities, the
/// degrees, and the hop distance from the center.
pub fn position_correlations(
    g: &Graph,
    final_probs: &ProbVector,
    baseline_probs: &ProbVector,
) -> Result<PositionCorrelations> {
    PositionAxes::compute(g)?.correlate(final_probs, baseline_probs)
}

/// Equal-width histogram over [0, 1]; the last bin is right-inclusive.
pub fn probability_histogram(probs: &[f64], bins: usize) -> Vec<u64> {
    assert!(bins >= 1);
    let mut counts = vec![0u64; bins];
    for &p in probs {
        let bin = ((p * bins as f64) as usize).min(bins - 1);
        counts[bin] += 1;
    }
    counts
}

#[derive(Clone, Debug, Serialize)]
pub struct CellData {
    pub min_prob: f64,
    pub reach: f64,
    pub seconds: f64,
    pub correlations: PositionCorrelations,
    pub histogram: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Done(CellData),
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub method: Method,
    pub alpha: f64,
    pub k: usize,
    pub trial: usize,
    pub outcome: CellOutcome,
}

#[derive(Serialize)]
pub struct DatasetSummary {
    pub original_nodes: usize,
    pub original_edges: usize,
    pub retained_nodes: usize,
    pub retained_edges: usize,
    pub baseline_seed: String,
}

pub struct ExperimentReport {
    pub version: String,
    pub config: ExperimentConfig,
    pub dataset: DatasetSummary,
    pub cells: Vec<SweepCell>,
}

/// Deterministic per-cell seed: the trial index is the innermost stream so
/// repeats are independent replications of the same cell.
fn cell_seed(master: u64, method_idx: usize, alpha_idx: usize, k_idx: usize, trial: usize) -> u64 {
    let mut s = stream_seed(master, method_idx as u64);
    s = stream_seed(s, alpha_idx as u64);
    s = stream_seed(s, k_idx as u64);
    stream_seed(s, trial as u64)
}

const EVAL_STREAM: u64 = 0x5EED_EA1;

pub fn run_sweep(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let prepared = prepare_dataset(&cfg.graph_path, cfg.directed)?;
    run_sweep_on(&prepared, cfg)
}

/// Runs the full sweep on an already-prepared dataset. Cells are independent
/// and run in parallel; the report order is fixed by the config.
pub fn run_sweep_on(
    prepared: &PreparedDataset,
    cfg: &ExperimentConfig,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    let g = &prepared.graph;
    let axes = PositionAxes::compute(g)?;
    let baseline_vertex = highest_degree_vertex(g);
    let eval_reps = cfg.reps_per_estimate.saturating_mul(EVAL_REPS_FACTOR);

    // one baseline probability vector per alpha: highest-degree sole seed
    let baselines: Vec<ProbVector> = cfg
        .alphas
        .iter()
        .enumerate()
        .map(|(ai, &alpha)| {
            prob_est(
                g,
                &SeedSet::new([baseline_vertex]),
                &CascadeConfig {
                    alpha,
                    reps: eval_reps,
                    master_seed: stream_seed(stream_seed(cfg.master_seed, EVAL_STREAM), ai as u64),
                },
            )
        })
        .collect::<Result<_>>()?;

    struct CellJob {
        method_idx: usize,
        alpha_idx: usize,
        k_idx: usize,
        trial: usize,
    }
    let mut jobs = Vec::new();
    for (method_idx, _) in cfg.methods.iter().enumerate() {
        for (alpha_idx, _) in cfg.alphas.iter().enumerate() {
            for (k_idx, _) in cfg.ks.iter().enumerate() {
                for trial in 0..cfg.repeats {
                    jobs.push(CellJob {
                        method_idx,
                        alpha_idx,
                        k_idx,
                        trial,
                    });
                }
            }
        }
    }

    let cells: Vec<SweepCell> = jobs
        .par_iter()
        .map(|job| {
            let method = cfg.methods[job.method_idx];
            let alpha = cfg.alphas[job.alpha_idx];
            let k = cfg.ks[job.k_idx];
            let seed = cell_seed(
                cfg.master_seed,
                job.method_idx,
                job.alpha_idx,
                job.k_idx,
                job.trial,
            );
            let outcome = run_cell(
                g,
                &axes,
                &baselines[job.alpha_idx],
                method,
                alpha,
                k,
                cfg.reps_per_estimate,
                eval_reps,
                seed,
            )?;
            Ok(SweepCell {
                method,
                alpha,
                k,
                trial: job.trial,
                outcome,
            })
        })
        .collect::<Result<_>>()?;

    Ok(ExperimentReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        dataset: DatasetSummary {
            original_nodes: prepared.original_nodes,
            original_edges: prepared.original_edges,
            retained_nodes: prepared.retained_nodes,
            retained_edges: prepared.retained_edges,
            baseline_seed: g.label(baseline_vertex),
        },
        cells,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_cell(
    g: &Graph,
    axes: &PositionAxes,
    baseline: &ProbVector,
    method: Method,
    alpha: f64,
    k: usize,
    reps: u64,
    eval_reps: u64,
    seed: u64,
) -> Result<CellOutcome> {
    let eval = Evaluator::MonteCarlo(CascadeConfig {
        alpha,
        reps,
        master_seed: seed,
    });
    let selection = match select_seeds(method, g, &SeedSet::empty(), k, &eval, seed) {
        Ok(sel) => sel,
        Err(Error::NotEnoughCandidates { k, available }) => {
            return Ok(CellOutcome::Skipped {
                reason: format!("k={k} exceeds {available} available nodes"),
            });
        }
        Err(e) => return Err(e),
    };
    // fresh, higher-precision estimate of the final seed set for reporting
    let final_probs = prob_est(
        g,
        &selection.seeds,
        &CascadeConfig {
            alpha,
            reps: eval_reps,
            master_seed: stream_seed(seed, EVAL_STREAM),
        },
    )?;
    let min_prob = final_probs.min();
    let reach = final_probs.mean();
    debug_assert!(min_prob <= reach + 1e-12);
    Ok(CellOutcome::Done(CellData {
        min_prob,
        reach,
        seconds: selection.wall_time.as_secs_f64(),
        correlations: axes.correlate(&final_probs, baseline)?,
        histogram: probability_histogram(final_probs.values(), REPORT_BINS),
    }))
}

pub(crate) fn highest_degree_vertex(g: &Graph) -> NodeId {
    let deg = g.degrees();
    let mut best = 0;
    for v in 1..g.n() {
        if deg[v] > deg[best] {
            best = v;
        }
    }
    best
}

/// Mean selection wall time per method at fixed `alpha` and `k`.
#[derive(Clone, Debug)]
pub struct TimingRow {
    pub method: Method,
    pub mean_seconds: f64,
    pub runs: usize,
}

/// Times end-to-end seed selection for each method. Runs sequentially in the
/// caller's thread pool; pin the pool to one thread for contention-free
/// comparisons.
pub fn timing_table(
    g: &Graph,
    methods: &[Method],
    alpha: f64,
    k: usize,
    reps: u64,
    repeats: usize,
    master_seed: u64,
) -> Result<Vec<TimingRow>> {
    // warm up allocator and page cache so the first-timed method is not
    // penalized
    let warm = Evaluator::MonteCarlo(CascadeConfig {
        alpha,
        reps: reps.min(50),
        master_seed,
    });
    let _ = select_seeds(Method::NaiveMyopic, g, &SeedSet::empty(), 1, &warm, master_seed)?;

    let mut rows = Vec::new();
    for (mi, &method) in methods.iter().enumerate() {
        let mut total = 0.0;
        for trial in 0..repeats {
            let seed = cell_seed(master_seed, mi, 0, 0, trial);
            let eval = Evaluator::MonteCarlo(CascadeConfig {
                alpha,
                reps,
                master_seed: seed,
            });
            let sel = select_seeds(method, g, &SeedSet::empty(), k, &eval, seed)?;
            total += sel.wall_time.as_secs_f64();
        }
        rows.push(TimingRow {
            method,
            mean_seconds: total / repeats as f64,
            runs: repeats,
        });
    }
    Ok(rows)
}

/// Directed preferential-attachment graph with reciprocal edges, used as a
/// deterministic stand-in for an email-network-scale dataset. New nodes
/// attach `m_out` arcs to endpoints sampled proportionally to degree plus
/// one; each arc is reciprocated with probability `recip`.
pub fn synthetic_social_graph(n: usize, m_out: usize, recip: f64, seed: u64) -> Graph {
    assert!(n > m_out + 1 && m_out >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    // endpoint pool: every node once, plus one entry per arc endpoint
    let mut pool: Vec<NodeId> = Vec::new();
    let core = m_out + 1;
    for v in 0..core {
        let w = (v + 1) % core;
        edges.push((v, w));
        pool.push(v);
        pool.push(v);
        pool.push(w);
    }
    for v in core..n {
        pool.push(v);
        let mut chosen: Vec<NodeId> = Vec::with_capacity(m_out);
        let mut guard = 0;
        while chosen.len() < m_out && guard < 50 * m_out {
            guard += 1;
            let t = pool[rng.gen_range(0..pool.len())];
            if t == v || chosen.contains(&t) {
                continue;
            }
            chosen.push(t);
        }
        while chosen.len() < m_out {
            // degenerate pools fall back to uniform sampling
            let t = rng.gen_range(0..v);
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for t in chosen {
            edges.push((v, t));
            pool.push(v);
            pool.push(t);
            if rng.gen::<f64>() < recip {
                edges.push((t, v));
                pool.push(t);
                pool.push(v);
            }
        }
    }
    Graph::from_edges(n, true, edges).expect("generated ids are in range")
}

/// Core-periphery network: a dense reciprocal core (where reach gains come
/// from double coverage) surrounded by a preferential-attachment shell whose
/// non-reciprocated latecomers form a shallow, poorly-reached periphery.
/// Deterministic in `seed`; used as the desk-scale evaluation dataset.
pub fn core_periphery_graph(n: usize, seed: u64) -> Graph {
    assert!(n >= 200, "core-periphery generator needs n >= 200");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let core = 3 * n / 20;

    // tight reciprocal core plus a ring that keeps it connected; the core
    // must be dense enough that its hop diameter stays below the shell's
    let q_core = (34.0 / core as f64).min(0.75);
    for u in 0..core {
        for v in (u + 1)..core {
            if rng.gen::<f64>() < q_core {
                edges.push((u, v));
                edges.push((v, u));
            }
        }
    }
    for u in 0..core {
        edges.push((u, (u + 1) % core));
        edges.push(((u + 1) % core, u));
    }

    // shell: preferential attachment over everything seen so far; an arc is
    // reciprocated with probability 0.4, so some latecomers end up with no
    // inbound arc and fall out of the largest strongly connected component
    let m_out = 3;
    let mut pool: Vec<NodeId> = Vec::new();
    for &(u, v) in &edges {
        pool.push(u);
        pool.push(v);
    }
    for v in core..n {
        pool.push(v);
        let mut chosen: Vec<NodeId> = Vec::with_capacity(m_out);
        let mut guard = 0;
        while chosen.len() < m_out && guard < 200 {
            guard += 1;
            let t = pool[rng.gen_range(0..pool.len())];
            if t == v || chosen.contains(&t) {
                continue;
            }
            chosen.push(t);
        }
        while chosen.len() < m_out {
            let t = rng.gen_range(0..v);
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for t in chosen {
            edges.push((v, t));
            pool.push(v);
            pool.push(t);
            if rng.gen::<f64>() < 0.4 {
                edges.push((t, v));
                pool.push(t);
                pool.push(v);
            }
        }
    }
    Graph::from_edges(n, true, edges).expect("generated ids are in range")
}

/// Nine significant digits, exponent form; every float in the reports goes
/// through this.
pub fn fmt_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig9).unwrap_or_default()
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| Error::Io { path, source })
}

/// Writes `sweep.csv`, `correlations.csv`, `histogram.csv`, `timing.csv`,
/// and `report.json` into `dir`.
pub fn write_reports(report: &ExperimentReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;

    let mut sweep = String::from("method,alpha,k,trial,min_prob,reach,seconds\n");
    let mut corr =
        String::from("method,alpha,k,trial,rho_baseline,rho_degree,rho_center_distance\n");
    let mut hist = String::from("method,alpha,k,trial,bin,count\n");
    for cell in &report.cells {
        let key = format!(
            "{},{},{},{}",
            cell.method,
            fmt_sig9(cell.alpha),
            cell.k,
            cell.trial
        );
        match &cell.outcome {
            CellOutcome::Done(data) => {
                sweep.push_str(&format!(
                    "{key},{},{},{}\n",
                    fmt_sig9(data.min_prob),
                    fmt_sig9(data.reach),
                    fmt_sig9(data.seconds)
                ));
                corr.push_str(&format!(
                    "{key},{},{},{}\n",
                    fmt_opt(data.correlations.vs_baseline),
                    fmt_opt(data.correlations.vs_degree),
                    fmt_opt(data.correlations.vs_center_distance)
                ));
                for (bin, count) in data.histogram.iter().enumerate() {
                    hist.push_str(&format!("{key},{bin},{count}\n"));
                }
            }
            CellOutcome::Skipped { reason } => {
                sweep.push_str(&format!("{key},skipped,skipped,skipped # {reason}\n"));
            }
        }
    }
    write_file(dir, "sweep.csv", &sweep)?;
    write_file(dir, "correlations.csv", &corr)?;
    write_file(dir, "histogram.csv", &hist)?;

    // per-(method, alpha, k) mean selection seconds; wall clock, so outside
    // the determinism guarantee
    let mut timing = String::from("method,alpha,k,runs,mean_seconds\n");
    for agg in aggregate(report) {
        timing.push_str(&format!(
            "{},{},{},{},{}\n",
            agg.method,
            fmt_sig9(agg.alpha),
            agg.k,
            agg.done,
            fmt_sig9(agg.seconds_mean)
        ));
    }
    write_file(dir, "timing.csv", &timing)?;

    let manifest = manifest_json(report);
    write_file(dir, "report.json", &manifest)
}

struct Aggregate {
    method: Method,
    alpha: f64,
    k: usize,
    done: usize,
    skipped: usize,
    min_mean: f64,
    min_std: f64,
    reach_mean: f64,
    reach_std: f64,
    seconds_mean: f64,
}

fn aggregate(report: &ExperimentReport) -> Vec<Aggregate> {
    let mut groups: BTreeMap<(usize, usize, usize), Vec<&SweepCell>> = BTreeMap::new();
    let cfg = &report.config;
    for cell in &report.cells {
        let mi = cfg.methods.iter().position(|m| *m == cell.method).unwrap();
        let ai = cfg.alphas.iter().position(|a| *a == cell.alpha).unwrap();
        let ki = cfg.ks.iter().position(|k| *k == cell.k).unwrap();
        groups.entry((mi, ai, ki)).or_default().push(cell);
    }
    let stats = |vals: &[f64]| -> (f64, f64) {
        if vals.is_empty() {
            return (0.0, 0.0);
        }
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / vals.len() as f64;
        (mean, var.sqrt())
    };
    groups
        .into_iter()
        .map(|((mi, ai, ki), cells)| {
            let done: Vec<&CellData> = cells
                .iter()
                .filter_map(|c| match &c.outcome {
                    CellOutcome::Done(d) => Some(d),
                    CellOutcome::Skipped { .. } => None,
                })
                .collect();
            let mins: Vec<f64> = done.iter().map(|d| d.min_prob).collect();
            let reaches: Vec<f64> = done.iter().map(|d| d.reach).collect();
            let secs: Vec<f64> = done.iter().map(|d| d.seconds).collect();
            let (min_mean, min_std) = stats(&mins);
            let (reach_mean, reach_std) = stats(&reaches);
            let (seconds_mean, _) = stats(&secs);
            Aggregate {
                method: cfg.methods[mi],
                alpha: cfg.alphas[ai],
                k: cfg.ks[ki],
                done: done.len(),
                skipped: cells.len() - done.len(),
                min_mean,
                min_std,
                reach_mean,
                reach_std,
                seconds_mean,
            }
        })
        .collect()
}

fn manifest_json(report: &ExperimentReport) -> String {
    use serde_json::{json, Value};
    let sig = |x: f64| -> Value {
        // round to nine significant digits for stable, compact output
        json!(fmt_sig9(x).parse::<f64>().unwrap())
    };
    let aggs: Vec<Value> = aggregate(report)
        .into_iter()
        .map(|a| {
            json!({
                "method": a.method.as_str(),
                "alpha": sig(a.alpha),
                "k": a.k,
                "trials_done": a.done,
                "trials_skipped": a.skipped,
                "min_prob_mean": sig(a.min_mean),
                "min_prob_std": sig(a.min_std),
                "reach_mean": sig(a.reach_mean),
                "reach_std": sig(a.reach_std),
            })
        })
        .collect();
    let manifest = json!({
        "schema": 1,
        "version": report.version,
        "config": serde_json::to_value(&report.config).unwrap(),
        "dataset": serde_json::to_value(&report.dataset).unwrap(),
        "aggregates": aggs,
        "notes": {
            "evaluation_reps": report.config.reps_per_estimate.saturating_mul(EVAL_REPS_FACTOR),
            "final_seed_sets_reevaluated": true,
            "wall_clock_excluded_from_determinism": true,
        },
    });
    serde_json::to_string_pretty(&manifest).unwrap() + "\n"
}

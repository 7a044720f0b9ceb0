//! Seed-selection heuristics: full greedy on the maximin objective, the
//! cheaper myopic and naive-myopic probability-chasing variants, the
//! farthest-point (Gonzalez-style) distance heuristic, a uniform-random
//! baseline, and a lazy greedy reach maximizer.
//!
//! Every heuristic accepts an evaluation backend: Monte Carlo estimation for
//! experiments, or the exact live-edge oracle for small-graph regression
//! work. Ties in argmin/argmax always break toward the smallest node id, so
//! selection is deterministic at any worker count.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cascade::{exact_probabilities_with_cap, prob_est, CascadeConfig, ProbVector, SeedSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::welfare::ProbOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Method {
    Greedy,
    Myopic,
    NaiveMyopic,
    Gonzalez,
    Random,
    ReachGreedy,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Greedy,
        Method::Myopic,
        Method::NaiveMyopic,
        Method::Gonzalez,
        Method::Random,
        Method::ReachGreedy,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Myopic => "myopic",
            Method::NaiveMyopic => "naive-myopic",
            Method::Gonzalez => "gonzalez",
            Method::Random => "random",
            Method::ReachGreedy => "reach-greedy",
        }
    }

    /// Whether selection calls the probability estimator at all.
    pub fn estimates(&self) -> bool {
        !matches!(self, Method::Gonzalez | Method::Random)
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidExperimentConfig {
                reason: format!("unknown method {s:?}"),
            })
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TryFrom<String> for Method {
    type Error = Error;
    fn try_from(s: String) -> Result<Method> {
        s.parse()
    }
}

impl From<Method> for String {
    fn from(m: Method) -> String {
        m.as_str().to_string()
    }
}

/// Probability backend used by the heuristics.
#[derive(Clone, Copy, Debug)]
pub enum Evaluator {
    MonteCarlo(CascadeConfig),
    Exact { alpha: f64, max_arcs: usize },
}

impl Evaluator {
    pub fn exact(alpha: f64) -> Evaluator {
        Evaluator::Exact {
            alpha,
            max_arcs: crate::cascade::DEFAULT_EXACT_ARC_CAP,
        }
    }

    pub fn is_monte_carlo(&self) -> bool {
        matches!(self, Evaluator::MonteCarlo(_))
    }

    pub fn probabilities(&self, g: &Graph, seeds: &SeedSet) -> Result<ProbVector> {
        match self {
            Evaluator::MonteCarlo(cfg) => prob_est(g, seeds, cfg),
            Evaluator::Exact { alpha, max_arcs } => {
                exact_probabilities_with_cap(g, seeds, *alpha, *max_arcs)
            }
        }
    }
}

impl ProbOracle for Evaluator {
    fn probabilities(&self, g: &Graph, seeds: &SeedSet) -> Result<ProbVector> {
        Evaluator::probabilities(self, g, seeds)
    }
}

/// Outcome of one selection run. `per_round_min` holds the estimated minimum
/// probability after each round for the estimation-based heuristics; the
/// distance and random heuristics never estimate, so theirs is empty.
#[derive(Clone, Debug)]
pub struct SelectionResult {
    pub method: Method,
    pub seeds: SeedSet,
    pub per_round_min: Vec<f64>,
    pub wall_time: Duration,
    pub evaluations: usize,
}

fn check_budget(g: &Graph, initial: &SeedSet, k: usize) -> Result<Vec<NodeId>> {
    initial.validate_for(g)?;
    let candidates: Vec<NodeId> = (0..g.n()).filter(|&v| !initial.contains(v)).collect();
    if k > candidates.len() {
        return Err(Error::NotEnoughCandidates {
            k,
            available: candidates.len(),
        });
    }
    Ok(candidates)
}

/// Highest-degree vertex, smallest id on ties.
fn highest_degree_vertex(g: &Graph) -> NodeId {
    let deg = g.degrees();
    let mut best = 0;
    for v in 1..g.n() {
        if deg[v] > deg[best] {
            best = v;
        }
    }
    best
}

/// Full greedy on the maximin objective: each round evaluates every
/// candidate addition and keeps the one with the largest resulting minimum
/// probability. With the Monte Carlo backend and no initial seeds, the first
/// seed is the highest-degree vertex and one round fewer runs; the exact
/// backend evaluates every round, including the first.
pub fn greedy_maximin(
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    eval: &Evaluator,
) -> Result<SelectionResult> {
    check_budget(g, initial, k)?;
    let start = Instant::now();
    let mut seeds = initial.clone();
    let mut per_round_min = Vec::with_capacity(k);
    let mut evaluations = 0usize;
    let mut rounds = k;
    if eval.is_monte_carlo() && initial.is_empty() && k >= 1 {
        seeds.insert(highest_degree_vertex(g));
        rounds -= 1;
        per_round_min.push(eval.probabilities(g, &seeds)?.min());
        evaluations += 1;
    }
    for _ in 0..rounds {
        let candidates: Vec<NodeId> = (0..g.n()).filter(|&v| !seeds.contains(v)).collect();
        let mins: Vec<f64> = candidates
            .par_iter()
            .map(|&j| eval.probabilities(g, &seeds.with(j)).map(|p| p.min()))
            .collect::<Result<_>>()?;
        evaluations += candidates.len();
        let mut best = 0usize;
        for i in 1..candidates.len() {
            if mins[i] > mins[best] {
                best = i;
            }
        }
        seeds.insert(candidates[best]);
        per_round_min.push(mins[best]);
    }
    Ok(SelectionResult {
        method: Method::Greedy,
        seeds,
        per_round_min,
        wall_time: start.elapsed(),
        evaluations,
    })
}

/// Myopic: each round estimates probabilities once and seeds the node with
/// the smallest estimate. Zero-probability nodes sort before all positive
/// ones; ties break by id. An empty initial set starts from the
/// highest-degree vertex.
pub fn myopic(g: &Graph, initial: &SeedSet, k: usize, eval: &Evaluator) -> Result<SelectionResult> {
    check_budget(g, initial, k)?;
    let start = Instant::now();
    let mut seeds = initial.clone();
    let mut rounds = k;
    let mut added_before_eval = false;
    if initial.is_empty() && k >= 1 {
        seeds.insert(highest_degree_vertex(g));
        rounds -= 1;
        added_before_eval = true;
    }
    let mut per_round_min = Vec::with_capacity(k);
    let mut evaluations = 0usize;
    for round in 0..rounds {
        let probs = eval.probabilities(g, &seeds)?;
        evaluations += 1;
        if round > 0 || added_before_eval {
            per_round_min.push(probs.min());
        }
        let pick = (0..g.n())
            .filter(|&v| !seeds.contains(v))
            .min_by(|&a, &b| probs.get(a).partial_cmp(&probs.get(b)).unwrap())
            .expect("budget checked");
        seeds.insert(pick);
    }
    if k >= 1 {
        // one extra estimate so the minimum after the final seed is recorded
        let probs = eval.probabilities(g, &seeds)?;
        evaluations += 1;
        per_round_min.push(probs.min());
    }
    Ok(SelectionResult {
        method: Method::Myopic,
        seeds,
        per_round_min,
        wall_time: start.elapsed(),
        evaluations,
    })
}

/// Naive myopic: a single probability estimation, then the `k` (or `k - 1`
/// after the highest-degree first seed) non-seeds with the smallest
/// estimates, ties by id.
pub fn naive_myopic(
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    eval: &Evaluator,
) -> Result<SelectionResult> {
    check_budget(g, initial, k)?;
    let start = Instant::now();
    let mut seeds = initial.clone();
    let mut budget = k;
    if initial.is_empty() && k >= 1 {
        seeds.insert(highest_degree_vertex(g));
        budget -= 1;
    }
    let mut evaluations = 0usize;
    if budget > 0 {
        let probs = eval.probabilities(g, &seeds)?;
        evaluations += 1;
        let mut candidates: Vec<NodeId> = (0..g.n()).filter(|&v| !seeds.contains(v)).collect();
        candidates.sort_by(|&a, &b| {
            probs
                .get(a)
                .partial_cmp(&probs.get(b))
                .unwrap()
                .then(a.cmp(&b))
        });
        for &v in candidates.iter().take(budget) {
            seeds.insert(v);
        }
    }
    let mut per_round_min = Vec::new();
    if k >= 1 {
        let probs = eval.probabilities(g, &seeds)?;
        evaluations += 1;
        per_round_min.push(probs.min());
    }
    Ok(SelectionResult {
        method: Method::NaiveMyopic,
        seeds,
        per_round_min,
        wall_time: start.elapsed(),
        evaluations,
    })
}

/// Farthest-point heuristic: each round seeds the node maximizing the hop
/// distance (undirected view) from the current seeds; unreachable counts as
/// farthest and ties break by id. Performs no probability estimation.
pub fn gonzalez(g: &Graph, initial: &SeedSet, k: usize) -> Result<SelectionResult> {
    check_budget(g, initial, k)?;
    let start = Instant::now();
    let view = g.undirected_view();
    let mut seeds = initial.clone();
    let mut rounds = k;
    if initial.is_empty() && k >= 1 {
        seeds.insert(highest_degree_vertex(g));
        rounds -= 1;
    }
    for _ in 0..rounds {
        let sources: Vec<NodeId> = seeds.iter().collect();
        let dist = view.bfs_hop_distances(&sources, false);
        let mut best: Option<NodeId> = None;
        for v in 0..g.n() {
            if seeds.contains(v) {
                continue;
            }
            if best.map_or(true, |b| dist[v] > dist[b]) {
                best = Some(v);
            }
        }
        seeds.insert(best.expect("budget checked"));
    }
    Ok(SelectionResult {
        method: Method::Gonzalez,
        seeds,
        per_round_min: Vec::new(),
        wall_time: start.elapsed(),
        evaluations: 0,
    })
}

/// Uniform sample of `k` seeds without replacement from the non-seeds.
pub fn random_seeds(g: &Graph, initial: &SeedSet, k: usize, seed: u64) -> Result<SelectionResult> {
    let mut candidates = check_budget(g, initial, k)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds = initial.clone();
    for i in 0..k {
        let j = rng.gen_range(i..candidates.len());
        candidates.swap(i, j);
        seeds.insert(candidates[i]);
    }
    Ok(SelectionResult {
        method: Method::Random,
        seeds,
        per_round_min: Vec::new(),
        wall_time: start.elapsed(),
        evaluations: 0,
    })
}

#[derive(Clone, Copy, Debug)]
struct CelfEntry {
    gain: f64,
    min_at_eval: f64,
    node: NodeId,
    round: usize,
}

impl PartialEq for CelfEntry {
    fn eq(&self, other: &Self) -> bool {
        self.gain == other.gain && self.node == other.node
    }
}
impl Eq for CelfEntry {}
impl PartialOrd for CelfEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for CelfEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap: larger gain first, then smaller id first
        self.gain
            .partial_cmp(&other.gain)
            .expect("gains are finite")
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Greedy reach maximization with lazy (CELF-style) re-evaluation. Under an
/// exact backend this returns the same seed set as plain greedy, because
/// marginal reach gains only shrink as seeds are added; stale heap entries
/// are therefore upper bounds.
pub fn reach_greedy(
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    eval: &Evaluator,
) -> Result<SelectionResult> {
    check_budget(g, initial, k)?;
    let start = Instant::now();
    let mut seeds = initial.clone();
    let mut per_round_min = Vec::with_capacity(k);
    let mut evaluations = 0usize;
    if k == 0 {
        return Ok(SelectionResult {
            method: Method::ReachGreedy,
            seeds,
            per_round_min,
            wall_time: start.elapsed(),
            evaluations,
        });
    }
    let mut current_mean = if seeds.is_empty() {
        0.0
    } else {
        evaluations += 1;
        eval.probabilities(g, &seeds)?.mean()
    };
    let candidates: Vec<NodeId> = (0..g.n()).filter(|&v| !seeds.contains(v)).collect();
    let initial_entries: Vec<CelfEntry> = candidates
        .par_iter()
        .map(|&j| {
            let probs = eval.probabilities(g, &seeds.with(j))?;
            Ok(CelfEntry {
                gain: probs.mean() - current_mean,
                min_at_eval: probs.min(),
                node: j,
                round: 0,
            })
        })
        .collect::<Result<_>>()?;
    evaluations += candidates.len();
    let mut heap: std::collections::BinaryHeap<CelfEntry> = initial_entries.into();

    for round in 1..=k {
        loop {
            let top = heap.pop().expect("budget checked");
            if top.round == round {
                seeds.insert(top.node);
                current_mean += top.gain;
                per_round_min.push(top.min_at_eval);
                break;
            }
            let probs = eval.probabilities(g, &seeds.with(top.node))?;
            evaluations += 1;
            heap.push(CelfEntry {
                gain: probs.mean() - current_mean,
                min_at_eval: probs.min(),
                node: top.node,
                round,
            });
        }
    }
    Ok(SelectionResult {
        method: Method::ReachGreedy,
        seeds,
        per_round_min,
        wall_time: start.elapsed(),
        evaluations,
    })
}

/// Dispatch by method name. `rng_seed` is consumed only by the random
/// baseline.
pub fn select_seeds(
    method: Method,
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    eval: &Evaluator,
    rng_seed: u64,
) -> Result<SelectionResult> {
    match method {
        Method::Greedy => greedy_maximin(g, initial, k, eval),
        Method::Myopic => myopic(g, initial, k, eval),
        Method::NaiveMyopic => naive_myopic(g, initial, k, eval),
        Method::Gonzalez => gonzalez(g, initial, k),
        Method::Random => random_seeds(g, initial, k, rng_seed),
        Method::ReachGreedy => reach_greedy(g, initial, k, eval),
    }
}

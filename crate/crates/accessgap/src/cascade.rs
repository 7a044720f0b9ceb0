//! Independent-cascade simulation and probability estimation.
//!
//! [`prob_est`] is the Monte Carlo estimator: `R` independent cascade
//! replications, per-node hit counts divided by `R`. Replications draw from
//! per-replication RNG streams derived from the master seed, and hit counts
//! merge by integer addition, so results are bit-identical at any worker
//! count.
//!
//! [`exact_probabilities`] enumerates all `2^m` live-edge subgraphs (each arc
//! independently present with probability alpha) and is therefore capped at
//! [`DEFAULT_EXACT_ARC_CAP`] arc coins. Undirected edges carry one coin per
//! direction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Refuse live-edge enumeration beyond this many arc coins unless the caller
/// raises the cap explicitly.
pub const DEFAULT_EXACT_ARC_CAP: usize = 24;

/// Transmission probability, replication count, and master RNG seed for
/// Monte Carlo estimation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CascadeConfig {
    pub alpha: f64,
    pub reps: u64,
    pub master_seed: u64,
}

impl CascadeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidCascadeConfig {
                reason: format!("alpha {} not in [0, 1]", self.alpha),
            });
        }
        if self.reps == 0 {
            return Err(Error::InvalidCascadeConfig {
                reason: "reps must be >= 1".into(),
            });
        }
        Ok(())
    }
}

/// Per-node probability of receiving the information.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector {
    values: Vec<f64>,
}

impl ProbVector {
    pub fn new(values: Vec<f64>) -> ProbVector {
        ProbVector { values }
    }

    pub fn zeros(n: usize) -> ProbVector {
        ProbVector {
            values: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: NodeId) -> f64 {
        self.values[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// CSV with a `node_id,probability` header; node ids are the graph's
    /// original labels.
    pub fn to_csv(&self, g: &Graph) -> String {
        let mut out = String::from("node_id,probability\n");
        for v in 0..self.values.len() {
            out.push_str(&format!("{},{}\n", g.label(v), self.values[v]));
        }
        out
    }
}

/// Sorted set of seed node ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeedSet(Vec<NodeId>);

impl SeedSet {
    pub fn new(nodes: impl IntoIterator<Item = NodeId>) -> SeedSet {
        let mut v: Vec<NodeId> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SeedSet(v)
    }

    pub fn empty() -> SeedSet {
        SeedSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn insert(&mut self, v: NodeId) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    /// New set with one extra node.
    pub fn with(&self, v: NodeId) -> SeedSet {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn union(&self, other: &[NodeId]) -> SeedSet {
        let mut s = self.clone();
        for &v in other {
            s.insert(v);
        }
        s
    }

    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        for v in self.iter() {
            if v >= g.n() {
                return Err(Error::NodeOutOfRange { id: v, n: g.n() });
            }
        }
        Ok(())
    }
}

impl FromIterator<NodeId> for SeedSet {
    fn from_iter<T: IntoIterator<Item = NodeId>>(iter: T) -> SeedSet {
        SeedSet::new(iter)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for the i-th independent stream of a master seed. Parallel schedules
/// never change which stream a replication uses, so they cannot change the
/// result.
pub fn stream_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// One cascade replication: BFS-style live-edge propagation where each newly
/// informed node attempts to inform each still-uninformed out-neighbor once,
/// independently with probability `alpha`. Returns all informed nodes in
/// ascending order (seeds always included).
pub fn simulate_once<R: Rng>(g: &Graph, seeds: &SeedSet, alpha: f64, rng: &mut R) -> Vec<NodeId> {
    let mut scratch = Scratch::new(g.n());
    scratch.run(g, seeds, alpha, rng);
    let mut reached: Vec<NodeId> = (0..g.n()).filter(|&v| scratch.visited(v)).collect();
    reached.sort_unstable();
    reached
}

/// Reusable per-thread simulation state. The stamp trick avoids clearing the
/// visited array between replications.
struct Scratch {
    mark: Vec<u32>,
    stamp: u32,
    queue: Vec<NodeId>,
    hits: Vec<u64>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            mark: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
            hits: vec![0; n],
        }
    }

    fn visited(&self, v: NodeId) -> bool {
        self.mark[v] == self.stamp
    }

    fn run<R: Rng>(&mut self, g: &Graph, seeds: &SeedSet, alpha: f64, rng: &mut R) {
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        for s in seeds.iter() {
            self.mark[s] = stamp;
            self.hits[s] += 1;
            self.queue.push(s);
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &v in g.out(u) {
                if self.mark[v] != stamp && rng.gen::<f64>() < alpha {
                    self.mark[v] = stamp;
                    self.hits[v] += 1;
                    self.queue.push(v);
                }
            }
        }
    }
}

/// Monte Carlo probability estimation: `reps` independent replications,
/// `prob[v] = hits[v] / reps`. Deterministic in `(g, seeds, cfg)` regardless
/// of how replications are scheduled.
pub fn prob_est(g: &Graph, seeds: &SeedSet, cfg: &CascadeConfig) -> Result<ProbVector> {
    cfg.validate()?;
    if seeds.is_empty() {
        return Err(Error::EmptySeeds);
    }
    seeds.validate_for(g)?;
    let n = g.n();
    let hits: Vec<u64> = (0..cfg.reps)
        .into_par_iter()
        .fold(
            || Scratch::new(n),
            |mut scratch, rep| {
                let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.master_seed, rep));
                scratch.run(g, seeds, cfg.alpha, &mut rng);
                scratch
            },
        )
        .map(|scratch| scratch.hits)
        .reduce(
            || vec![0; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let r = cfg.reps as f64;
    Ok(ProbVector::new(hits.into_iter().map(|h| h as f64 / r).collect()))
}

/// Exact per-node probabilities via live-edge enumeration with the default
/// arc-coin cap.
pub fn exact_probabilities(g: &Graph, seeds: &SeedSet, alpha: f64) -> Result<ProbVector> {
    exact_probabilities_with_cap(g, seeds, alpha, DEFAULT_EXACT_ARC_CAP)
}

/// Exact per-node probabilities: enumerates all `2^m` live-arc subsets, where
/// `p_v` sums `alpha^|live| (1-alpha)^(m-|live|)` over subsets in which `v`
/// is reachable from the seeds. Refuses when `m` exceeds `cap`.
pub fn exact_probabilities_with_cap(
    g: &Graph,
    seeds: &SeedSet,
    alpha: f64,
    cap: usize,
) -> Result<ProbVector> {
    if seeds.is_empty() {
        return Err(Error::EmptySeeds);
    }
    seeds.validate_for(g)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidCascadeConfig {
            reason: format!("alpha {alpha} not in [0, 1]"),
        });
    }
    let n = g.n();
    if n > 64 {
        return Err(Error::ExactTooManyNodes { n });
    }
    let arcs: Vec<(NodeId, NodeId)> = g.arcs().collect();
    let m = arcs.len();
    if m > cap {
        return Err(Error::ExactCapExceeded { arcs: m, cap });
    }

    let mut pow_live = vec![1.0f64; m + 1];
    let mut pow_dead = vec![1.0f64; m + 1];
    for i in 1..=m {
        pow_live[i] = pow_live[i - 1] * alpha;
        pow_dead[i] = pow_dead[i - 1] * (1.0 - alpha);
    }
    let seed_mask: u64 = seeds.iter().fold(0u64, |acc, s| acc | (1 << s));

    let total: u64 = 1u64 << m;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);

    // Fixed chunk boundaries and an in-order final reduction keep the float
    // sums identical at any worker count.
    let partials: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut sums = vec![0.0f64; n];
            let mut live_adj = vec![0u64; n];
            for mask in lo..hi {
                for a in live_adj.iter_mut() {
                    *a = 0;
                }
                for (bit, &(u, v)) in arcs.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        live_adj[u] |= 1 << v;
                    }
                }
                let mut reached = seed_mask;
                let mut frontier = seed_mask;
                while frontier != 0 {
                    let mut next = 0u64;
                    let mut f = frontier;
                    while f != 0 {
                        let v = f.trailing_zeros() as usize;
                        f &= f - 1;
                        next |= live_adj[v];
                    }
                    frontier = next & !reached;
                    reached |= next;
                }
                let live = mask.count_ones() as usize;
                let w = pow_live[live] * pow_dead[m - live];
                let mut r = reached;
                while r != 0 {
                    let v = r.trailing_zeros() as usize;
                    r &= r - 1;
                    sums[v] += w;
                }
            }
            sums
        })
        .collect();

    let mut p = vec![0.0f64; n];
    for part in partials {
        for (x, y) in p.iter_mut().zip(part) {
            *x += y;
        }
    }
    Ok(ProbVector::new(p))
}

/// Closed-form level recurrence for the depth-layered diffusion fixture:
/// `p_0 = 1`, `p_{k+1} = 1 - (1 - alpha * p_k)^2`. Independent analytic
/// oracle for the corresponding fixture's sink probability.
pub fn hlevel_recurrence(ell: usize, alpha: f64) -> f64 {
    let mut p = 1.0f64;
    for _ in 0..ell {
        let miss = 1.0 - alpha * p;
        p = 1.0 - miss * miss;
    }
    p
}

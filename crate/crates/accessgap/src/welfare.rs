//! Generalized-mean welfare over access probabilities, access gaps across
//! bipartitions, and brute-force checkers for the rich-get-richer and
//! k-imbalance patterns.
//!
//! The welfare of a vertex set is the phi-mean of its probabilities:
//! `((1/|V|) sum p_v^phi)^(1/phi)`, with the limits `phi = -inf` (minimum),
//! `phi = 0` (geometric mean), and `phi = +inf` (maximum). Large finite
//! `|phi|` is evaluated in log space.

use serde::{Deserialize, Serialize};

use crate::cascade::{ProbVector, SeedSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Largest graph accepted by [`rich_get_richer_witness`] (bipartition search
/// is exponential in n).
pub const RICH_WITNESS_MAX_NODES: usize = 12;
/// Largest graph accepted by [`k_imbalance_witness_check`].
pub const IMBALANCE_MAX_NODES: usize = 14;
/// Candidate-set budget for brute-force seed searches.
pub const BRUTE_FORCE_MAX_CANDIDATES: u64 = 1_000_000;

/// Selects a welfare function: the phi parameter of the generalized mean.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum WelfareSpec {
    NegInf,
    Finite(f64),
    PosInf,
}

impl WelfareSpec {
    /// Reach: the arithmetic mean (phi = 1).
    pub const REACH: WelfareSpec = WelfareSpec::Finite(1.0);
    /// Maximin access (phi = -inf).
    pub const MAXIMIN: WelfareSpec = WelfareSpec::NegInf;
}

impl std::str::FromStr for WelfareSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<WelfareSpec> {
        match s {
            "-inf" => Ok(WelfareSpec::NegInf),
            "+inf" => Ok(WelfareSpec::PosInf),
            _ => {
                let phi: f64 = s.parse().map_err(|_| Error::InvalidFixtureParams {
                    reason: format!("welfare spec must be -inf, +inf, or a decimal, got {s:?}"),
                })?;
                if !phi.is_finite() {
                    return Err(Error::InvalidFixtureParams {
                        reason: format!("welfare spec must be finite, got {s:?}"),
                    });
                }
                Ok(WelfareSpec::Finite(phi))
            }
        }
    }
}

impl std::fmt::Display for WelfareSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WelfareSpec::NegInf => write!(f, "-inf"),
            WelfareSpec::PosInf => write!(f, "+inf"),
            WelfareSpec::Finite(phi) => write!(f, "{phi}"),
        }
    }
}

/// Non-trivial ordered split of the vertices into `v` and `v_prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    v: Vec<NodeId>,
    v_prime: Vec<NodeId>,
}

impl Bipartition {
    pub fn new(
        v: impl IntoIterator<Item = NodeId>,
        v_prime: impl IntoIterator<Item = NodeId>,
        n: usize,
    ) -> Result<Bipartition> {
        let mut v: Vec<NodeId> = v.into_iter().collect();
        let mut v_prime: Vec<NodeId> = v_prime.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        v_prime.sort_unstable();
        v_prime.dedup();
        if v.is_empty() || v_prime.is_empty() {
            return Err(Error::InvalidBipartition {
                reason: "both parts must be nonempty".into(),
            });
        }
        if v.len() + v_prime.len() != n {
            return Err(Error::InvalidBipartition {
                reason: format!(
                    "parts cover {} of {} nodes",
                    v.len() + v_prime.len(),
                    n
                ),
            });
        }
        let mut merged: Vec<NodeId> = v.iter().chain(v_prime.iter()).copied().collect();
        merged.sort_unstable();
        if merged != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidBipartition {
                reason: "parts must be disjoint and cover every node".into(),
            });
        }
        Ok(Bipartition { n, v, v_prime })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part_v(&self) -> &[NodeId] {
        &self.v
    }

    pub fn part_v_prime(&self) -> &[NodeId] {
        &self.v_prime
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition {
            n: self.n,
            v: self.v_prime.clone(),
            v_prime: self.v.clone(),
        }
    }
}

/// Phi-mean welfare of `subset` under the given probabilities.
pub fn welfare(probs: &ProbVector, subset: &[NodeId], spec: WelfareSpec) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut vals = Vec::with_capacity(subset.len());
    for &v in subset {
        if v >= probs.len() {
            return Err(Error::NodeOutOfRange {
                id: v,
                n: probs.len(),
            });
        }
        vals.push(probs.get(v));
    }
    Ok(phi_mean(&vals, spec))
}

fn phi_mean(vals: &[f64], spec: WelfareSpec) -> f64 {
    match spec {
        WelfareSpec::NegInf => vals.iter().copied().fold(f64::INFINITY, f64::min),
        WelfareSpec::PosInf => vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        WelfareSpec::Finite(phi) if phi == 1.0 => {
            vals.iter().sum::<f64>() / vals.len() as f64
        }
        WelfareSpec::Finite(phi) if phi == 0.0 => {
            if vals.iter().any(|&p| p <= 0.0) {
                return 0.0;
            }
            (vals.iter().map(|p| p.ln()).sum::<f64>() / vals.len() as f64).exp()
        }
        WelfareSpec::Finite(phi) => {
            // a zero probability forces the mean to zero for negative phi
            if phi < 0.0 && vals.iter().any(|&p| p <= 0.0) {
                return 0.0;
            }
            let terms: Vec<f64> = vals.iter().map(|&p| phi * p.ln()).collect();
            let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if m == f64::NEG_INFINITY {
                return 0.0;
            }
            let s: f64 = terms.iter().map(|&t| (t - m).exp()).sum();
            ((m + s.ln() - (vals.len() as f64).ln()) / phi).exp()
        }
    }
}

/// Access gap `mu(S, V) - mu(S, V')` of a bipartition.
pub fn access_gap(probs: &ProbVector, bp: &Bipartition, spec: WelfareSpec) -> Result<f64> {
    if bp.n() != probs.len() {
        return Err(Error::InvalidBipartition {
            reason: format!(
                "bipartition over {} nodes applied to {} probabilities",
                bp.n(),
                probs.len()
            ),
        });
    }
    Ok(welfare(probs, bp.part_v(), spec)? - welfare(probs, bp.part_v_prime(), spec)?)
}

/// Source of access probabilities for brute-force searches: either the exact
/// live-edge oracle, Monte Carlo estimation, or a memoizing wrapper.
pub trait ProbOracle: Sync {
    fn probabilities(&self, g: &Graph, seeds: &SeedSet) -> Result<ProbVector>;
}

/// Exact live-edge oracle with a configurable arc cap.
pub struct ExactOracle {
    pub alpha: f64,
    pub max_arcs: usize,
}

impl ExactOracle {
    pub fn new(alpha: f64) -> ExactOracle {
        ExactOracle {
            alpha,
            max_arcs: crate::cascade::DEFAULT_EXACT_ARC_CAP,
        }
    }
}

impl ProbOracle for ExactOracle {
    fn probabilities(&self, g: &Graph, seeds: &SeedSet) -> Result<ProbVector> {
        crate::cascade::exact_probabilities_with_cap(g, seeds, self.alpha, self.max_arcs)
    }
}

/// Memoizes an inner oracle by seed set. Repeated witness checks over many
/// bipartitions of the same graph hit the same seed sets over and over.
pub struct CachedOracle<O: ProbOracle> {
    inner: O,
    cache: std::sync::Mutex<std::collections::HashMap<SeedSet, ProbVector>>,
}

impl<O: ProbOracle> CachedOracle<O> {
    pub fn new(inner: O) -> CachedOracle<O> {
        CachedOracle {
            inner,
            cache: std::sync::Mutex::new(std::collections::HashMap::new()),
        }
    }
}

impl<O: ProbOracle> ProbOracle for CachedOracle<O> {
    fn probabilities(&self, g: &Graph, seeds: &SeedSet) -> Result<ProbVector> {
        if let Some(hit) = self.cache.lock().unwrap().get(seeds) {
            return Ok(hit.clone());
        }
        let probs = self.inner.probabilities(g, seeds)?;
        self.cache
            .lock()
            .unwrap()
            .insert(seeds.clone(), probs.clone());
        Ok(probs)
    }
}

fn probs_or_zero(oracle: &dyn ProbOracle, g: &Graph, seeds: &SeedSet) -> Result<ProbVector> {
    if seeds.is_empty() {
        Ok(ProbVector::zeros(g.n()))
    } else {
        oracle.probabilities(g, seeds)
    }
}

fn addition_budget(candidates: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for i in 0..=k.min(candidates) {
        total = total.saturating_add(binom);
        if total > BRUTE_FORCE_MAX_CANDIDATES {
            return total;
        }
        binom = binom
            .saturating_mul((candidates - i) as u64)
            .checked_div((i + 1) as u64)
            .unwrap_or(u64::MAX);
    }
    total
}

/// Visits every subset of `candidates` with at most `k` elements in
/// dictionary order over sorted id lists, so the first maximizer kept under
/// a strict comparison is the lexicographically smallest one.
fn for_each_addition<F>(candidates: &[NodeId], k: usize, f: &mut F) -> Result<()>
where
    F: FnMut(&[NodeId]) -> Result<()>,
{
    fn visit<F>(
        candidates: &[NodeId],
        k: usize,
        start: usize,
        prefix: &mut Vec<NodeId>,
        f: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&[NodeId]) -> Result<()>,
    {
        f(prefix)?;
        if prefix.len() < k {
            for i in start..candidates.len() {
                prefix.push(candidates[i]);
                visit(candidates, k, i + 1, prefix, f)?;
                prefix.pop();
            }
        }
        Ok(())
    }
    let mut prefix = Vec::with_capacity(k);
    visit(candidates, k, 0, &mut prefix, f)
}

/// Exhaustive argmax of `mu(., target)` over all additions of at most `k`
/// seeds to `initial`; ties broken toward the lexicographically smallest
/// addition. `target = None` means all nodes.
pub fn brute_force_optimal_seeds(
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    spec: WelfareSpec,
    oracle: &dyn ProbOracle,
    target: Option<&[NodeId]>,
) -> Result<SeedSet> {
    Ok(brute_force_with_probs(g, initial, k, spec, oracle, target)?.0)
}

fn brute_force_with_probs(
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    spec: WelfareSpec,
    oracle: &dyn ProbOracle,
    target: Option<&[NodeId]>,
) -> Result<(SeedSet, ProbVector, f64)> {
    initial.validate_for(g)?;
    let candidates: Vec<NodeId> = (0..g.n()).filter(|&v| !initial.contains(v)).collect();
    let budget = addition_budget(candidates.len(), k);
    if budget > BRUTE_FORCE_MAX_CANDIDATES {
        return Err(Error::Infeasible {
            reason: format!(
                "{budget} candidate seed sets exceed the budget of {BRUTE_FORCE_MAX_CANDIDATES}"
            ),
        });
    }
    let all: Vec<NodeId>;
    let target: &[NodeId] = match target {
        Some(t) => t,
        None => {
            all = (0..g.n()).collect();
            &all
        }
    };
    let mut best: Option<(f64, SeedSet, ProbVector)> = None;
    for_each_addition(&candidates, k, &mut |addition| {
        let seeds = initial.union(addition);
        let probs = probs_or_zero(oracle, g, &seeds)?;
        let mu = welfare(&probs, target, spec)?;
        if best.as_ref().map_or(true, |(b, _, _)| mu > *b) {
            best = Some((mu, seeds, probs));
        }
        Ok(())
    })?;
    let (mu, seeds, probs) = best.expect("at least the empty addition is visited");
    Ok((seeds, probs, mu))
}

/// A bipartition on which the optimal intervention strictly widens an
/// already-positive access gap.
#[derive(Clone, Debug)]
pub struct RichGetRicherWitness {
    pub bipartition: Bipartition,
    /// S*: the welfare-optimal seed set found by exhaustive search.
    pub optimal_seeds: SeedSet,
    pub gap_initial: f64,
    pub gap_optimal: f64,
}

/// Searches all bipartitions for a rich-get-richer witness under the
/// budget-`k` optimal intervention. Returns the first witness in bitmask
/// order, or `None`.
pub fn rich_get_richer_witness(
    g: &Graph,
    initial: &SeedSet,
    k: usize,
    spec: WelfareSpec,
    oracle: &dyn ProbOracle,
) -> Result<Option<RichGetRicherWitness>> {
    let n = g.n();
    if n > RICH_WITNESS_MAX_NODES {
        return Err(Error::Infeasible {
            reason: format!("{n} nodes exceed the witness-search cap of {RICH_WITNESS_MAX_NODES}"),
        });
    }
    let (s_star, probs_star, _) = brute_force_with_probs(g, initial, k, spec, oracle, None)?;
    let probs_initial = probs_or_zero(oracle, g, initial)?;
    for mask in 1u32..((1u32 << n) - 1) {
        let v: Vec<NodeId> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let v_prime: Vec<NodeId> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        let gap_initial = welfare(&probs_initial, &v_prime, spec)?
            - welfare(&probs_initial, &v, spec)?;
        if gap_initial <= 0.0 {
            continue;
        }
        let gap_optimal =
            welfare(&probs_star, &v_prime, spec)? - welfare(&probs_star, &v, spec)?;
        if gap_optimal > gap_initial {
            let bipartition = Bipartition::new(v, v_prime, n)?;
            return Ok(Some(RichGetRicherWitness {
                bipartition,
                optimal_seeds: s_star,
                gap_initial,
                gap_optimal,
            }));
        }
    }
    Ok(None)
}

/// Result of checking one bipartition for the k-imbalance pattern
/// `mu(S*,V) <= mu(S,V) < mu(S_V,V) <= mu(S,V') < mu(S*,V')`.
#[derive(Clone, Debug)]
pub struct ImbalanceCheck {
    /// All four conditions hold.
    pub holds: bool,
    /// Conditions in definition order: access of V can improve; even its best
    /// stays below V'. starting access; access of V' improves under S*; access
    /// of V does not improve under S*.
    pub conditions: [bool; 4],
    pub mu_initial_v: f64,
    pub mu_initial_v_prime: f64,
    pub mu_best_for_v: f64,
    pub mu_optimal_v: f64,
    pub mu_optimal_v_prime: f64,
    /// S*: welfare-optimal addition for all nodes.
    pub optimal_seeds: SeedSet,
    /// S_V: welfare-optimal addition for V alone.
    pub best_for_v_seeds: SeedSet,
}

/// Checks whether `(g, initial, bp)` witnesses k-imbalance for the given
/// welfare function, computing both `S*` and `S_V` by exhaustive search.
pub fn k_imbalance_witness_check(
    g: &Graph,
    initial: &SeedSet,
    bp: &Bipartition,
    k: usize,
    spec: WelfareSpec,
    oracle: &dyn ProbOracle,
) -> Result<ImbalanceCheck> {
    let n = g.n();
    if n > IMBALANCE_MAX_NODES {
        return Err(Error::Infeasible {
            reason: format!("{n} nodes exceed the imbalance-check cap of {IMBALANCE_MAX_NODES}"),
        });
    }
    if bp.n() != n {
        return Err(Error::InvalidBipartition {
            reason: format!("bipartition over {} nodes applied to {n}-node graph", bp.n()),
        });
    }
    let probs_initial = probs_or_zero(oracle, g, initial)?;
    let (s_star, probs_star, _) = brute_force_with_probs(g, initial, k, spec, oracle, None)?;
    let (s_v, probs_sv, _) =
        brute_force_with_probs(g, initial, k, spec, oracle, Some(bp.part_v()))?;

    let mu_initial_v = welfare(&probs_initial, bp.part_v(), spec)?;
    let mu_initial_v_prime = welfare(&probs_initial, bp.part_v_prime(), spec)?;
    let mu_best_for_v = welfare(&probs_sv, bp.part_v(), spec)?;
    let mu_optimal_v = welfare(&probs_star, bp.part_v(), spec)?;
    let mu_optimal_v_prime = welfare(&probs_star, bp.part_v_prime(), spec)?;

    let conditions = [
        mu_initial_v < mu_best_for_v,
        mu_best_for_v <= mu_initial_v_prime,
        mu_optimal_v_prime > mu_initial_v_prime,
        mu_optimal_v <= mu_initial_v,
    ];
    Ok(ImbalanceCheck {
        holds: conditions.iter().all(|&c| c),
        conditions,
        mu_initial_v,
        mu_initial_v_prime,
        mu_best_for_v,
        mu_optimal_v,
        mu_optimal_v_prime,
        optimal_seeds: s_star,
        best_for_v_seeds: s_v,
    })
}

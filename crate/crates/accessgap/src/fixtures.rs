//! Deterministic generators for the small benchmark graphs used throughout
//! the test suite: the four-node rich-get-richer chain, the cycle graph on
//! which probability-chasing heuristics fail, the layered diffusion graphs,
//! the star/disjoint imbalance witnesses, and plain paths and stars.
//!
//! Every fixture numbers its nodes so that the canonical edge-list
//! serialization round-trips bit-exactly, and labels its special vertices
//! (`s`, `t`, `v1`, ...) in `original_ids`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cascade::SeedSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureName {
    Fig2,
    GreedIsBad,
    HLevel,
    HComposite,
    StarImbalance,
    DisjointImbalance,
    Path,
    Star,
}

impl FixtureName {
    pub const ALL: [FixtureName; 8] = [
        FixtureName::Fig2,
        FixtureName::GreedIsBad,
        FixtureName::HLevel,
        FixtureName::HComposite,
        FixtureName::StarImbalance,
        FixtureName::DisjointImbalance,
        FixtureName::Path,
        FixtureName::Star,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::Fig2 => "fig2",
            FixtureName::GreedIsBad => "greed_is_bad",
            FixtureName::HLevel => "h_level",
            FixtureName::HComposite => "h_composite",
            FixtureName::StarImbalance => "star_imbalance",
            FixtureName::DisjointImbalance => "disjoint_imbalance",
            FixtureName::Path => "path",
            FixtureName::Star => "star",
        }
    }
}

impl std::str::FromStr for FixtureName {
    type Err = Error;
    fn from_str(s: &str) -> Result<FixtureName> {
        FixtureName::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidFixtureParams {
                reason: format!("unknown fixture {s:?}"),
            })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub name: FixtureName,
    pub params: BTreeMap<String, usize>,
}

impl FixtureSpec {
    pub fn new(name: FixtureName) -> FixtureSpec {
        FixtureSpec {
            name,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: usize) -> FixtureSpec {
        self.params.insert(key.to_string(), value);
        self
    }

    fn param(&self, key: &str) -> Result<usize> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidFixtureParams {
                reason: format!("{} requires parameter {key}", self.name.as_str()),
            })
    }
}

/// A generated fixture: the graph, its canonical initial seed set, and the
/// special vertices by label.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: FixtureName,
    pub params: BTreeMap<String, usize>,
    pub graph: Graph,
    pub seeds: SeedSet,
    pub special: BTreeMap<String, NodeId>,
}

/// Sidecar metadata emitted next to a fixture's edge list.
#[derive(Serialize, Deserialize)]
pub struct Sidecar {
    pub schema: u32,
    pub fixture: String,
    pub params: BTreeMap<String, usize>,
    pub n: usize,
    pub directed: bool,
    pub seeds: Vec<NodeId>,
    pub special: BTreeMap<String, NodeId>,
}

impl Fixture {
    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            schema: 1,
            fixture: self.name.as_str().to_string(),
            params: self.params.clone(),
            n: self.graph.n(),
            directed: self.graph.directed(),
            seeds: self.seeds.iter().collect(),
            special: self.special.clone(),
        }
    }
}

pub fn generate(spec: &FixtureSpec) -> Result<Fixture> {
    let mut fix = match spec.name {
        FixtureName::Fig2 => fig2()?,
        FixtureName::GreedIsBad => greed_is_bad(spec.param("ell")?)?,
        FixtureName::HLevel => h_level(spec.param("ell")?)?,
        FixtureName::HComposite => h_composite(spec.param("ell")?)?,
        FixtureName::StarImbalance => star_imbalance(spec.param("n")?)?,
        FixtureName::DisjointImbalance => disjoint_imbalance(spec.param("n")?)?,
        FixtureName::Path => path(spec.param("n")?)?,
        FixtureName::Star => star(spec.param("n")?)?,
    };
    fix.params = spec.params.clone();
    let mut labels: Vec<String> = (0..fix.graph.n()).map(|v| v.to_string()).collect();
    for (name, &v) in &fix.special {
        labels[v] = name.clone();
    }
    fix.graph.set_labels(labels);
    Ok(fix)
}

fn bare(name: FixtureName, graph: Graph, seeds: SeedSet) -> Fixture {
    Fixture {
        name,
        params: BTreeMap::new(),
        graph,
        seeds,
        special: BTreeMap::new(),
    }
}

/// Four-node chain `v1 -> v2 -> {v3, v4}` with seed `{v1}`. The canonical
/// rich-get-richer example: probabilities are `(1, a, a^2, a^2)`.
fn fig2() -> Result<Fixture> {
    let g = Graph::from_edges(4, true, [(0, 1), (1, 2), (1, 3)])?;
    let mut fix = bare(FixtureName::Fig2, g, SeedSet::new([0]));
    fix.special = [("v1", 0), ("v2", 1), ("v3", 2), ("v4", 3)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    Ok(fix)
}

/// Directed path `s = c0 -> c1 -> ... -> c_ell = t` plus arcs `t -> c_i` for
/// every path vertex and `t -> v1`, `t -> v2`; seed `{s}`.
///
/// With seed `{s}` alone, `p(v1) = p(v2) = alpha^(ell+1)` exactly, while
/// seeding `t` lifts the minimum to at least `alpha`. Probability-chasing
/// seed selection therefore picks `v1`/`v2` and loses by a factor
/// exponential in the graph size.
fn greed_is_bad(ell: usize) -> Result<Fixture> {
    if ell < 1 {
        return Err(Error::InvalidFixtureParams {
            reason: "greed_is_bad requires ell >= 1".into(),
        });
    }
    let t = ell;
    let mut edges: Vec<(NodeId, NodeId)> = (0..ell).map(|i| (i, i + 1)).collect();
    edges.extend((0..ell).map(|i| (t, i)));
    edges.push((t, ell + 1));
    edges.push((t, ell + 2));
    let g = Graph::from_edges(ell + 3, true, edges)?;
    let mut fix = bare(FixtureName::GreedIsBad, g, SeedSet::new([0]));
    fix.special = [
        ("s".to_string(), 0),
        ("t".to_string(), t),
        ("v1".to_string(), ell + 1),
        ("v2".to_string(), ell + 2),
    ]
    .into_iter()
    .collect();
    Ok(fix)
}

/// Depth-`ell` layered diffusion graph whose sink probability follows the
/// level recurrence `p_0 = 1`, `p_{k+1} = 1 - (1 - alpha p_k)^2` exactly.
///
/// The seeded base is the apex `s` plus a pair `m1, m2`; every first-level
/// node draws two coins from the pair, and deeper levels form a binary
/// in-tree so that the two inputs of every node are informed independently.
/// Widths halve toward the sink: level `r` has `2^(ell-r)` nodes, level
/// `ell` is `t`.
fn h_level(ell: usize) -> Result<Fixture> {
    if ell < 1 || ell > 24 {
        return Err(Error::InvalidFixtureParams {
            reason: "h_level requires 1 <= ell <= 24".into(),
        });
    }
    let mut edges: Vec<(NodeId, NodeId)> = vec![(0, 1), (0, 2)];
    // level 1 nodes all share the seeded pair {1, 2}
    let width1 = 1usize << (ell - 1);
    let mut level: Vec<NodeId> = (3..3 + width1).collect();
    for &x in &level {
        edges.push((1, x));
        edges.push((2, x));
    }
    let mut next_id = 3 + width1;
    while level.len() > 1 {
        let mut next_level = Vec::with_capacity(level.len() / 2);
        for pair in level.chunks(2) {
            let y = next_id;
            next_id += 1;
            edges.push((pair[0], y));
            edges.push((pair[1], y));
            next_level.push(y);
        }
        level = next_level;
    }
    let t = level[0];
    let g = Graph::from_edges(next_id.max(t + 1), true, edges)?;
    let mut fix = bare(FixtureName::HLevel, g, SeedSet::new([0, 1, 2]));
    fix.special = [
        ("s".to_string(), 0),
        ("m1".to_string(), 1),
        ("m2".to_string(), 2),
        ("t".to_string(), t),
    ]
    .into_iter()
    .collect();
    Ok(fix)
}

/// Undirected path of length `ell/2` from `v` to `s`, where `s` is the
/// in-degree-0 apex of a 2-wide layered ladder of depth `ell/2` ending in
/// `t`. The vertex minimizing the maximum distance is `s`, yet an interior
/// path vertex `x` is the strictly better single seed.
fn h_composite(ell: usize) -> Result<Fixture> {
    if ell < 4 || ell % 2 != 0 {
        return Err(Error::InvalidFixtureParams {
            reason: "h_composite requires even ell >= 4".into(),
        });
    }
    let half = ell / 2;
    let s = half;
    // undirected path v = 0 .. s; stored as a directed graph with both arcs
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for i in 0..half {
        edges.push((i, i + 1));
        edges.push((i + 1, i));
    }
    // ladder: levels 1..half-1 are two wide, level half is t
    let mut prev = vec![s];
    let mut next_id = s + 1;
    for lvl in 1..=half {
        let width = if lvl == half { 1 } else { 2 };
        let cur: Vec<NodeId> = (next_id..next_id + width).collect();
        next_id += width;
        for &a in &prev {
            for &b in &cur {
                edges.push((a, b));
            }
        }
        prev = cur;
    }
    let t = prev[0];
    let g = Graph::from_edges(next_id, true, edges)?;
    let mut fix = bare(FixtureName::HComposite, g, SeedSet::empty());
    fix.special = [
        ("v".to_string(), 0),
        ("x".to_string(), half - 1),
        ("s".to_string(), s),
        ("t".to_string(), t),
    ]
    .into_iter()
    .collect();
    Ok(fix)
}

/// Star on `2n` nodes with the center plus `n/2 - 1` leaves seeded. The
/// first `n` ids (seeds plus `n/2` more leaves) form the advantaged half of
/// the canonical split; the remaining `n` leaves are the disadvantaged half.
fn star_imbalance(n: usize) -> Result<Fixture> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidFixtureParams {
            reason: "star_imbalance requires even n >= 4".into(),
        });
    }
    let total = 2 * n;
    let g = Graph::from_edges(total, false, (1..total).map(|l| (0, l)))?;
    let seeds = SeedSet::new(0..n / 2);
    let mut fix = bare(FixtureName::StarImbalance, g, seeds);
    fix.special = [("center".to_string(), 0)].into_iter().collect();
    Ok(fix)
}

/// `n` isolated vertices with `n/4` seeds among the first `n/2` ids (the
/// advantaged half of the canonical split).
fn disjoint_imbalance(n: usize) -> Result<Fixture> {
    if n < 4 || n % 4 != 0 {
        return Err(Error::InvalidFixtureParams {
            reason: "disjoint_imbalance requires n divisible by 4".into(),
        });
    }
    let g = Graph::from_edges(n, false, [])?;
    let seeds = SeedSet::new(0..n / 4);
    Ok(bare(FixtureName::DisjointImbalance, g, seeds))
}

/// Undirected path on `n` nodes, no seeds.
fn path(n: usize) -> Result<Fixture> {
    if n < 1 {
        return Err(Error::InvalidFixtureParams {
            reason: "path requires n >= 1".into(),
        });
    }
    let g = Graph::from_edges(n, false, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))?;
    Ok(bare(FixtureName::Path, g, SeedSet::empty()))
}

/// Undirected star on `n` nodes with center 0, no seeds.
fn star(n: usize) -> Result<Fixture> {
    if n < 1 {
        return Err(Error::InvalidFixtureParams {
            reason: "star requires n >= 1".into(),
        });
    }
    let g = Graph::from_edges(n, false, (1..n).map(|l| (0, l)))?;
    let mut fix = bare(FixtureName::Star, g, SeedSet::empty());
    fix.special = [("center".to_string(), 0)].into_iter().collect();
    Ok(fix)
}

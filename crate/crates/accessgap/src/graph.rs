//! Directed/undirected graph representation with edge-list ingestion,
//! strongly connected components, hop distances, degrees, and centers.
//!
//! Node ids are dense (`0..n`) and stable for a fixed input file. The
//! original labels from the source file (or fixture generator) are kept in
//! [`Graph::label`] so user-facing output never exposes internal ids.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Dense node id in `0..n`.
pub type NodeId = usize;

/// Sentinel hop distance for unreachable nodes.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    directed: bool,
    out_adj: Vec<Vec<NodeId>>,
    original_ids: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Self-loops are dropped and
    /// duplicate edges collapse; for undirected graphs each edge is stored in
    /// both directions.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph {
            n,
            directed,
            out_adj: vec![Vec::new(); n],
            original_ids: None,
        };
        for (u, v) in edges {
            if u >= n {
                return Err(Error::NodeOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(Error::NodeOutOfRange { id: v, n });
            }
            if u == v {
                continue;
            }
            g.out_adj[u].push(v);
            if !directed {
                g.out_adj[v].push(u);
            }
        }
        for adj in &mut g.out_adj {
            adj.sort_unstable();
            adj.dedup();
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn out(&self, v: NodeId) -> &[NodeId] {
        &self.out_adj[v]
    }

    /// Number of stored arcs (an undirected edge counts twice).
    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// Number of edges in the usual sense (undirected edges counted once).
    pub fn edge_count(&self) -> usize {
        let arcs = self.arc_count();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    /// All stored arcs in `(source, adjacency)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u, v)))
    }

    /// User-facing label of a node: the original id from the source file when
    /// available, otherwise the dense id rendered as decimal.
    pub fn label(&self, v: NodeId) -> String {
        match &self.original_ids {
            Some(ids) => ids[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n);
        self.original_ids = Some(labels);
    }

    pub fn set_label(&mut self, v: NodeId, label: impl Into<String>) {
        let ids = self
            .original_ids
            .get_or_insert_with(|| (0..self.n).map(|i| i.to_string()).collect());
        ids[v] = label.into();
    }

    /// Resolves a user-supplied label to a dense id.
    pub fn resolve_label(&self, label: &str) -> Result<NodeId> {
        if let Some(ids) = &self.original_ids {
            if let Some(v) = ids.iter().position(|l| l == label) {
                return Ok(v);
            }
        } else if let Ok(v) = label.parse::<usize>() {
            if v < self.n {
                return Ok(v);
            }
        }
        Err(Error::UnknownLabel {
            label: label.to_string(),
        })
    }

    /// Parses a SNAP-style edge list: lines `u<ws>v`, `#` comment lines and
    /// blank lines ignored. External ids are remapped to dense `0..n` in
    /// first-appearance order; self-loops and duplicates are dropped (ids on
    /// such lines are still registered).
    pub fn load_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
        let mut remap: HashMap<u64, NodeId> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|source| Error::Io {
                path: "<edge list stream>".into(),
                source,
            })?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let mut parts = text.split_whitespace();
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::MalformedEdgeLine {
                        line: lineno,
                        text: text.to_string(),
                    })
                }
            };
            let parse = |tok: &str| -> Result<u64> {
                tok.parse::<u64>().map_err(|_| Error::MalformedEdgeLine {
                    line: lineno,
                    text: text.to_string(),
                })
            };
            let (ua, ub) = (parse(a)?, parse(b)?);
            let mut intern = |ext: u64| -> NodeId {
                *remap.entry(ext).or_insert_with(|| {
                    labels.push(ext.to_string());
                    labels.len() - 1
                })
            };
            let (u, v) = (intern(ua), intern(ub));
            if u != v {
                edges.push((u, v));
            }
        }
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut g = Graph::from_edges(labels.len(), directed, edges)?;
        g.original_ids = Some(labels);
        Ok(g)
    }

    pub fn load_edge_list_str(text: &str, directed: bool) -> Result<Graph> {
        Graph::load_edge_list(text.as_bytes(), directed)
    }

    /// Canonical serialization: one edge per line, ascending `(u, v)` over
    /// dense ids, LF line endings. Undirected edges appear once as
    /// `(min, max)`.
    pub fn canonical_edge_list(&self) -> String {
        let mut edges: Vec<(NodeId, NodeId)> = if self.directed {
            self.arcs().collect()
        } else {
            self.arcs().filter(|&(u, v)| u < v).collect()
        };
        edges.sort_unstable();
        let mut out = String::new();
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Symmetrized copy used for hop distances and centers on directed
    /// graphs. Returns `self` cloned with both arc directions present.
    pub fn undirected_view(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::from_edges(self.n, false, self.arcs()).expect("ids already in range");
        g.original_ids = self.original_ids.clone();
        g
    }

    /// Total degree: out + in for directed graphs, neighbor count otherwise.
    pub fn degrees(&self) -> Vec<usize> {
        if !self.directed {
            return self.out_adj.iter().map(Vec::len).collect();
        }
        let mut deg: Vec<usize> = self.out_adj.iter().map(Vec::len).collect();
        for adj in &self.out_adj {
            for &v in adj {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Minimum hop count from any source; unreachable nodes get
    /// [`UNREACHABLE`]. With `treat_as_undirected` arcs are traversed both
    /// ways regardless of the graph's direction flag.
    pub fn bfs_hop_distances(&self, sources: &[NodeId], treat_as_undirected: bool) -> Vec<u32> {
        assert!(!sources.is_empty(), "bfs requires at least one source");
        if treat_as_undirected && self.directed {
            return self.undirected_view().bfs_hop_distances(sources, false);
        }
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u] + 1;
            for &v in &self.out_adj[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = d;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertex of minimum eccentricity under undirected hop distances; ties
    /// broken by smallest id. Errors if the (undirected view of the) graph is
    /// disconnected.
    pub fn graph_center(&self) -> Result<NodeId> {
        if self.n == 0 {
            return Err(Error::Disconnected);
        }
        let view = self.undirected_view();
        let mut best: Option<(u32, NodeId)> = None;
        for v in 0..view.n {
            let dist = view.bfs_hop_distances(&[v], false);
            let ecc = *dist.iter().max().expect("nonempty");
            if ecc == UNREACHABLE {
                return Err(Error::Disconnected);
            }
            if best.map_or(true, |(e, _)| ecc < e) {
                best = Some((ecc, v));
            }
        }
        Ok(best.expect("nonempty").1)
    }

    /// Induced subgraph on the largest strongly connected component (largest
    /// connected component for undirected graphs). Ties go to the component
    /// containing the smallest node id. Also returns the old-to-new id map.
    pub fn largest_scc(&self) -> (Graph, Vec<Option<NodeId>>) {
        let comps = if self.directed {
            tarjan_scc(&self.out_adj)
        } else {
            connected_components(&self.out_adj)
        };
        let best = comps
            .iter()
            .max_by(|a, b| {
                a.len()
                    .cmp(&b.len())
                    // larger first; on equal size prefer the smaller min id
                    .then_with(|| {
                        b.iter().min().cmp(&a.iter().min())
                    })
            })
            .expect("graph has at least one component");
        let mut members = best.clone();
        members.sort_unstable();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in members.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let edges = self.arcs().filter_map(|(u, v)| {
            // for undirected graphs keep one direction; from_edges restores both
            if !self.directed && u > v {
                return None;
            }
            Some((old_to_new[u]?, old_to_new[v]?))
        });
        let mut sub =
            Graph::from_edges(members.len(), self.directed, edges).expect("remapped ids in range");
        if let Some(ids) = &self.original_ids {
            sub.original_ids = Some(members.iter().map(|&old| ids[old].clone()).collect());
        }
        (sub, old_to_new)
    }
}

/// Iterative Tarjan SCC (explicit stack, safe for deep graphs).
fn tarjan_scc(adj: &[Vec<NodeId>]) -> Vec<Vec<NodeId>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut comps: Vec<Vec<NodeId>> = Vec::new();
    let mut next_index = 0usize;
    // frame: (node, next child position)
    let mut call: Vec<(NodeId, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut ci)) = call.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

fn connected_components(adj: &[Vec<NodeId>]) -> Vec<Vec<NodeId>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

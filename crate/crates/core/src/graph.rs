//! Immutable undirected graph in compressed sparse (CSR) form.
//!
//! Nodes are authors, edge weights count co-authored papers. Graphs are
//! built once and never mutated, so they can be read from any number of
//! threads without synchronization.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Dense index of a node within one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Undirected coauthorship graph.
///
/// Invariants maintained by every constructor:
/// - adjacency is symmetric with equal weight in both directions
/// - no self-loops, no duplicate neighbor entries
/// - neighbor lists sorted ascending, so traversal order is deterministic
/// - every weight >= 1
#[derive(Debug, Clone)]
pub struct CoauthorGraph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    weights: Vec<u32>,
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
}

impl CoauthorGraph {
    /// Build from an unordered multiset of label pairs.
    ///
    /// Dense ids are assigned in first-seen order. Parallel pairs collapse
    /// into one edge whose weight is the pair's multiplicity; self-pairs are
    /// dropped (their endpoint still becomes a node). An empty input yields
    /// a valid empty graph.
    pub fn build<S: AsRef<str>>(pairs: &[(S, S)]) -> Self {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut intern = |s: &str, labels: &mut Vec<String>| -> u32 {
            if let Some(&id) = index.get(s) {
                return id;
            }
            let id = labels.len() as u32;
            index.insert(s.to_owned(), id);
            labels.push(s.to_owned());
            id
        };

        let mut weight_of: HashMap<(u32, u32), u32> = HashMap::new();
        for (a, b) in pairs {
            let u = intern(a.as_ref(), &mut labels);
            let v = intern(b.as_ref(), &mut labels);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            *weight_of.entry(key).or_insert(0) += 1;
        }

        let edges: Vec<((u32, u32), u32)> = {
            let mut e: Vec<_> = weight_of.into_iter().collect();
            e.sort_unstable();
            e.into_iter().collect()
        };
        Self::from_weighted_edges(labels, edges.iter().map(|&((u, v), w)| (u, v, w)))
    }

    /// Build from unique undirected edges `(u, v, weight)` over `labels`.
    ///
    /// Callers must supply each unordered pair at most once, with u != v and
    /// weight >= 1; endpoints must be valid indices into `labels`.
    pub fn from_weighted_edges<I>(labels: Vec<String>, edges: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, u32)>,
    {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        let mut halves: Vec<(u32, u32, u32)> = Vec::new();
        for (u, v, w) in edges {
            assert!(u != v, "self-loop {u}");
            assert!(w >= 1, "zero-weight edge {u}-{v}");
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            halves.push((u, v, w));
            halves.push((v, u, w));
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let m2 = halves.len();
        let mut neighbors = vec![NodeId(0); m2];
        let mut weights = vec![0u32; m2];
        let mut cursor = offsets.clone();
        halves.sort_unstable();
        for (u, v, w) in halves {
            let slot = cursor[u as usize];
            neighbors[slot] = NodeId(v);
            weights[slot] = w;
            cursor[u as usize] += 1;
        }

        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), NodeId(i as u32)))
            .collect();
        CoauthorGraph {
            offsets,
            neighbors,
            weights,
            labels,
            label_index,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    /// Edge weights aligned with `neighbors(v)`.
    pub fn weights(&self, v: NodeId) -> &[u32] {
        &self.weights[self.offsets[v.index()]..self.offsets[v.index() + 1]]
    }

    /// Number of distinct neighbors of `v`.
    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count() as u32).map(NodeId)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Weight of edge u-v, if present.
    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<u32> {
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.weights(u)[i])
    }

    /// Undirected edges as `(u, v, weight)` with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u32)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .zip(self.weights(u))
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &w)| (u, v, w))
        })
    }

    /// BFS distances from `source`; unreached nodes stay at -1.
    ///
    /// `dist` must be n long and all -1 on entry; visited indices are pushed
    /// onto `touched` so the caller can cheaply reset between sources.
    pub(crate) fn bfs(&self, source: NodeId, dist: &mut [i32], touched: &mut Vec<u32>) {
        let mut queue = std::collections::VecDeque::new();
        dist[source.index()] = 0;
        touched.push(source.0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.index()];
            for &v in self.neighbors(u) {
                if dist[v.index()] < 0 {
                    dist[v.index()] = du + 1;
                    touched.push(v.0);
                    queue.push_back(v);
                }
            }
        }
    }
}

/// Partition of the node set into connected components.
#[derive(Debug, Clone)]
pub struct ComponentLabeling {
    /// Node -> component id; ids are dense and assigned in order of each
    /// component's smallest member.
    pub component_of: Vec<u32>,
    pub component_sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }
}

/// Label connected components by BFS from every unvisited node in id order.
pub fn connected_components(g: &CoauthorGraph) -> ComponentLabeling {
    let n = g.node_count();
    let mut component_of = vec![u32::MAX; n];
    let mut component_sizes = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if component_of[start] != u32::MAX {
            continue;
        }
        let comp = component_sizes.len() as u32;
        let mut size = 0usize;
        component_of[start] = comp;
        queue.push_back(NodeId(start as u32));
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in g.neighbors(u) {
                if component_of[v.index()] == u32::MAX {
                    component_of[v.index()] = comp;
                    queue.push_back(v);
                }
            }
        }
        component_sizes.push(size);
    }
    ComponentLabeling {
        component_of,
        component_sizes,
    }
}

/// Extract the subgraph induced by `nodes`.
///
/// The result is renumbered densely in ascending order of the original ids,
/// keeps every edge with both endpoints in `nodes`, and carries labels over.
pub fn induced_subgraph(g: &CoauthorGraph, nodes: &[NodeId]) -> Result<CoauthorGraph> {
    let n = g.node_count();
    let mut keep: Vec<NodeId> = nodes.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|v| v.index() >= n) {
        return Err(Error::NotFound(format!(
            "node {bad} is not in a graph of {n} nodes"
        )));
    }

    let mut new_id = vec![u32::MAX; n];
    for (i, v) in keep.iter().enumerate() {
        new_id[v.index()] = i as u32;
    }
    let labels = keep.iter().map(|&v| g.label(v).to_owned()).collect();
    let mut edges = Vec::new();
    for &u in &keep {
        for (&v, &w) in g.neighbors(u).iter().zip(g.weights(u)) {
            if u < v && new_id[v.index()] != u32::MAX {
                edges.push((new_id[u.index()], new_id[v.index()], w));
            }
        }
    }
    Ok(CoauthorGraph::from_weighted_edges(labels, edges))
}

/// Seeds together with every neighbor of any seed, ascending and deduplicated.
pub fn neighborhood_closure(g: &CoauthorGraph, seeds: &[NodeId]) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = seeds.to_vec();
    for &s in seeds {
        out.extend_from_slice(g.neighbors(s));
    }
    out.sort_unstable();
    out.dedup();
    out
}

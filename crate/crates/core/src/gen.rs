//! Seeded synthetic graph generators for fixtures and tests.
//!
//! All generators are deterministic for a fixed seed and label nodes
//! `n0, n1, ...` in id order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::CoauthorGraph;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

pub fn path_graph(n: usize) -> CoauthorGraph {
    let edges = (1..n).map(|i| (i as u32 - 1, i as u32, 1));
    CoauthorGraph::from_weighted_edges(labels(n), edges)
}

pub fn cycle_graph(n: usize) -> CoauthorGraph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    let edges = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32, 1));
    CoauthorGraph::from_weighted_edges(labels(n), edges)
}

/// Star with `leaves` spokes; node 0 is the center.
pub fn star_graph(leaves: usize) -> CoauthorGraph {
    let edges = (1..=leaves).map(|i| (0, i as u32, 1));
    CoauthorGraph::from_weighted_edges(labels(leaves + 1), edges)
}

pub fn complete_graph(n: usize) -> CoauthorGraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            edges.push((u, v, 1));
        }
    }
    CoauthorGraph::from_weighted_edges(labels(n), edges)
}

/// Erdos-Renyi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> CoauthorGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v, 1));
            }
        }
    }
    CoauthorGraph::from_weighted_edges(labels(n), edges)
}

/// Erdos-Renyi G(n, m): exactly `m` distinct edges sampled uniformly.
pub fn gnm(n: usize, m: usize, seed: u64) -> CoauthorGraph {
    let max = n * (n - 1) / 2;
    assert!(m <= max, "cannot place {m} edges in a graph of {n} nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n as u32);
        let v = rng.random_range(0..n as u32);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if chosen.insert(key) {
            edges.push((key.0, key.1, 1));
        }
    }
    edges.sort_unstable();
    CoauthorGraph::from_weighted_edges(labels(n), edges)
}

/// Planted-partition graph: `blocks` blocks of `block_size` nodes, edge
/// probability `p_in` inside a block and `p_out` across blocks.
///
/// Returns the graph and the planted block labels.
pub fn planted_partition(
    blocks: usize,
    block_size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> (CoauthorGraph, Vec<u32>) {
    let n = blocks * block_size;
    let planted: Vec<u32> = (0..n).map(|i| (i / block_size) as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            let p = if planted[u as usize] == planted[v as usize] {
                p_in
            } else {
                p_out
            };
            if rng.random::<f64>() < p {
                edges.push((u, v, 1));
            }
        }
    }
    (
        CoauthorGraph::from_weighted_edges(labels(n), edges),
        planted,
    )
}

/// Relabel a graph by a seeded random permutation of its node ids.
///
/// Returns the permuted graph and `perm`, where `perm[old] = new`.
pub fn permute(g: &CoauthorGraph, seed: u64) -> (CoauthorGraph, Vec<u32>) {
    let n = g.node_count();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut new_labels = vec![String::new(); n];
    for v in g.nodes() {
        new_labels[perm[v.index()] as usize] = g.label(v).to_owned();
    }
    let mut edges: Vec<(u32, u32, u32)> = g
        .edges()
        .map(|(u, v, w)| {
            let (a, b) = (perm[u.index()], perm[v.index()]);
            (a.min(b), a.max(b), w)
        })
        .collect();
    edges.sort_unstable();
    (
        CoauthorGraph::from_weighted_edges(new_labels, edges),
        perm,
    )
}

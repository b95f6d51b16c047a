//! Modularity and greedy community detection.
//!
//! Detection is the two-phase local-move/aggregate scheme: nodes start as
//! singletons, move to the neighboring community with the best modularity
//! gain until no move helps, then communities collapse into super-nodes and
//! the process repeats. The input graph is treated as unweighted; the
//! aggregated levels are necessarily weighted internally.

use std::collections::BTreeMap;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CoauthorGraph;

/// A non-overlapping assignment of every node to one community.
#[derive(Debug, Clone, Serialize)]
pub struct Partition {
    /// Node -> community id; ids are dense in [0, community_count) and
    /// ordered by each community's smallest member.
    pub community_of: Vec<u32>,
    pub community_count: usize,
    /// Modularity of this partition on the graph it was computed from.
    pub modularity: f64,
}

impl Partition {
    /// `author_id,community_id` rows in node order.
    pub fn write_csv<W: Write>(&self, g: &CoauthorGraph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["author_id", "community_id"])?;
        for v in g.nodes() {
            w.write_record([g.label(v), &self.community_of[v.index()].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Newman modularity Q of a labeling, edges unweighted.
///
/// Q = sum over communities of [L_c/m - (D_c/2m)^2] where L_c counts edges
/// inside the community and D_c sums member degrees. An edgeless graph has
/// Q = 0 by definition.
pub fn modularity(g: &CoauthorGraph, community_of: &[u32]) -> Result<f64> {
    if community_of.len() != g.node_count() {
        return Err(Error::Argument(format!(
            "labeling covers {} nodes, graph has {}",
            community_of.len(),
            g.node_count()
        )));
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(0.0);
    }

    let mut intra: BTreeMap<u32, u64> = BTreeMap::new();
    let mut degree_sum: BTreeMap<u32, u64> = BTreeMap::new();
    for v in g.nodes() {
        *degree_sum.entry(community_of[v.index()]).or_insert(0) += g.degree(v) as u64;
    }
    for (u, v, _) in g.edges() {
        let (cu, cv) = (community_of[u.index()], community_of[v.index()]);
        if cu == cv {
            *intra.entry(cu).or_insert(0) += 1;
        }
    }

    let m = m as f64;
    let mut q = 0.0;
    for (&c, &degrees) in &degree_sum {
        let inside = intra.get(&c).copied().unwrap_or(0) as f64;
        let share = degrees as f64 / (2.0 * m);
        q += inside / m - share * share;
    }
    Ok(q)
}

/// One level of the working graph: weighted adjacency plus self-loops that
/// hold collapsed intra-community weight.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
}

impl Level {
    fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Weighted degree including both endpoints of the self-loop.
    fn strength(&self, v: usize) -> f64 {
        self.adj[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.self_loop[v]
    }
}

/// Greedy modularity maximization.
///
/// `resolution` multiplies the null-model term of the gain: above 1 favors
/// smaller communities, below 1 larger ones. Node visit order is shuffled
/// from `seed`, and equal-gain moves keep the current community, so results
/// are reproducible for a fixed seed. The returned modularity is recomputed
/// from the final labeling at resolution 1.
pub fn detect_communities(g: &CoauthorGraph, resolution: f64, seed: u64) -> Result<Partition> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::Argument(format!(
            "resolution must be positive, got {resolution}"
        )));
    }
    let n = g.node_count();
    let m = g.edge_count() as f64;
    if n == 0 || g.edge_count() == 0 {
        return Ok(Partition {
            community_of: (0..n as u32).collect(),
            community_count: n,
            modularity: 0.0,
        });
    }

    let mut level = Level {
        adj: {
            let mut adj = vec![Vec::new(); n];
            for (u, v, _) in g.edges() {
                adj[u.index()].push((v.index(), 1.0));
                adj[v.index()].push((u.index(), 1.0));
            }
            adj
        },
        self_loop: vec![0.0; n],
    };
    // membership[v] = community of original node v at the current level,
    // expressed in current-level node ids.
    let mut membership: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    loop {
        let ln = level.node_count();
        let mut community: Vec<usize> = (0..ln).collect();
        let mut total_strength: Vec<f64> = (0..ln).map(|v| level.strength(v)).collect();

        let mut order: Vec<usize> = (0..ln).collect();
        order.shuffle(&mut rng);

        let mut moved_any = false;
        loop {
            let mut moved_this_pass = false;
            for &v in &order {
                let home = community[v];
                let k_v = level.strength(v);
                total_strength[home] -= k_v;

                // Edge weight from v into each adjacent community; sorted
                // map so candidate order never depends on hashing.
                let mut links: BTreeMap<usize, f64> = BTreeMap::new();
                for &(u, w) in &level.adj[v] {
                    *links.entry(community[u]).or_insert(0.0) += w;
                }

                let gain = |c: usize, link: f64| {
                    link / m - resolution * k_v * total_strength[c] / (2.0 * m * m)
                };
                let mut best = home;
                let mut best_gain = gain(home, links.get(&home).copied().unwrap_or(0.0));
                for (&c, &link) in &links {
                    if c == home {
                        continue;
                    }
                    let candidate = gain(c, link);
                    if candidate > best_gain {
                        best = c;
                        best_gain = candidate;
                    }
                }

                community[v] = best;
                total_strength[best] += k_v;
                if best != home {
                    moved_this_pass = true;
                    moved_any = true;
                }
            }
            if !moved_this_pass {
                break;
            }
        }

        if !moved_any {
            break;
        }

        // Aggregate: dense ids for surviving communities in sorted order.
        let mut ids: Vec<usize> = community.clone();
        ids.sort_unstable();
        ids.dedup();
        let dense: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let next_n = ids.len();

        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut self_loop = vec![0.0f64; next_n];
        for v in 0..ln {
            let cv = dense[&community[v]];
            self_loop[cv] += level.self_loop[v];
            for &(u, w) in &level.adj[v] {
                if u < v {
                    continue; // each undirected edge once
                }
                let cu = dense[&community[u]];
                if cu == cv {
                    self_loop[cv] += w;
                } else {
                    let key = (cv.min(cu), cv.max(cu));
                    *merged.entry(key).or_insert(0.0) += w;
                }
            }
        }
        let mut adj = vec![Vec::new(); next_n];
        for (&(a, b), &w) in &merged {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }

        for slot in membership.iter_mut() {
            *slot = dense[&community[*slot]];
        }
        if next_n == ln {
            break;
        }
        level = Level { adj, self_loop };
    }

    // Relabel so community ids run in order of their smallest member.
    let final_count = level.node_count();
    let mut relabel = vec![u32::MAX; final_count];
    let mut next = 0u32;
    let mut community_of = vec![0u32; n];
    for v in 0..n {
        let c = membership[v];
        if relabel[c] == u32::MAX {
            relabel[c] = next;
            next += 1;
        }
        community_of[v] = relabel[c];
    }

    let q = modularity(g, &community_of)?;
    Ok(Partition {
        community_of,
        community_count: next as usize,
        modularity: q,
    })
}

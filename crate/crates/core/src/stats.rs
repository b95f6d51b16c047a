//! Whole-network statistics: degree, distances, clustering, components.
//!
//! Distance work is the expensive part (one BFS per source), so the summary
//! switches from exact all-sources mode to a seeded sample above a size
//! threshold. Everything reduces through integers or per-node values merged
//! in index order, keeping results identical for any worker count.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{connected_components, CoauthorGraph, NodeId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkSummary {
    pub node_count: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    /// Longest finite shortest-path distance, in hops.
    pub diameter: u32,
    /// Mean over finite-distance ordered pairs, in hops.
    pub avg_path_length: f64,
    pub avg_clustering: f64,
    pub component_count: usize,
    pub modularity: Option<f64>,
    /// Distances came from a source sample, not every node.
    pub distances_estimated: bool,
    /// No finite pairs existed; diameter and path length are placeholders.
    pub degenerate_distances: bool,
    /// Degree-0 and degree-1 nodes were left out of the clustering mean.
    pub clustering_excludes_deg1: bool,
}

impl NetworkSummary {
    /// Summary for a graph with no nodes, where the averages are undefined.
    pub fn degenerate_empty() -> Self {
        NetworkSummary {
            node_count: 0,
            edge_count: 0,
            avg_degree: 0.0,
            diameter: 0,
            avg_path_length: 0.0,
            avg_clustering: 0.0,
            component_count: 0,
            modularity: None,
            distances_estimated: false,
            degenerate_distances: true,
            clustering_excludes_deg1: false,
        }
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    /// One header and one data row, columns named like the usual statistics
    /// table of a network study.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "Number of authors,Modularity,Network diameter,Connected components,\
             Avg. clustering coefficient,Avg. path length,Avg. degree"
        )?;
        let modularity = self.modularity.map(|q| q.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            self.node_count,
            modularity,
            self.diameter,
            self.component_count,
            self.avg_clustering,
            self.avg_path_length,
            self.avg_degree
        )?;
        Ok(())
    }
}

/// 2m/n. Undefined for an empty graph.
pub fn avg_degree(g: &CoauthorGraph) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Undefined(
            "average degree of an empty graph".into(),
        ));
    }
    Ok(2.0 * g.edge_count() as f64 / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// BFS from every node.
    Exact,
    /// BFS from a seeded random sample of distinct sources.
    Sampled { sources: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceStats {
    pub diameter: u32,
    pub avg_path_length: f64,
    /// True when no finite source-target pair was seen.
    pub degenerate: bool,
    /// True when computed from a sample of sources.
    pub estimated: bool,
}

/// Diameter and average path length over finite ordered pairs.
///
/// Cross-component pairs have no path and are excluded; a graph without any
/// finite pair yields (0, 0) with the degenerate flag.
pub fn diameter_and_apl(g: &CoauthorGraph, mode: DistanceMode) -> Result<DistanceStats> {
    let n = g.node_count();
    let (sources, estimated): (Vec<u32>, bool) = match mode {
        DistanceMode::Exact => ((0..n as u32).collect(), false),
        DistanceMode::Sampled { sources, seed } => {
            if sources == 0 {
                return Err(Error::Argument("sample of 0 sources".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = sources.min(n);
            let mut picks: Vec<u32> = rand::seq::index::sample(&mut rng, n, k)
                .into_iter()
                .map(|i| i as u32)
                .collect();
            picks.sort_unstable();
            (picks, true)
        }
    };

    // (max distance, distance sum, finite pair count): all integers, so the
    // merge order cannot change the result.
    let (max_dist, sum, pairs) = sources
        .par_iter()
        .map_init(
            || (vec![-1i32; n], Vec::with_capacity(n)),
            |(dist, touched), &s| {
                touched.clear();
                g.bfs(NodeId(s), dist, touched);
                let mut local_max = 0u32;
                let mut local_sum = 0u64;
                for &v in touched.iter() {
                    let d = dist[v as usize];
                    local_max = local_max.max(d as u32);
                    local_sum += d as u64;
                }
                let local_pairs = (touched.len() - 1) as u64;
                for &v in touched.iter() {
                    dist[v as usize] = -1;
                }
                (local_max, local_sum, local_pairs)
            },
        )
        .reduce(
            || (0u32, 0u64, 0u64),
            |a, b| (a.0.max(b.0), a.1 + b.1, a.2 + b.2),
        );

    if pairs == 0 {
        return Ok(DistanceStats {
            diameter: 0,
            avg_path_length: 0.0,
            degenerate: true,
            estimated,
        });
    }
    Ok(DistanceStats {
        diameter: max_dist,
        avg_path_length: sum as f64 / pairs as f64,
        degenerate: false,
        estimated,
    })
}

/// Mean local clustering coefficient.
///
/// c(v) = 2 * (edges among v's neighbors) / (deg(v) * (deg(v)-1)). Nodes of
/// degree < 2 count as 0 by default; `exclude_deg1` drops them from the mean
/// instead (0 if that empties it).
pub fn avg_clustering(g: &CoauthorGraph, exclude_deg1: bool) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Undefined(
            "clustering coefficient of an empty graph".into(),
        ));
    }

    let coefficients: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|v| {
            let v = NodeId(v as u32);
            let d = g.degree(v);
            if d < 2 {
                return 0.0;
            }
            // Sorted adjacency intersection counts each neighbor-neighbor
            // edge from both sides.
            let mine = g.neighbors(v);
            let mut twice_links = 0u64;
            for &u in mine {
                let (mut i, mut j) = (0, 0);
                let theirs = g.neighbors(u);
                while i < mine.len() && j < theirs.len() {
                    match mine[i].cmp(&theirs[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            twice_links += 1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
            twice_links as f64 / (d as f64 * (d - 1) as f64)
        })
        .collect();

    if exclude_deg1 {
        let eligible: Vec<f64> = g
            .nodes()
            .filter(|&v| g.degree(v) >= 2)
            .map(|v| coefficients[v.index()])
            .collect();
        if eligible.is_empty() {
            return Ok(0.0);
        }
        Ok(eligible.iter().sum::<f64>() / eligible.len() as f64)
    } else {
        Ok(coefficients.iter().sum::<f64>() / n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryOptions {
    /// Node count up to which distances are exact.
    pub exact_threshold: usize,
    /// Sample size once above the threshold.
    pub sample_sources: usize,
    pub seed: u64,
    pub clustering_exclude_deg1: bool,
}

impl Default for SummaryOptions {
    fn default() -> Self {
        SummaryOptions {
            exact_threshold: 50_000,
            sample_sources: 256,
            seed: 42,
            clustering_exclude_deg1: false,
        }
    }
}

/// The full statistics bundle. Modularity is copied from the partition when
/// one is supplied.
pub fn summarize(
    g: &CoauthorGraph,
    partition: Option<&Partition>,
    opts: &SummaryOptions,
) -> Result<NetworkSummary> {
    let n = g.node_count();
    let mode = if n <= opts.exact_threshold {
        DistanceMode::Exact
    } else {
        DistanceMode::Sampled {
            sources: opts.sample_sources,
            seed: opts.seed,
        }
    };
    let distances = diameter_and_apl(g, mode)?;
    Ok(NetworkSummary {
        node_count: n,
        edge_count: g.edge_count(),
        avg_degree: avg_degree(g)?,
        diameter: distances.diameter,
        avg_path_length: distances.avg_path_length,
        avg_clustering: avg_clustering(g, opts.clustering_exclude_deg1)?,
        component_count: connected_components(g).component_count(),
        modularity: partition.map(|p| p.modularity),
        distances_estimated: distances.estimated,
        degenerate_distances: distances.degenerate,
        clustering_excludes_deg1: opts.clustering_exclude_deg1,
    })
}

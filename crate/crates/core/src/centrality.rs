//! Per-node centrality scores: degree, betweenness, closeness, PageRank.
//!
//! All measures treat the graph as unweighted (edge multiplicities ignored)
//! and are deterministic for any worker count: per-source work is merged in
//! a fixed order, never through a racy reduction.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, CoauthorGraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Degree,
    Betweenness,
    Closeness,
    Pagerank,
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Closeness => "closeness",
            Measure::Pagerank => "pagerank",
        })
    }
}

impl std::str::FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(Measure::Degree),
            "betweenness" => Ok(Measure::Betweenness),
            "closeness" => Ok(Measure::Closeness),
            "pagerank" => Ok(Measure::Pagerank),
            other => Err(Error::Argument(format!("unknown measure {other:?}"))),
        }
    }
}

/// How raw betweenness sums are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetweennessNorm {
    /// Unscaled pair-dependency sums.
    Raw,
    /// Divide by (n-1)(n-2)/2 with n the whole-graph node count.
    Graph,
    /// Divide by (c-1)(c-2)/2 with c the node's own component size.
    Component,
}

impl std::str::FromStr for BetweennessNorm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(BetweennessNorm::Raw),
            "graph" => Ok(BetweennessNorm::Graph),
            "component" => Ok(BetweennessNorm::Component),
            other => Err(Error::Argument(format!(
                "unknown betweenness normalization {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosenessMode {
    /// ((c-1)/sum_d) * ((c-1)/(n-1)) over the node's component; the scale
    /// factor makes scores comparable across components of different sizes.
    ComponentScaled,
    /// (1/(n-1)) * sum of 1/d over reachable nodes.
    Harmonic,
}

impl std::str::FromStr for ClosenessMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "component_scaled" => Ok(ClosenessMode::ComponentScaled),
            "harmonic" => Ok(ClosenessMode::Harmonic),
            other => Err(Error::Argument(format!("unknown closeness mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PagerankOptions {
    pub damping: f64,
    /// L1 convergence threshold.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PagerankOptions {
    fn default() -> Self {
        PagerankOptions {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 200,
        }
    }
}

/// The parameters a score vector was actually computed with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentralityParams {
    Degree,
    Betweenness {
        normalization: BetweennessNorm,
    },
    Closeness {
        mode: ClosenessMode,
    },
    Pagerank {
        damping: f64,
        tolerance: f64,
        max_iterations: usize,
        /// Iterations actually run before convergence.
        iterations: usize,
    },
}

/// One score per node, aligned with the graph's node ids.
#[derive(Debug, Clone, Serialize)]
pub struct CentralityVector {
    pub measure: Measure,
    pub scores: Vec<f64>,
    pub params: CentralityParams,
}

impl CentralityVector {
    /// `author_id,score` rows in node order, full float precision.
    pub fn write_csv<W: Write>(&self, g: &CoauthorGraph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["author_id", "score"])?;
        for v in g.nodes() {
            w.write_record([g.label(v), &self.scores[v.index()].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON document with measure, params, and labeled scores in node order.
    pub fn write_json<W: Write>(&self, g: &CoauthorGraph, out: W) -> Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            author_id: &'a str,
            score: f64,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            measure: Measure,
            params: &'a CentralityParams,
            scores: Vec<Row<'a>>,
        }
        let doc = Doc {
            measure: self.measure,
            params: &self.params,
            scores: g
                .nodes()
                .map(|v| Row {
                    author_id: g.label(v),
                    score: self.scores[v.index()],
                })
                .collect(),
        };
        serde_json::to_writer_pretty(out, &doc).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Unweighted degree of every node.
pub fn degree_centrality(g: &CoauthorGraph) -> CentralityVector {
    CentralityVector {
        measure: Measure::Degree,
        scores: g.nodes().map(|v| g.degree(v) as f64).collect(),
        params: CentralityParams::Degree,
    }
}

/// Sources per parallel work unit. Fixed so the reduction order, and with it
/// every floating-point sum, is independent of the worker count.
const SOURCE_CHUNK: usize = 64;

/// Shortest-path betweenness over unordered pairs.
///
/// Per-source BFS counts shortest paths, then dependencies are accumulated
/// back down the BFS order; summing over all sources counts each pair twice,
/// so the total is halved. Pairs in different components contribute nothing.
pub fn betweenness_centrality(g: &CoauthorGraph, norm: BetweennessNorm) -> CentralityVector {
    let n = g.node_count();
    let mut scores = vec![0.0f64; n];

    let chunk_count = n.div_ceil(SOURCE_CHUNK);
    let partials: Vec<Vec<f64>> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let mut partial = vec![0.0f64; n];
            let mut dist = vec![-1i32; n];
            let mut sigma = vec![0.0f64; n];
            let mut delta = vec![0.0f64; n];
            let mut order: Vec<u32> = Vec::with_capacity(n);
            let lo = chunk * SOURCE_CHUNK;
            let hi = ((chunk + 1) * SOURCE_CHUNK).min(n);
            for s in lo..hi {
                order.clear();
                dist[s] = 0;
                sigma[s] = 1.0;
                order.push(s as u32);
                let mut head = 0;
                while head < order.len() {
                    let v = order[head] as usize;
                    head += 1;
                    let next = dist[v] + 1;
                    for &w in g.neighbors(NodeId(v as u32)) {
                        let w = w.index();
                        if dist[w] < 0 {
                            dist[w] = next;
                            order.push(w as u32);
                        }
                        if dist[w] == next {
                            sigma[w] += sigma[v];
                        }
                    }
                }
                for &w in order.iter().rev() {
                    let w = w as usize;
                    if dist[w] > 0 {
                        // Predecessors of w are exactly its neighbors one
                        // BFS level up.
                        let coefficient = (1.0 + delta[w]) / sigma[w];
                        let prev = dist[w] - 1;
                        for &v in g.neighbors(NodeId(w as u32)) {
                            let v = v.index();
                            if dist[v] == prev {
                                delta[v] += sigma[v] * coefficient;
                            }
                        }
                        partial[w] += delta[w];
                    }
                }
                for &v in &order {
                    let v = v as usize;
                    dist[v] = -1;
                    sigma[v] = 0.0;
                    delta[v] = 0.0;
                }
            }
            partial
        })
        .collect();
    for partial in &partials {
        for (total, p) in scores.iter_mut().zip(partial) {
            *total += p;
        }
    }
    for s in &mut scores {
        *s *= 0.5;
    }

    match norm {
        BetweennessNorm::Raw => {}
        BetweennessNorm::Graph => {
            if n < 3 {
                scores.iter_mut().for_each(|s| *s = 0.0);
            } else {
                let scale = 2.0 / ((n - 1) as f64 * (n - 2) as f64);
                scores.iter_mut().for_each(|s| *s *= scale);
            }
        }
        BetweennessNorm::Component => {
            let labeling = connected_components(g);
            for (v, score) in scores.iter_mut().enumerate() {
                let c = labeling.component_sizes[labeling.component_of[v] as usize];
                if c < 3 {
                    *score = 0.0;
                } else {
                    *score *= 2.0 / ((c - 1) as f64 * (c - 2) as f64);
                }
            }
        }
    }

    CentralityVector {
        measure: Measure::Betweenness,
        scores,
        params: CentralityParams::Betweenness {
            normalization: norm,
        },
    }
}

/// Closeness under the chosen mode. Isolated nodes score 0 in both.
pub fn closeness_centrality(g: &CoauthorGraph, mode: ClosenessMode) -> CentralityVector {
    let n = g.node_count();
    let scores: Vec<f64> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![-1i32; n], Vec::with_capacity(n)),
            |(dist, touched), s| {
                touched.clear();
                g.bfs(NodeId(s as u32), dist, touched);
                let score = match mode {
                    ClosenessMode::ComponentScaled => {
                        let reached = touched.len();
                        if reached < 2 {
                            0.0
                        } else {
                            let sum: i64 = touched.iter().map(|&v| dist[v as usize] as i64).sum();
                            let within = (reached - 1) as f64 / sum as f64;
                            within * (reached - 1) as f64 / (n - 1) as f64
                        }
                    }
                    ClosenessMode::Harmonic => {
                        if n < 2 {
                            0.0
                        } else {
                            let sum: f64 = touched
                                .iter()
                                .filter(|&&v| v as usize != s)
                                .map(|&v| 1.0 / dist[v as usize] as f64)
                                .sum();
                            sum / (n - 1) as f64
                        }
                    }
                };
                for &v in touched.iter() {
                    dist[v as usize] = -1;
                }
                score
            },
        )
        .collect();
    CentralityVector {
        measure: Measure::Closeness,
        scores,
        params: CentralityParams::Closeness { mode },
    }
}

/// PageRank by power iteration, each undirected edge acting as two directed
/// ones. Nodes without neighbors are dangling: their mass is spread
/// uniformly each step, so scores still sum to 1.
pub fn pagerank(g: &CoauthorGraph, opts: &PagerankOptions) -> Result<CentralityVector> {
    if !opts.damping.is_finite() || opts.damping <= 0.0 || opts.damping >= 1.0 {
        return Err(Error::Argument(format!(
            "damping must be in (0,1), got {}",
            opts.damping
        )));
    }
    if !opts.tolerance.is_finite() || opts.tolerance <= 0.0 {
        return Err(Error::Argument(format!(
            "tolerance must be positive, got {}",
            opts.tolerance
        )));
    }
    if opts.max_iterations == 0 {
        return Err(Error::Argument("max_iterations must be at least 1".into()));
    }

    let n = g.node_count();
    let params = |iterations| CentralityParams::Pagerank {
        damping: opts.damping,
        tolerance: opts.tolerance,
        max_iterations: opts.max_iterations,
        iterations,
    };
    if n == 0 {
        return Ok(CentralityVector {
            measure: Measure::Pagerank,
            scores: Vec::new(),
            params: params(0),
        });
    }

    let inv_n = 1.0 / n as f64;
    let d = opts.damping;
    let dangling: Vec<usize> = (0..n).filter(|&v| g.degree(NodeId(v as u32)) == 0).collect();
    let mut x = vec![inv_n; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=opts.max_iterations {
        let dangling_mass: f64 = dangling.iter().map(|&v| x[v]).sum();
        let base = (1.0 - d) * inv_n + d * dangling_mass * inv_n;
        let next: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut acc = 0.0;
                for &u in g.neighbors(NodeId(v as u32)) {
                    acc += x[u.index()] / g.degree(u) as f64;
                }
                base + d * acc
            })
            .collect();
        residual = x.iter().zip(&next).map(|(a, b)| (b - a).abs()).sum();
        x = next;
        if residual < opts.tolerance {
            return Ok(CentralityVector {
                measure: Measure::Pagerank,
                scores: x,
                params: params(iteration),
            });
        }
    }
    Err(Error::NonConvergence {
        residual,
        iterations: opts.max_iterations,
        last: x,
    })
}

//! Deliverables built on top of the metrics: cross-measure rank tables,
//! ego networks around top-ranked authors, affiliation publication reports,
//! and graph exports for external viewers.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::Serialize;

use crate::centrality::{CentralityVector, Measure};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, neighborhood_closure, CoauthorGraph, NodeId};
use crate::ingest::AffiliationIndex;

/// The four score vectors of one graph, bundled for cross-ranking.
#[derive(Debug, Clone)]
pub struct CentralitySet {
    pub degree: CentralityVector,
    pub betweenness: CentralityVector,
    pub closeness: CentralityVector,
    pub pagerank: CentralityVector,
}

impl CentralitySet {
    pub fn get(&self, measure: Measure) -> &CentralityVector {
        match measure {
            Measure::Degree => &self.degree,
            Measure::Betweenness => &self.betweenness,
            Measure::Closeness => &self.closeness,
            Measure::Pagerank => &self.pagerank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub author_id: String,
    pub author_name: String,
    pub degree: f64,
    pub degree_rank: u32,
    pub betweenness: f64,
    pub betweenness_rank: u32,
    pub closeness: f64,
    pub closeness_rank: u32,
    pub pagerank: f64,
    pub pagerank_rank: u32,
}

/// Top-k authors under one measure, with their value and whole-graph rank
/// under all four.
#[derive(Debug, Clone, Serialize)]
pub struct RankTable {
    pub sort_measure: Measure,
    pub k: usize,
    pub rows: Vec<RankRow>,
}

/// Scientific notation with 3 significant digits and a signed two-digit
/// exponent: 0.000729 -> "7.29E-04".
pub fn sci3(x: f64) -> String {
    let s = format!("{x:.2E}");
    let (mantissa, exponent) = s.split_once('E').expect("{:.2E} always includes E");
    let e: i32 = exponent.parse().expect("exponent is an integer");
    format!("{mantissa}E{e:+03}")
}

impl RankTable {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "author_id",
            "author_name",
            "degree",
            "degree_rank",
            "betweenness",
            "betweenness_rank",
            "closeness",
            "closeness_rank",
            "pagerank",
            "pagerank_rank",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.author_id.as_str(),
                r.author_name.as_str(),
                &sci3(r.degree),
                &r.degree_rank.to_string(),
                &sci3(r.betweenness),
                &r.betweenness_rank.to_string(),
                &sci3(r.closeness),
                &r.closeness_rank.to_string(),
                &sci3(r.pagerank),
                &r.pagerank_rank.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Node order sorted by (score descending, label ascending). The label
/// tiebreak makes every ranking total and reproducible.
fn ranking_order(g: &CoauthorGraph, scores: &[f64]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..g.node_count() as u32).collect();
    order.sort_by(|&a, &b| {
        scores[b as usize]
            .total_cmp(&scores[a as usize])
            .then_with(|| g.label(NodeId(a)).cmp(g.label(NodeId(b))))
    });
    order
}

/// 1-based rank per node under one score vector.
fn ranks(g: &CoauthorGraph, scores: &[f64]) -> Vec<u32> {
    let order = ranking_order(g, scores);
    let mut rank = vec![0u32; order.len()];
    for (position, &v) in order.iter().enumerate() {
        rank[v as usize] = position as u32 + 1;
    }
    rank
}

/// Build the top-k cross-measure table. Ranks are computed over the whole
/// graph, so a row deep in one measure's table can still show rank 1 under
/// another measure.
pub fn rank_table(
    g: &CoauthorGraph,
    set: &CentralitySet,
    sort_measure: Measure,
    k: usize,
    names: &BTreeMap<String, String>,
) -> Result<RankTable> {
    let n = g.node_count();
    for (vector, want) in [
        (&set.degree, Measure::Degree),
        (&set.betweenness, Measure::Betweenness),
        (&set.closeness, Measure::Closeness),
        (&set.pagerank, Measure::Pagerank),
    ] {
        if vector.measure != want {
            return Err(Error::Argument(format!(
                "{want} slot holds a {} vector",
                vector.measure
            )));
        }
        if vector.scores.len() != n {
            return Err(Error::Argument(format!(
                "{want} vector covers {} nodes, graph has {n}",
                vector.scores.len()
            )));
        }
    }
    if k == 0 {
        return Err(Error::Argument("rank table needs k >= 1".into()));
    }

    let degree_rank = ranks(g, &set.degree.scores);
    let betweenness_rank = ranks(g, &set.betweenness.scores);
    let closeness_rank = ranks(g, &set.closeness.scores);
    let pagerank_rank = ranks(g, &set.pagerank.scores);

    let order = ranking_order(g, &set.get(sort_measure).scores);
    let rows = order
        .iter()
        .take(k)
        .map(|&v| {
            let i = v as usize;
            let id = g.label(NodeId(v));
            RankRow {
                author_id: id.to_owned(),
                author_name: names.get(id).cloned().unwrap_or_default(),
                degree: set.degree.scores[i],
                degree_rank: degree_rank[i],
                betweenness: set.betweenness.scores[i],
                betweenness_rank: betweenness_rank[i],
                closeness: set.closeness.scores[i],
                closeness_rank: closeness_rank[i],
                pagerank: set.pagerank.scores[i],
                pagerank_rank: pagerank_rank[i],
            }
        })
        .collect();
    Ok(RankTable {
        sort_measure,
        k,
        rows,
    })
}

/// Induced subgraph around the top-k nodes of a score vector, with the seed
/// nodes marked.
#[derive(Debug, Clone)]
pub struct EgoNetwork {
    pub graph: CoauthorGraph,
    /// Aligned with the ego graph's node ids: true for top-k seeds.
    pub seed_flags: Vec<bool>,
}

/// Neighborhood of the top-k nodes under a vector: the seeds, everyone
/// adjacent to a seed, and every edge among them.
pub fn ego_network(g: &CoauthorGraph, vector: &CentralityVector, k: usize) -> Result<EgoNetwork> {
    if vector.scores.len() != g.node_count() {
        return Err(Error::Argument(format!(
            "vector covers {} nodes, graph has {}",
            vector.scores.len(),
            g.node_count()
        )));
    }
    if k == 0 {
        return Err(Error::Argument("ego network needs k >= 1".into()));
    }
    let order = ranking_order(g, &vector.scores);
    let seeds: Vec<NodeId> = order.iter().take(k).map(|&v| NodeId(v)).collect();
    let members = neighborhood_closure(g, &seeds);
    let graph = induced_subgraph(g, &members)?;

    let seed_set: BTreeSet<NodeId> = seeds.into_iter().collect();
    // induced_subgraph renumbers the sorted member list densely, so flags
    // line up by sorted position.
    let mut sorted = members;
    sorted.sort_unstable();
    sorted.dedup();
    let seed_flags = sorted.iter().map(|v| seed_set.contains(v)).collect();
    Ok(EgoNetwork { graph, seed_flags })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffiliationRow {
    pub affiliation_id: String,
    pub affiliation_name: String,
    pub author_id: String,
    pub publication_count: u32,
}

/// Per-author publication counts grouped by institute, most productive
/// institute first.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AffiliationReport {
    pub rows: Vec<AffiliationRow>,
}

impl AffiliationReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "affiliation_id",
            "affiliation_name",
            "author_id",
            "publication_count",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.affiliation_id.as_str(),
                r.affiliation_name.as_str(),
                r.author_id.as_str(),
                &r.publication_count.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Group the index's counts by affiliation, restricted to `authors`.
///
/// Affiliations are ordered by total publications descending (id ascending
/// on ties); rows within one affiliation by count descending, then author.
pub fn affiliation_report(
    index: &AffiliationIndex,
    authors: &BTreeSet<String>,
) -> AffiliationReport {
    let mut groups: BTreeMap<&str, Vec<(&str, u32)>> = BTreeMap::new();
    for ((author, affiliation), &count) in &index.entries {
        if authors.contains(author) {
            groups
                .entry(affiliation)
                .or_default()
                .push((author, count));
        }
    }

    // (affiliation, publication total, members as (author, count))
    type Group<'a> = (&'a str, u64, Vec<(&'a str, u32)>);
    let mut ordered: Vec<Group> = groups
        .into_iter()
        .map(|(affiliation, mut members)| {
            members.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
            let total: u64 = members.iter().map(|&(_, c)| c as u64).sum();
            (affiliation, total, members)
        })
        .collect();
    ordered.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let mut rows = Vec::new();
    for (affiliation, _, members) in ordered {
        let name = index.names.get(affiliation).cloned().unwrap_or_default();
        for (author, count) in members {
            rows.push(AffiliationRow {
                affiliation_id: affiliation.to_owned(),
                affiliation_name: name.clone(),
                author_id: author.to_owned(),
                publication_count: count,
            });
        }
    }
    AffiliationReport { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Graphml,
    Dot,
    EdgeCsv,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graphml" => Ok(ExportFormat::Graphml),
            "dot" => Ok(ExportFormat::Dot),
            "edge_csv" => Ok(ExportFormat::EdgeCsv),
            other => Err(Error::Argument(format!("unknown export format {other:?}"))),
        }
    }
}

/// Optional per-node columns carried into GraphML and DOT exports.
#[derive(Debug, Clone, Default)]
pub struct Annotations<'a> {
    /// (column name, per-node values), e.g. ("degree", scores).
    pub scores: Vec<(&'a str, &'a [f64])>,
    pub community: Option<&'a [u32]>,
    pub seed_flags: Option<&'a [bool]>,
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Write the graph in the chosen format. Annotations become node attributes
/// in GraphML and DOT; edge_csv is pure structure and a bare
/// `source,target,weight` file round-trips through the edge-list loader.
pub fn export_graph<W: Write>(
    g: &CoauthorGraph,
    format: ExportFormat,
    annotations: &Annotations,
    out: W,
) -> Result<()> {
    let n = g.node_count();
    for (name, values) in &annotations.scores {
        if values.len() != n {
            return Err(Error::Argument(format!(
                "score column {name:?} covers {} nodes, graph has {n}",
                values.len()
            )));
        }
    }
    if let Some(c) = annotations.community {
        if c.len() != n {
            return Err(Error::Argument(format!(
                "community column covers {} nodes, graph has {n}",
                c.len()
            )));
        }
    }
    if let Some(f) = annotations.seed_flags {
        if f.len() != n {
            return Err(Error::Argument(format!(
                "seed column covers {} nodes, graph has {n}",
                f.len()
            )));
        }
    }

    match format {
        ExportFormat::Graphml => write_graphml(g, annotations, out),
        ExportFormat::Dot => write_dot(g, annotations, out),
        ExportFormat::EdgeCsv => write_edge_csv(g, out),
    }
}

fn write_graphml<W: Write>(g: &CoauthorGraph, ann: &Annotations, mut out: W) -> Result<()> {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<graphml xmlns="http://graphml.graphdrawing.org/xmlns" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">"#
    )?;
    writeln!(
        out,
        r#"  <key id="k_author" for="node" attr.name="author_id" attr.type="string"/>"#
    )?;
    for (name, _) in &ann.scores {
        writeln!(
            out,
            r#"  <key id="k_{0}" for="node" attr.name="{0}" attr.type="double"/>"#,
            xml_escape(name)
        )?;
    }
    if ann.community.is_some() {
        writeln!(
            out,
            r#"  <key id="k_community" for="node" attr.name="community" attr.type="long"/>"#
        )?;
    }
    if ann.seed_flags.is_some() {
        writeln!(
            out,
            r#"  <key id="k_seed" for="node" attr.name="seed" attr.type="boolean"/>"#
        )?;
    }
    writeln!(
        out,
        r#"  <key id="k_weight" for="edge" attr.name="weight" attr.type="long"/>"#
    )?;
    writeln!(out, r#"  <graph id="G" edgedefault="undirected">"#)?;
    for v in g.nodes() {
        writeln!(out, r#"    <node id="n{v}">"#)?;
        writeln!(
            out,
            r#"      <data key="k_author">{}</data>"#,
            xml_escape(g.label(v))
        )?;
        for (name, values) in &ann.scores {
            writeln!(
                out,
                r#"      <data key="k_{}">{}</data>"#,
                xml_escape(name),
                values[v.index()]
            )?;
        }
        if let Some(c) = ann.community {
            writeln!(out, r#"      <data key="k_community">{}</data>"#, c[v.index()])?;
        }
        if let Some(f) = ann.seed_flags {
            writeln!(out, r#"      <data key="k_seed">{}</data>"#, f[v.index()])?;
        }
        writeln!(out, r#"    </node>"#)?;
    }
    for (i, (u, v, w)) in g.edges().enumerate() {
        writeln!(
            out,
            r#"    <edge id="e{i}" source="n{u}" target="n{v}"><data key="k_weight">{w}</data></edge>"#
        )?;
    }
    writeln!(out, r#"  </graph>"#)?;
    writeln!(out, r#"</graphml>"#)?;
    Ok(())
}

fn write_dot<W: Write>(g: &CoauthorGraph, ann: &Annotations, mut out: W) -> Result<()> {
    writeln!(out, "graph coauthorship {{")?;
    for v in g.nodes() {
        let mut attrs = vec![format!(r#"label="{}""#, dot_escape(g.label(v)))];
        for (name, values) in &ann.scores {
            attrs.push(format!(r#"{}="{}""#, name, values[v.index()]));
        }
        if let Some(c) = ann.community {
            attrs.push(format!("community={}", c[v.index()]));
        }
        if let Some(f) = ann.seed_flags {
            attrs.push(format!("seed={}", f[v.index()]));
        }
        writeln!(out, "  n{v} [{}];", attrs.join(", "))?;
    }
    for (u, v, w) in g.edges() {
        writeln!(out, "  n{u} -- n{v} [weight={w}];")?;
    }
    writeln!(out, "}}")?;
    Ok(())
}

fn write_edge_csv<W: Write>(g: &CoauthorGraph, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["source", "target", "weight"])?;
    for (u, v, weight) in g.edges() {
        w.write_record([g.label(u), g.label(v), &weight.to_string()])?;
    }
    for v in g.nodes() {
        if g.degree(v) == 0 {
            w.write_record([g.label(v), "", ""])?;
        }
    }
    w.flush()?;
    Ok(())
}

//! The seven subcommands. Each one builds a `Run`, executes its stages, and
//! finishes by writing a manifest recording the effective configuration,
//! input digests, and per-stage wall time.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::Instant;

use coauthnet::centrality::{
    betweenness_centrality, closeness_centrality, degree_centrality, pagerank, CentralityParams,
    CentralityVector, Measure,
};
use coauthnet::community::{detect_communities, Partition};
use coauthnet::ingest::{self, AffiliationIndex};
use coauthnet::report::{
    affiliation_report, ego_network, rank_table, Annotations, CentralitySet, ExportFormat,
};
use coauthnet::stats::{summarize, NetworkSummary};
use coauthnet::{CoauthorGraph, Error, Result};
use serde::Serialize;

use crate::config::RunConfig;
use crate::files::{self, CommunityDoc};

pub const GRAPH_FILE: &str = "graph.csv";
pub const AUTHORS_FILE: &str = "authors.csv";
pub const AFFILIATIONS_FILE: &str = "affiliations.csv";
pub const CAPPED_FILE: &str = "capped_papers.csv";
pub const SUMMARY_JSON: &str = "summary.json";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const COMMUNITIES_CSV: &str = "communities.csv";
pub const COMMUNITIES_JSON: &str = "communities.json";
pub const GRAPHML_FILE: &str = "graph.graphml";
pub const DOT_FILE: &str = "graph.dot";
pub const MANIFEST_FILE: &str = "manifest.json";

pub const MEASURES: [Measure; 4] = [
    Measure::Degree,
    Measure::Betweenness,
    Measure::Closeness,
    Measure::Pagerank,
];

pub fn centrality_json_file(measure: Measure) -> String {
    format!("centrality_{measure}.json")
}

pub fn centrality_csv_file(measure: Measure) -> String {
    format!("centrality_{measure}.csv")
}

#[derive(Serialize)]
struct Stage {
    name: &'static str,
    millis: u64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    /// Input path -> SHA-256 of its bytes.
    inputs: &'a BTreeMap<String, String>,
    stages: &'a [Stage],
}

/// Bookkeeping for one command invocation.
struct Run {
    config: RunConfig,
    command: &'static str,
    inputs: BTreeMap<String, String>,
    stages: Vec<Stage>,
}

impl Run {
    fn new(config: RunConfig, command: &'static str) -> Run {
        Run {
            config,
            command,
            inputs: BTreeMap::new(),
            stages: Vec::new(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.config.output.dir.join(name)
    }

    fn record_input(&mut self, path: &Path) -> Result<()> {
        let digest = files::sha256_hex(path)?;
        self.inputs.insert(path.display().to_string(), digest);
        Ok(())
    }

    fn push_stage(&mut self, name: &'static str, started: Instant) {
        self.stages.push(Stage {
            name,
            millis: started.elapsed().as_millis() as u64,
        });
    }

    fn finish(&self) -> Result<()> {
        let manifest = Manifest {
            tool: "coauthnet",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            config: &self.config,
            inputs: &self.inputs,
            stages: &self.stages,
        };
        files::write_atomic(&self.path(MANIFEST_FILE), |f| {
            serde_json::to_writer_pretty(&mut *f, &manifest)
                .map_err(|e| Error::Parse(e.to_string()))?;
            use std::io::Write;
            writeln!(f)?;
            Ok(())
        })
    }
}

/// Graph input for the analysis commands: explicit `--edge-list` path if
/// given, the ingest output in the run directory otherwise.
fn load_graph_input(run: &mut Run) -> Result<CoauthorGraph> {
    let path = match &run.config.input.edge_list {
        Some(p) => p.clone(),
        None => run.path(GRAPH_FILE),
    };
    run.record_input(&path)?;
    let g = files::load_graph(&path)?;
    eprintln!(
        "[{}] loaded {}: {} authors, {} edges",
        run.command,
        path.display(),
        g.node_count(),
        g.edge_count()
    );
    Ok(g)
}

struct IngestOutput {
    graph: CoauthorGraph,
    names: BTreeMap<String, String>,
    index: AffiliationIndex,
}

fn stage_ingest(run: &mut Run) -> Result<IngestOutput> {
    let cfg = run.config.clone();
    let records_path = cfg.input.records.clone().ok_or_else(|| {
        Error::Config("no records file; pass --records or set input.records".into())
    })?;
    run.record_input(&records_path)?;
    let delimiter = cfg.input.delimiter_byte()?;
    let schema = cfg.schema.to_schema();

    let started = Instant::now();
    let file = files::open_named(&records_path)?;
    let outcome = ingest::parse_records(BufReader::new(file), &schema, delimiter)
        .map_err(|e| files::at_path(&records_path, e))?;
    run.push_stage("parse", started);
    eprintln!(
        "[ingest] {}: {} records parsed, {} rows skipped",
        records_path.display(),
        outcome.records.len(),
        outcome.skipped
    );

    let started = Instant::now();
    let kept = ingest::filter_records(
        &outcome.records,
        cfg.filter.year_min,
        cfg.filter.year_max,
        cfg.filter.field_id.as_deref(),
    )?;
    run.push_stage("filter", started);
    eprintln!(
        "[ingest] {} records kept by filter (years {}..={}{})",
        kept.len(),
        cfg.filter.year_min,
        cfg.filter.year_max,
        match &cfg.filter.field_id {
            Some(f) => format!(", field {f}"),
            None => String::new(),
        }
    );

    let started = Instant::now();
    let projection = ingest::project_coauthorship(&kept, cfg.projection.author_cap);
    let names = ingest::author_names(&kept);
    let index = ingest::build_affiliation_index(&kept);
    run.push_stage("project", started);
    for capped in &projection.capped_papers {
        eprintln!(
            "[ingest] paper {} has {} authors, over the cap of {}; kept its authors, added no edges",
            capped.paper_id, capped.author_count, cfg.projection.author_cap
        );
    }
    let g = &projection.graph;
    eprintln!(
        "[ingest] coauthorship graph: {} authors, {} edges",
        g.node_count(),
        g.edge_count()
    );

    files::write_atomic(&run.path(GRAPH_FILE), |f| {
        coauthnet::report::export_graph(g, ExportFormat::EdgeCsv, &Annotations::default(), f)
    })?;
    files::write_atomic(&run.path(AUTHORS_FILE), |f| {
        let mut w = csv::Writer::from_writer(f);
        w.write_record(["author_id", "author_name"])?;
        for (id, name) in &names {
            w.write_record([id, name])?;
        }
        w.flush()?;
        Ok(())
    })?;
    files::write_atomic(&run.path(AFFILIATIONS_FILE), |f| {
        let mut w = csv::Writer::from_writer(f);
        w.write_record([
            "author_id",
            "affiliation_id",
            "affiliation_name",
            "publication_count",
        ])?;
        for ((author, affiliation), count) in &index.entries {
            let name = index.names.get(affiliation).map_or("", |n| n.as_str());
            w.write_record([author, affiliation, name, &count.to_string()])?;
        }
        w.flush()?;
        Ok(())
    })?;
    files::write_atomic(&run.path(CAPPED_FILE), |f| {
        let mut w = csv::Writer::from_writer(f);
        w.write_record(["paper_id", "author_count"])?;
        for capped in &projection.capped_papers {
            w.write_record([&capped.paper_id, &capped.author_count.to_string()])?;
        }
        w.flush()?;
        Ok(())
    })?;

    Ok(IngestOutput {
        graph: projection.graph,
        names,
        index,
    })
}

fn stage_centrality(run: &mut Run, g: &CoauthorGraph) -> Result<CentralitySet> {
    let cfg = run.config.centrality.clone();

    let started = Instant::now();
    let degree = degree_centrality(g);
    run.push_stage("degree", started);

    let started = Instant::now();
    let betweenness = betweenness_centrality(g, cfg.betweenness_normalization);
    run.push_stage("betweenness", started);

    let started = Instant::now();
    let closeness = closeness_centrality(g, cfg.closeness_mode);
    run.push_stage("closeness", started);

    let started = Instant::now();
    let pagerank = pagerank(g, &cfg.pagerank_options())?;
    run.push_stage("pagerank", started);
    if let CentralityParams::Pagerank { iterations, .. } = &pagerank.params {
        eprintln!("[centrality] pagerank converged after {iterations} iterations");
    }

    let set = CentralitySet {
        degree,
        betweenness,
        closeness,
        pagerank,
    };
    for measure in MEASURES {
        let vector = set.get(measure);
        files::write_atomic(&run.path(&centrality_csv_file(measure)), |f| {
            vector.write_csv(g, f)
        })?;
        files::write_atomic(&run.path(&centrality_json_file(measure)), |f| {
            vector.write_json(g, f)
        })?;
    }
    eprintln!("[centrality] wrote {} score files", 2 * MEASURES.len());
    Ok(set)
}

fn stage_communities(run: &mut Run, g: &CoauthorGraph) -> Result<Partition> {
    let cfg = run.config.community.clone();

    let started = Instant::now();
    let partition = detect_communities(g, cfg.resolution, cfg.seed)?;
    run.push_stage("louvain", started);
    eprintln!(
        "[communities] {} communities, modularity {:.4}",
        partition.community_count, partition.modularity
    );

    files::write_atomic(&run.path(COMMUNITIES_CSV), |f| partition.write_csv(g, f))?;
    let doc = CommunityDoc {
        algorithm: "louvain".into(),
        seed: cfg.seed,
        resolution: cfg.resolution,
        community_count: partition.community_count,
        modularity: partition.modularity,
    };
    files::write_atomic(&run.path(COMMUNITIES_JSON), |f| {
        serde_json::to_writer_pretty(&mut *f, &doc).map_err(|e| Error::Parse(e.to_string()))?;
        use std::io::Write;
        writeln!(f)?;
        Ok(())
    })?;
    Ok(partition)
}

fn stage_stats(run: &mut Run, g: &CoauthorGraph, partition: Option<&Partition>) -> Result<()> {
    let opts = run.config.stats.summary_options();

    // When run standalone after a communities run, pick its modularity up
    // from the summary document in the same directory.
    let mut loaded_modularity = None;
    if partition.is_none() {
        let doc_path = run.path(COMMUNITIES_JSON);
        if doc_path.exists() {
            let doc = files::load_community_doc(&doc_path)?;
            run.record_input(&doc_path)?;
            eprintln!(
                "[stats] using modularity {:.4} from {}",
                doc.modularity,
                doc_path.display()
            );
            loaded_modularity = Some(doc.modularity);
        }
    }

    let started = Instant::now();
    let mut summary = if g.node_count() == 0 {
        eprintln!("[stats] graph has no authors; writing a degenerate summary");
        NetworkSummary::degenerate_empty()
    } else {
        summarize(g, partition, &opts)?
    };
    run.push_stage("stats", started);
    if summary.modularity.is_none() {
        summary.modularity = loaded_modularity;
    }
    eprintln!(
        "[stats] diameter {}{}, avg path length {:.4}, avg clustering {:.4}, {} components",
        summary.diameter,
        if summary.distances_estimated {
            " (sampled)"
        } else {
            ""
        },
        summary.avg_path_length,
        summary.avg_clustering,
        summary.component_count
    );

    files::write_atomic(&run.path(SUMMARY_JSON), |f| {
        summary.write_json(&mut *f)?;
        use std::io::Write;
        writeln!(f)?;
        Ok(())
    })?;
    files::write_atomic(&run.path(SUMMARY_CSV), |f| summary.write_csv(f))?;
    Ok(())
}

fn stage_rank(
    run: &mut Run,
    g: &CoauthorGraph,
    set: &CentralitySet,
    names: &BTreeMap<String, String>,
    index: Option<&AffiliationIndex>,
) -> Result<()> {
    let k = run.config.report.top_k;
    let started = Instant::now();
    for measure in MEASURES {
        let table = rank_table(g, set, measure, k, names)?;
        files::write_atomic(&run.path(&format!("rank_{measure}.csv")), |f| {
            table.write_csv(f)
        })?;
        files::write_atomic(&run.path(&format!("rank_{measure}.json")), |f| {
            table.write_json(f)
        })?;
        if let Some(index) = index {
            let authors: BTreeSet<String> =
                table.rows.iter().map(|r| r.author_id.clone()).collect();
            let report = affiliation_report(index, &authors);
            files::write_atomic(&run.path(&format!("affiliations_top_{measure}.csv")), |f| {
                report.write_csv(f)
            })?;
        }
    }
    run.push_stage("rank", started);
    eprintln!(
        "[rank] wrote top-{} tables for {} measures{}",
        k,
        MEASURES.len(),
        if index.is_some() {
            " with affiliation reports"
        } else {
            ""
        }
    );
    Ok(())
}

fn stage_ego(run: &mut Run, g: &CoauthorGraph, vector: &CentralityVector) -> Result<()> {
    let k = run.config.report.top_k;
    let measure = vector.measure;

    let started = Instant::now();
    let ego = ego_network(g, vector, k)?;
    run.push_stage("ego", started);
    eprintln!(
        "[ego] top-{k} {measure} neighborhood: {} authors, {} edges",
        ego.graph.node_count(),
        ego.graph.edge_count()
    );

    // Carry the seeds' measure into the exports, restricted to ego members.
    let scores: Vec<f64> = ego
        .graph
        .labels()
        .iter()
        .map(|label| {
            let v = g
                .node_by_label(label)
                .expect("ego nodes are drawn from the parent graph");
            vector.scores[v.index()]
        })
        .collect();
    let score_name = measure.to_string();
    let annotations = Annotations {
        scores: vec![(score_name.as_str(), scores.as_slice())],
        community: None,
        seed_flags: Some(&ego.seed_flags),
    };
    files::write_atomic(&run.path(&format!("ego_{measure}.graphml")), |f| {
        coauthnet::report::export_graph(&ego.graph, ExportFormat::Graphml, &annotations, f)
    })?;
    files::write_atomic(&run.path(&format!("ego_{measure}.dot")), |f| {
        coauthnet::report::export_graph(&ego.graph, ExportFormat::Dot, &annotations, f)
    })?;
    files::write_atomic(&run.path(&format!("ego_{measure}_edges.csv")), |f| {
        coauthnet::report::export_graph(&ego.graph, ExportFormat::EdgeCsv, &annotations, f)
    })?;

    let started = Instant::now();
    let summary = if ego.graph.node_count() == 0 {
        NetworkSummary::degenerate_empty()
    } else {
        summarize(&ego.graph, None, &run.config.stats.summary_options())?
    };
    run.push_stage("ego_stats", started);
    files::write_atomic(&run.path(&format!("ego_{measure}_summary.json")), |f| {
        summary.write_json(&mut *f)?;
        use std::io::Write;
        writeln!(f)?;
        Ok(())
    })?;
    files::write_atomic(&run.path(&format!("ego_{measure}_summary.csv")), |f| {
        summary.write_csv(f)
    })?;
    Ok(())
}

pub fn cmd_ingest(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "ingest");
    stage_ingest(&mut run)?;
    run.finish()
}

pub fn cmd_stats(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "stats");
    let g = load_graph_input(&mut run)?;
    stage_stats(&mut run, &g, None)?;
    run.finish()
}

pub fn cmd_centrality(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "centrality");
    let g = load_graph_input(&mut run)?;
    stage_centrality(&mut run, &g)?;
    run.finish()
}

pub fn cmd_communities(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "communities");
    let g = load_graph_input(&mut run)?;
    stage_communities(&mut run, &g)?;
    run.finish()
}

/// Read the four score documents a centrality run left in the output
/// directory, checking each file holds the measure its name promises.
fn load_centrality_outputs(run: &mut Run, g: &CoauthorGraph) -> Result<CentralitySet> {
    let mut vectors = Vec::with_capacity(MEASURES.len());
    for measure in MEASURES {
        let path = run.path(&centrality_json_file(measure));
        run.record_input(&path)?;
        let vector = files::load_scores(&path, g)?;
        if vector.measure != measure {
            return Err(Error::Parse(format!(
                "{}: holds {} scores, expected {measure}",
                path.display(),
                vector.measure
            )));
        }
        vectors.push(vector);
    }
    let [degree, betweenness, closeness, pagerank]: [CentralityVector; 4] =
        vectors.try_into().expect("one vector per measure");
    Ok(CentralitySet {
        degree,
        betweenness,
        closeness,
        pagerank,
    })
}

pub fn cmd_rank(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "rank");
    let g = load_graph_input(&mut run)?;
    let set = load_centrality_outputs(&mut run, &g)?;

    let names_path = run.path(AUTHORS_FILE);
    let names = if names_path.exists() {
        run.record_input(&names_path)?;
        files::load_author_names(&names_path)?
    } else {
        eprintln!(
            "[rank] no {} in the output directory; name column left empty",
            AUTHORS_FILE
        );
        BTreeMap::new()
    };
    let index_path = run.path(AFFILIATIONS_FILE);
    let index = if index_path.exists() {
        run.record_input(&index_path)?;
        Some(files::load_affiliation_index(&index_path)?)
    } else {
        eprintln!(
            "[rank] no {} in the output directory; skipping affiliation reports",
            AFFILIATIONS_FILE
        );
        None
    };

    stage_rank(&mut run, &g, &set, &names, index.as_ref())?;
    run.finish()
}

pub fn cmd_ego(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "ego");
    let g = load_graph_input(&mut run)?;
    let measure = run.config.report.ego_measure;
    let path = run.path(&centrality_json_file(measure));
    run.record_input(&path)?;
    let vector = files::load_scores(&path, &g)?;
    if vector.measure != measure {
        return Err(Error::Parse(format!(
            "{}: holds {} scores, expected {measure}",
            path.display(),
            vector.measure
        )));
    }
    stage_ego(&mut run, &g, &vector)?;
    run.finish()
}

pub fn cmd_pipeline(config: RunConfig) -> Result<()> {
    let mut run = Run::new(config, "pipeline");
    let ingested = stage_ingest(&mut run)?;
    let g = ingested.graph;

    let set = stage_centrality(&mut run, &g)?;
    let partition = stage_communities(&mut run, &g)?;
    stage_stats(&mut run, &g, Some(&partition))?;
    stage_rank(&mut run, &g, &set, &ingested.names, Some(&ingested.index))?;
    let ego_measure = run.config.report.ego_measure;
    stage_ego(&mut run, &g, set.get(ego_measure))?;

    // Whole-graph exports carrying every score column plus the community
    // assignment, for external viewers.
    let started = Instant::now();
    let annotations = Annotations {
        scores: vec![
            ("degree", set.degree.scores.as_slice()),
            ("betweenness", set.betweenness.scores.as_slice()),
            ("closeness", set.closeness.scores.as_slice()),
            ("pagerank", set.pagerank.scores.as_slice()),
        ],
        community: Some(&partition.community_of),
        seed_flags: None,
    };
    files::write_atomic(&run.path(GRAPHML_FILE), |f| {
        coauthnet::report::export_graph(&g, ExportFormat::Graphml, &annotations, f)
    })?;
    files::write_atomic(&run.path(DOT_FILE), |f| {
        coauthnet::report::export_graph(&g, ExportFormat::Dot, &annotations, f)
    })?;
    run.push_stage("export", started);
    eprintln!("[pipeline] done; outputs in {}", run.config.output.dir.display());

    run.finish()
}

//! Command-line front end for the coauthorship-network toolkit.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 input I/O or
//! parse failure, 3 non-convergence.

mod commands;
mod config;
mod files;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use coauthnet::centrality::{BetweennessNorm, ClosenessMode, Measure};
use coauthnet::Error;

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "coauthnet",
    version,
    about = "Coauthorship-network analytics: ingest bibliographic records, \
             compute centralities and communities, rank authors, export graphs"
)]
struct Cli {
    /// TOML config file; the COAUTHNET_CONFIG env var supplies the path when
    /// this flag is absent
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Cap worker threads used by the parallel computations
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Directory all outputs are written into
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse bibliographic records and project the coauthorship graph
    Ingest(IngestArgs),
    /// Summary statistics of a projected graph
    Stats(StatsArgs),
    /// Degree, betweenness, closeness, and PageRank score files
    Centrality(CentralityArgs),
    /// Louvain community detection
    Communities(CommunitiesArgs),
    /// Cross-measure rank tables from previously computed scores
    Rank(RankArgs),
    /// Ego network around the top-k authors of one measure
    Ego(EgoArgs),
    /// Ingest plus every analysis stage in one run
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct IngestFlags {
    /// Bibliographic records file (delimited text with a header row)
    #[arg(long, value_name = "FILE")]
    records: Option<PathBuf>,

    /// Record field delimiter; "\t" for tab
    #[arg(long, value_name = "CHAR")]
    delimiter: Option<String>,

    /// Drop records published before this year
    #[arg(long, value_name = "YEAR")]
    year_min: Option<i32>,

    /// Drop records published after this year
    #[arg(long, value_name = "YEAR")]
    year_max: Option<i32>,

    /// Keep only records tagged with this field-of-study id
    #[arg(long, value_name = "ID")]
    field: Option<String>,

    /// Papers with more distinct authors than this contribute no edges
    #[arg(long, value_name = "N")]
    author_cap: Option<usize>,
}

impl IngestFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = &self.records {
            cfg.input.records = Some(v.clone());
        }
        if let Some(v) = &self.delimiter {
            cfg.input.delimiter = v.clone();
        }
        if let Some(v) = self.year_min {
            cfg.filter.year_min = v;
        }
        if let Some(v) = self.year_max {
            cfg.filter.year_max = v;
        }
        if let Some(v) = &self.field {
            cfg.filter.field_id = Some(v.clone());
        }
        if let Some(v) = self.author_cap {
            cfg.projection.author_cap = v;
        }
    }
}

#[derive(Args)]
struct GraphFlags {
    /// Graph file to analyze (edge CSV); defaults to <out-dir>/graph.csv
    #[arg(long, value_name = "FILE")]
    edge_list: Option<PathBuf>,
}

impl GraphFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = &self.edge_list {
            cfg.input.edge_list = Some(v.clone());
        }
    }
}

#[derive(Args)]
struct CentralityFlags {
    /// Closeness variant: component_scaled or harmonic
    #[arg(long, value_name = "MODE")]
    closeness_mode: Option<ClosenessMode>,

    /// Betweenness scaling: raw, graph, or component
    #[arg(long, value_name = "NORM")]
    betweenness_normalization: Option<BetweennessNorm>,

    /// PageRank damping factor, in [0, 1)
    #[arg(long, value_name = "D")]
    damping: Option<f64>,

    /// PageRank L1 convergence threshold
    #[arg(long, value_name = "TOL")]
    tolerance: Option<f64>,

    /// PageRank iteration cap before reporting non-convergence
    #[arg(long, value_name = "N")]
    max_iterations: Option<usize>,
}

impl CentralityFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.closeness_mode {
            cfg.centrality.closeness_mode = v;
        }
        if let Some(v) = self.betweenness_normalization {
            cfg.centrality.betweenness_normalization = v;
        }
        if let Some(v) = self.damping {
            cfg.centrality.damping = v;
        }
        if let Some(v) = self.tolerance {
            cfg.centrality.tolerance = v;
        }
        if let Some(v) = self.max_iterations {
            cfg.centrality.max_iterations = v;
        }
    }
}

#[derive(Args)]
struct CommunityFlags {
    /// Louvain node-visit shuffle seed
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    /// Louvain resolution parameter; 1.0 is plain modularity
    #[arg(long, value_name = "GAMMA")]
    resolution: Option<f64>,
}

impl CommunityFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.seed {
            cfg.community.seed = v;
        }
        if let Some(v) = self.resolution {
            cfg.community.resolution = v;
        }
    }
}

#[derive(Args)]
struct StatsFlags {
    /// Node count up to which distances are computed exactly
    #[arg(long, value_name = "N")]
    exact_threshold: Option<usize>,

    /// BFS sources sampled once the graph is above the threshold
    #[arg(long, value_name = "N")]
    sample_sources: Option<usize>,

    /// Seed for the distance source sample
    #[arg(long, value_name = "SEED")]
    distance_seed: Option<u64>,

    /// Leave degree-0 and degree-1 nodes out of the clustering mean
    #[arg(long)]
    clustering_exclude_deg1: bool,
}

impl StatsFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.exact_threshold {
            cfg.stats.exact_threshold = v;
        }
        if let Some(v) = self.sample_sources {
            cfg.stats.sample_sources = v;
        }
        if let Some(v) = self.distance_seed {
            cfg.stats.seed = v;
        }
        if self.clustering_exclude_deg1 {
            cfg.stats.clustering_exclude_deg1 = true;
        }
    }
}

#[derive(Args)]
struct ReportFlags {
    /// Rows per rank table and seeds per ego network
    #[arg(long, value_name = "K")]
    top_k: Option<usize>,
}

impl ReportFlags {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.top_k {
            cfg.report.top_k = v;
        }
    }
}

#[derive(Args)]
struct IngestArgs {
    #[command(flatten)]
    ingest: IngestFlags,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    graph: GraphFlags,
    #[command(flatten)]
    stats: StatsFlags,
}

#[derive(Args)]
struct CentralityArgs {
    #[command(flatten)]
    graph: GraphFlags,
    #[command(flatten)]
    centrality: CentralityFlags,
}

#[derive(Args)]
struct CommunitiesArgs {
    #[command(flatten)]
    graph: GraphFlags,
    #[command(flatten)]
    community: CommunityFlags,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    graph: GraphFlags,
    #[command(flatten)]
    report: ReportFlags,
}

#[derive(Args)]
struct EgoArgs {
    #[command(flatten)]
    graph: GraphFlags,
    #[command(flatten)]
    report: ReportFlags,
    #[command(flatten)]
    stats: StatsFlags,

    /// Measure whose top-k authors seed the ego network
    #[arg(long, value_name = "MEASURE")]
    measure: Option<Measure>,
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    ingest: IngestFlags,
    #[command(flatten)]
    centrality: CentralityFlags,
    #[command(flatten)]
    community: CommunityFlags,
    #[command(flatten)]
    stats: StatsFlags,
    #[command(flatten)]
    report: ReportFlags,

    /// Measure whose top-k authors seed the ego network
    #[arg(long, value_name = "MEASURE")]
    measure: Option<Measure>,
}

fn run(cli: Cli) -> coauthnet::Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }

    let mut cfg = config::load(cli.config.as_deref())?;
    if let Some(dir) = &cli.out_dir {
        cfg.output.dir = dir.clone();
    }

    match cli.command {
        Cmd::Ingest(args) => {
            args.ingest.apply(&mut cfg);
            commands::cmd_ingest(cfg)
        }
        Cmd::Stats(args) => {
            args.graph.apply(&mut cfg);
            args.stats.apply(&mut cfg);
            commands::cmd_stats(cfg)
        }
        Cmd::Centrality(args) => {
            args.graph.apply(&mut cfg);
            args.centrality.apply(&mut cfg);
            commands::cmd_centrality(cfg)
        }
        Cmd::Communities(args) => {
            args.graph.apply(&mut cfg);
            args.community.apply(&mut cfg);
            commands::cmd_communities(cfg)
        }
        Cmd::Rank(args) => {
            args.graph.apply(&mut cfg);
            args.report.apply(&mut cfg);
            commands::cmd_rank(cfg)
        }
        Cmd::Ego(args) => {
            args.graph.apply(&mut cfg);
            args.report.apply(&mut cfg);
            args.stats.apply(&mut cfg);
            if let Some(m) = args.measure {
                cfg.report.ego_measure = m;
            }
            commands::cmd_ego(cfg)
        }
        Cmd::Pipeline(args) => {
            args.ingest.apply(&mut cfg);
            args.centrality.apply(&mut cfg);
            args.community.apply(&mut cfg);
            args.stats.apply(&mut cfg);
            args.report.apply(&mut cfg);
            if let Some(m) = args.measure {
                cfg.report.ego_measure = m;
            }
            commands::cmd_pipeline(cfg)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Argument(_) => 1,
        Error::NonConvergence { .. } => 3,
        _ => 2,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // Prints help to stdout, usage errors to stderr.
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

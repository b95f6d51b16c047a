//! Run configuration with strict layering: built-in defaults, then a TOML
//! config file, then command-line flags. The effective configuration is
//! echoed verbatim into each run's manifest so a run can be reproduced from
//! its output directory alone.

use std::path::{Path, PathBuf};

use coauthnet::centrality::{BetweennessNorm, ClosenessMode, Measure, PagerankOptions};
use coauthnet::ingest::{Schema, DEFAULT_AUTHOR_CAP};
use coauthnet::stats::SummaryOptions;
use coauthnet::{Error, Result};
use serde::{Deserialize, Serialize};

/// Environment variable holding the default config file path, used when
/// `--config` is not given.
pub const CONFIG_ENV: &str = "COAUTHNET_CONFIG";

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: InputConfig,
    pub schema: SchemaConfig,
    pub filter: FilterConfig,
    pub projection: ProjectionConfig,
    pub centrality: CentralityConfig,
    pub community: CommunityConfig,
    pub stats: StatsConfig,
    pub report: ReportConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InputConfig {
    /// Bibliographic records file consumed by ingest and pipeline.
    pub records: Option<PathBuf>,
    /// Field delimiter of the records file, one byte. "\t" means tab.
    pub delimiter: String,
    /// Graph file consumed by the analysis commands instead of
    /// `<output.dir>/graph.csv`.
    pub edge_list: Option<PathBuf>,
}

impl Default for InputConfig {
    fn default() -> Self {
        InputConfig {
            records: None,
            delimiter: "\t".into(),
            edge_list: None,
        }
    }
}

impl InputConfig {
    pub fn delimiter_byte(&self) -> Result<u8> {
        // Shells pass `--delimiter "\t"` through as backslash-t; accept it.
        let translated = match self.delimiter.as_str() {
            "\\t" => "\t",
            other => other,
        };
        match translated.as_bytes() {
            [b] => Ok(*b),
            _ => Err(Error::Config(format!(
                "delimiter must be a single byte, got {:?}",
                self.delimiter
            ))),
        }
    }
}

/// Maps the seven logical record columns onto the input file's header names.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchemaConfig {
    pub paper_id: String,
    pub author_id: String,
    pub author_name: String,
    pub affiliation_id: String,
    pub affiliation_name: String,
    pub year: String,
    pub field_id: String,
}

impl Default for SchemaConfig {
    fn default() -> Self {
        let s = Schema::default();
        SchemaConfig {
            paper_id: s.paper_id,
            author_id: s.author_id,
            author_name: s.author_name,
            affiliation_id: s.affiliation_id,
            affiliation_name: s.affiliation_name,
            year: s.year,
            field_id: s.field_id,
        }
    }
}

impl SchemaConfig {
    pub fn to_schema(&self) -> Schema {
        Schema {
            paper_id: self.paper_id.clone(),
            author_id: self.author_id.clone(),
            author_name: self.author_name.clone(),
            affiliation_id: self.affiliation_id.clone(),
            affiliation_name: self.affiliation_name.clone(),
            year: self.year.clone(),
            field_id: self.field_id.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub year_min: i32,
    pub year_max: i32,
    /// Keep only records tagged with this field-of-study id.
    pub field_id: Option<String>,
}

impl Default for FilterConfig {
    fn default() -> Self {
        // The parser already rejects years outside this range, so the
        // default filter keeps everything.
        FilterConfig {
            year_min: 1000,
            year_max: 3000,
            field_id: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProjectionConfig {
    /// Papers with more distinct authors than this contribute no edges.
    pub author_cap: usize,
}

impl Default for ProjectionConfig {
    fn default() -> Self {
        ProjectionConfig {
            author_cap: DEFAULT_AUTHOR_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CentralityConfig {
    pub closeness_mode: ClosenessMode,
    pub betweenness_normalization: BetweennessNorm,
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for CentralityConfig {
    fn default() -> Self {
        let pr = PagerankOptions::default();
        CentralityConfig {
            closeness_mode: ClosenessMode::ComponentScaled,
            betweenness_normalization: BetweennessNorm::Graph,
            damping: pr.damping,
            tolerance: pr.tolerance,
            max_iterations: pr.max_iterations,
        }
    }
}

impl CentralityConfig {
    pub fn pagerank_options(&self) -> PagerankOptions {
        PagerankOptions {
            damping: self.damping,
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CommunityConfig {
    pub seed: u64,
    pub resolution: f64,
}

impl Default for CommunityConfig {
    fn default() -> Self {
        CommunityConfig {
            seed: 42,
            resolution: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StatsConfig {
    /// Node count up to which distances are computed exactly.
    pub exact_threshold: usize,
    /// BFS sources sampled once the graph is above the threshold.
    pub sample_sources: usize,
    /// Seed for the distance source sample.
    pub seed: u64,
    /// Leave degree-0 and degree-1 nodes out of the clustering mean.
    pub clustering_exclude_deg1: bool,
}

impl Default for StatsConfig {
    fn default() -> Self {
        let o = SummaryOptions::default();
        StatsConfig {
            exact_threshold: o.exact_threshold,
            sample_sources: o.sample_sources,
            seed: o.seed,
            clustering_exclude_deg1: o.clustering_exclude_deg1,
        }
    }
}

impl StatsConfig {
    pub fn summary_options(&self) -> SummaryOptions {
        SummaryOptions {
            exact_threshold: self.exact_threshold,
            sample_sources: self.sample_sources,
            seed: self.seed,
            clustering_exclude_deg1: self.clustering_exclude_deg1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportConfig {
    /// Rows per rank table and seed count for the ego network.
    pub top_k: usize,
    /// Measure whose top-k authors seed the ego network.
    pub ego_measure: Measure,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            top_k: 10,
            ego_measure: Measure::Degree,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Directory all outputs are written into.
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: "out".into() }
    }
}

/// Load the config file named by `--config`, falling back to the
/// `COAUTHNET_CONFIG` environment variable, falling back to defaults.
pub fn load(explicit: Option<&Path>) -> Result<RunConfig> {
    let path: Option<PathBuf> = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CONFIG_ENV).map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))
}

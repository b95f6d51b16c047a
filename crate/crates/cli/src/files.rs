//! File plumbing shared by the commands: atomic writes, input digests, and
//! readers for the artifacts earlier stages leave behind.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::Path;

use coauthnet::centrality::{CentralityParams, CentralityVector, Measure};
use coauthnet::graph::NodeId;
use coauthnet::ingest::AffiliationIndex;
use coauthnet::{CoauthorGraph, Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Write via a temp file in the target directory plus rename, so a crashed
/// or interrupted run never leaves a half-written output behind.
pub fn write_atomic(path: &Path, write: impl FnOnce(&mut File) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write(tmp.as_file_mut())?;
    tmp.as_file_mut().flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Open a file for reading, with the path in the error message.
pub fn open_named(path: &Path) -> Result<File> {
    File::open(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn sha256_hex(path: &Path) -> Result<String> {
    let mut file = open_named(path)?;
    let mut hasher = Sha256::new();
    io::copy(&mut file, &mut hasher)?;
    let mut hex = String::with_capacity(64);
    for byte in hasher.finalize() {
        write!(hex, "{byte:02x}").expect("writing to a String cannot fail");
    }
    Ok(hex)
}

/// Keep an error's category but prefix its message with the file it came
/// from; raw CSV errors are reported as parse failures.
pub fn at_path(path: &Path, e: Error) -> Error {
    let p = path.display();
    match e {
        Error::Config(m) => Error::Config(format!("{p}: {m}")),
        Error::Parse(m) => Error::Parse(format!("{p}: {m}")),
        Error::Csv(err) => Error::Parse(format!("{p}: {err}")),
        other => other,
    }
}

pub fn load_graph(path: &Path) -> Result<CoauthorGraph> {
    let file = open_named(path)?;
    coauthnet::ingest::load_edge_list(BufReader::new(file)).map_err(|e| at_path(path, e))
}

#[derive(Deserialize)]
struct ScoreRow {
    author_id: String,
    score: f64,
}

#[derive(Deserialize)]
struct ScoreDoc {
    measure: Measure,
    params: CentralityParams,
    scores: Vec<ScoreRow>,
}

/// Read a centrality JSON document written by an earlier run and align its
/// scores with `g`'s node ids. The document must cover exactly the graph's
/// authors.
pub fn load_scores(path: &Path, g: &CoauthorGraph) -> Result<CentralityVector> {
    let file = open_named(path)?;
    let doc: ScoreDoc = serde_json::from_reader(BufReader::new(file))
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;

    let n = g.node_count();
    if doc.scores.len() != n {
        return Err(Error::Parse(format!(
            "{}: scores cover {} authors, graph has {n}",
            path.display(),
            doc.scores.len()
        )));
    }
    let mut scores = vec![0.0f64; n];
    let mut seen = vec![false; n];
    for row in &doc.scores {
        let Some(v) = g.node_by_label(&row.author_id) else {
            return Err(Error::Parse(format!(
                "{}: author {:?} is not in the graph",
                path.display(),
                row.author_id
            )));
        };
        if std::mem::replace(&mut seen[v.index()], true) {
            return Err(Error::Parse(format!(
                "{}: duplicate author {:?}",
                path.display(),
                row.author_id
            )));
        }
        scores[v.index()] = row.score;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::Parse(format!(
            "{}: no score for author {:?}",
            path.display(),
            g.label(NodeId(missing as u32))
        )));
    }
    Ok(CentralityVector {
        measure: doc.measure,
        scores,
        params: doc.params,
    })
}

/// Summary document written next to the membership CSV by the communities
/// command.
#[derive(Debug, Serialize, Deserialize)]
pub struct CommunityDoc {
    pub algorithm: String,
    pub seed: u64,
    pub resolution: f64,
    pub community_count: usize,
    pub modularity: f64,
}

pub fn load_community_doc(path: &Path) -> Result<CommunityDoc> {
    let file = open_named(path)?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Read `author_id,author_name` rows.
pub fn load_author_names(path: &Path) -> Result<BTreeMap<String, String>> {
    let file = open_named(path)?;
    let mut reader = csv::Reader::from_reader(BufReader::new(file));
    let mut names = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| at_path(path, Error::Csv(e)))?;
        let (Some(id), Some(name)) = (record.get(0), record.get(1)) else {
            return Err(Error::Parse(format!(
                "{}: expected author_id,author_name rows",
                path.display()
            )));
        };
        names.insert(id.to_string(), name.to_string());
    }
    Ok(names)
}

/// Read `author_id,affiliation_id,affiliation_name,publication_count` rows
/// back into an affiliation index.
pub fn load_affiliation_index(path: &Path) -> Result<AffiliationIndex> {
    let file = open_named(path)?;
    let mut reader = csv::Reader::from_reader(BufReader::new(file));
    let mut index = AffiliationIndex::default();
    for record in reader.records() {
        let record = record.map_err(|e| at_path(path, Error::Csv(e)))?;
        let (Some(author), Some(affiliation), Some(name), Some(count)) = (
            record.get(0),
            record.get(1),
            record.get(2),
            record.get(3),
        ) else {
            return Err(Error::Parse(format!(
                "{}: expected author_id,affiliation_id,affiliation_name,publication_count rows",
                path.display()
            )));
        };
        let count: u32 = count.parse().map_err(|e| {
            Error::Parse(format!("{}: publication count {count:?}: {e}", path.display()))
        })?;
        index
            .entries
            .insert((author.to_string(), affiliation.to_string()), count);
        if !name.is_empty() {
            index
                .names
                .entry(affiliation.to_string())
                .or_insert_with(|| name.to_string());
        }
    }
    Ok(index)
}

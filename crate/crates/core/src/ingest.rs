//! Bibliographic record parsing, filtering, and projection.
//!
//! The input is delimiter-separated text with a header row carrying one
//! (paper, author, affiliation, year, field) tuple per line. Records are
//! projected onto the coauthorship graph by clique expansion: every
//! unordered pair of distinct authors on one paper gains one unit of edge
//! weight.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{BufRead, Read};

use crate::error::{Error, Result};
use crate::graph::{CoauthorGraph, NodeId};

/// One bibliographic row. Affiliation fields may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub paper_id: String,
    pub author_id: String,
    pub author_name: String,
    pub affiliation_id: String,
    pub affiliation_name: String,
    pub year: i32,
    pub field_id: String,
}

/// Maps the seven logical columns onto header names of the input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub paper_id: String,
    pub author_id: String,
    pub author_name: String,
    pub affiliation_id: String,
    pub affiliation_name: String,
    pub year: String,
    pub field_id: String,
}

impl Default for Schema {
    /// Identity mapping: header names equal the logical column names.
    fn default() -> Self {
        Schema {
            paper_id: "paper_id".into(),
            author_id: "author_id".into(),
            author_name: "author_name".into(),
            affiliation_id: "affiliation_id".into(),
            affiliation_name: "affiliation_name".into(),
            year: "year".into(),
            field_id: "field_id".into(),
        }
    }
}

/// Result of a parse: the good rows plus how many were skipped as malformed.
#[derive(Debug)]
pub struct ParseOutcome {
    pub records: Vec<PaperRecord>,
    pub skipped: usize,
}

/// Parse delimiter-separated records with a required header row.
///
/// Rows missing a mapped field, with an empty paper or author id, or with an
/// unparseable or out-of-range year are counted and skipped rather than
/// failing the whole file; bibliographic dumps are dirty. A header that
/// lacks a mapped column is a configuration error.
pub fn parse_records<R: Read>(input: R, schema: &Schema, delimiter: u8) -> Result<ParseOutcome> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .flexible(true)
        .from_reader(input);

    let headers = reader.headers()?.clone();
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("column {name:?} not found in header")))
    };
    let paper_col = col(&schema.paper_id)?;
    let author_col = col(&schema.author_id)?;
    let author_name_col = col(&schema.author_name)?;
    let affiliation_col = col(&schema.affiliation_id)?;
    let affiliation_name_col = col(&schema.affiliation_name)?;
    let year_col = col(&schema.year)?;
    let field_col = col(&schema.field_id)?;

    let mut records = Vec::new();
    let mut skipped = 0usize;
    for row in reader.records() {
        let row = row?;
        let field = |i: usize| row.get(i).map(str::trim);
        let (paper_id, author_id, year_text) = match (field(paper_col), field(author_col), field(year_col)) {
            (Some(p), Some(a), Some(y)) if !p.is_empty() && !a.is_empty() => (p, a, y),
            _ => {
                skipped += 1;
                continue;
            }
        };
        let year = match year_text.parse::<i32>() {
            Ok(y) if (1000..=3000).contains(&y) => y,
            _ => {
                skipped += 1;
                continue;
            }
        };
        records.push(PaperRecord {
            paper_id: paper_id.to_owned(),
            author_id: author_id.to_owned(),
            author_name: field(author_name_col).unwrap_or("").to_owned(),
            affiliation_id: field(affiliation_col).unwrap_or("").to_owned(),
            affiliation_name: field(affiliation_name_col).unwrap_or("").to_owned(),
            year,
            field_id: field(field_col).unwrap_or("").to_owned(),
        });
    }
    Ok(ParseOutcome { records, skipped })
}

/// Keep records with `year_min <= year <= year_max` and, if given, a
/// matching field id. Order is preserved.
pub fn filter_records(
    records: &[PaperRecord],
    year_min: i32,
    year_max: i32,
    field_id: Option<&str>,
) -> Result<Vec<PaperRecord>> {
    if year_min > year_max {
        return Err(Error::Argument(format!(
            "inverted year range {year_min}..{year_max}"
        )));
    }
    Ok(records
        .iter()
        .filter(|r| {
            r.year >= year_min
                && r.year <= year_max
                && field_id.is_none_or(|f| r.field_id == f)
        })
        .cloned()
        .collect())
}

pub const DEFAULT_AUTHOR_CAP: usize = 200;

/// A paper whose clique expansion was skipped because its author list
/// exceeded the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPaper {
    pub paper_id: String,
    pub author_count: usize,
}

#[derive(Debug)]
pub struct Projection {
    pub graph: CoauthorGraph,
    pub capped_papers: Vec<CappedPaper>,
}

/// Project records onto the coauthorship graph by clique expansion.
///
/// Authors are deduplicated within each paper, so a repeated author row adds
/// no self-loop. Node ids are assigned in ascending author-id order, which
/// makes the result independent of record order. Papers with more distinct
/// authors than `author_cap` keep their authors as nodes but contribute no
/// edges; they are reported in `capped_papers`.
pub fn project_coauthorship(records: &[PaperRecord], author_cap: usize) -> Projection {
    let mut authors: BTreeSet<&str> = BTreeSet::new();
    let mut papers: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for r in records {
        authors.insert(&r.author_id);
        papers.entry(&r.paper_id).or_default().insert(&r.author_id);
    }

    let labels: Vec<String> = authors.iter().map(|&a| a.to_owned()).collect();
    let id_of: HashMap<&str, u32> = authors
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i as u32))
        .collect();

    let mut weight_of: HashMap<(u32, u32), u32> = HashMap::new();
    let mut capped_papers = Vec::new();
    for (paper, members) in &papers {
        if members.len() > author_cap {
            capped_papers.push(CappedPaper {
                paper_id: (*paper).to_owned(),
                author_count: members.len(),
            });
            continue;
        }
        let ids: Vec<u32> = members.iter().map(|a| id_of[a]).collect();
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                let key = (u.min(v), u.max(v));
                *weight_of.entry(key).or_insert(0) += 1;
            }
        }
    }

    let mut edges: Vec<(u32, u32, u32)> = weight_of
        .into_iter()
        .map(|((u, v), w)| (u, v, w))
        .collect();
    edges.sort_unstable();
    Projection {
        graph: CoauthorGraph::from_weighted_edges(labels, edges),
        capped_papers,
    }
}

/// Publication counts per (author, affiliation) pair.
#[derive(Debug, Clone, Default)]
pub struct AffiliationIndex {
    /// (author_id, affiliation_id) -> number of distinct papers.
    pub entries: BTreeMap<(String, String), u32>,
    /// affiliation_id -> display name (first non-empty seen).
    pub names: BTreeMap<String, String>,
}

/// Count distinct papers per (author, affiliation) pair.
///
/// Duplicate rows of the same paper count once; records with an empty
/// affiliation id are excluded.
pub fn build_affiliation_index(records: &[PaperRecord]) -> AffiliationIndex {
    let mut index = AffiliationIndex::default();
    let mut seen: HashSet<(&str, &str, &str)> = HashSet::new();
    for r in records {
        if r.affiliation_id.is_empty() {
            continue;
        }
        if !seen.insert((&r.author_id, &r.affiliation_id, &r.paper_id)) {
            continue;
        }
        *index
            .entries
            .entry((r.author_id.clone(), r.affiliation_id.clone()))
            .or_insert(0) += 1;
        if !r.affiliation_name.is_empty() {
            index
                .names
                .entry(r.affiliation_id.clone())
                .or_insert_with(|| r.affiliation_name.clone());
        }
    }
    index
}

/// author_id -> display name (first non-empty seen, in record order).
pub fn author_names(records: &[PaperRecord]) -> BTreeMap<String, String> {
    let mut names = BTreeMap::new();
    for r in records {
        if !r.author_name.is_empty() {
            names
                .entry(r.author_id.clone())
                .or_insert_with(|| r.author_name.clone());
        }
    }
    names
}

/// Renumber nodes so labels ascend. Loaded graphs get the same node order
/// as projected ones, so row order in an edge file never leaks into the
/// node order of downstream output.
fn sort_nodes_by_label(g: CoauthorGraph) -> CoauthorGraph {
    let mut order: Vec<u32> = (0..g.node_count() as u32).collect();
    order.sort_by(|&a, &b| g.label(NodeId(a)).cmp(g.label(NodeId(b))));
    let mut rank = vec![0u32; g.node_count()];
    for (new_id, &old) in order.iter().enumerate() {
        rank[old as usize] = new_id as u32;
    }
    let labels: Vec<String> = order
        .iter()
        .map(|&v| g.label(NodeId(v)).to_owned())
        .collect();
    let mut edges: Vec<(u32, u32, u32)> = g
        .edges()
        .map(|(u, v, w)| {
            let (a, b) = (rank[u.index()], rank[v.index()]);
            (a.min(b), a.max(b), w)
        })
        .collect();
    edges.sort_unstable();
    CoauthorGraph::from_weighted_edges(labels, edges)
}

/// Load a pre-projected graph from an edge-list file.
///
/// Two layouts are accepted, sniffed from the first content line:
/// - plain pairs: one `id<TAB>id` per line, `#` comments and blank lines
///   ignored; repeated pairs raise the edge weight;
/// - exported CSV: a `source,target,weight` header, one edge per row, and
///   rows with an empty target declaring isolated nodes.
///
/// Node ids are assigned in ascending label order either way.
pub fn load_edge_list<R: Read>(input: R) -> Result<CoauthorGraph> {
    let mut lines = Vec::new();
    for line in std::io::BufReader::new(input).lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lines.push(trimmed.to_owned());
    }
    if lines.is_empty() {
        return Ok(CoauthorGraph::build::<&str>(&[]));
    }

    if lines[0] == "source,target,weight" {
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
        for (lineno, line) in lines.iter().enumerate().skip(1) {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(line.as_bytes());
            let row = reader
                .records()
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: empty row", lineno + 1)))??;
            let source = row.get(0).unwrap_or("").trim();
            let target = row.get(1).unwrap_or("").trim();
            if source.is_empty() {
                return Err(Error::Parse(format!("line {}: missing source", lineno + 1)));
            }
            let u = intern(source, &mut labels);
            if target.is_empty() {
                continue; // isolated node row
            }
            let v = intern(target, &mut labels);
            if u == v {
                continue;
            }
            let w: u32 = row
                .get(2)
                .unwrap_or("")
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad weight", lineno + 1)))?;
            if w == 0 {
                return Err(Error::Parse(format!("line {}: zero weight", lineno + 1)));
            }
            let key = (u.min(v), u.max(v));
            *weight_of.entry(key).or_insert(0) += w;
        }
        let mut edges: Vec<(u32, u32, u32)> = weight_of
            .into_iter()
            .map(|((u, v), w)| (u, v, w))
            .collect();
        edges.sort_unstable();
        return Ok(sort_nodes_by_label(CoauthorGraph::from_weighted_edges(
            labels, edges,
        )));
    }

    let mut pairs = Vec::new();
    for (lineno, line) in lines.iter().enumerate() {
        let mut parts = line.split('\t');
        match (parts.next(), parts.next()) {
            (Some(a), Some(b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                pairs.push((a.trim().to_owned(), b.trim().to_owned()));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected id<TAB>id",
                    lineno + 1
                )))
            }
        }
    }
    Ok(sort_nodes_by_label(CoauthorGraph::build(&pairs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(paper: &str, author: &str, year: i32, field: &str) -> PaperRecord {
        PaperRecord {
            paper_id: paper.into(),
            author_id: author.into(),
            author_name: format!("Name {author}"),
            affiliation_id: String::new(),
            affiliation_name: String::new(),
            year,
            field_id: field.into(),
        }
    }

    const HEADER: &str = "paper_id\tauthor_id\tauthor_name\taffiliation_id\taffiliation_name\tyear\tfield_id";

    #[test]
    fn parses_well_formed_rows() {
        let text = format!(
            "{HEADER}\np1\ta1\tAda\ti1\tInst One\t2005\tf1\np1\ta2\tBen\ti2\tInst Two\t2005\tf1\np2\ta1\tAda\ti1\tInst One\t2006\tf1\n"
        );
        let out = parse_records(text.as_bytes(), &Schema::default(), b'\t').unwrap();
        assert_eq!(out.records.len(), 3);
        assert_eq!(out.skipped, 0);
        assert_eq!(out.records[0].paper_id, "p1");
        assert_eq!(out.records[2].year, 2006);
    }

    #[test]
    fn empty_paper_id_is_skipped_and_counted() {
        let text = format!("{HEADER}\n\ta1\tAda\t\t\t2005\tf1\np2\ta2\tBen\t\t\t2005\tf1\n");
        let out = parse_records(text.as_bytes(), &Schema::default(), b'\t').unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.skipped, 1);
    }

    #[test]
    fn bad_year_is_skipped() {
        let text = format!("{HEADER}\np1\ta1\tAda\t\t\tMMXX\tf1\np2\ta1\tAda\t\t\t999\tf1\n");
        let out = parse_records(text.as_bytes(), &Schema::default(), b'\t').unwrap();
        assert_eq!(out.records.len(), 0);
        assert_eq!(out.skipped, 2);
    }

    #[test]
    fn missing_mapped_column_is_a_config_error() {
        let text = "paper_id\tauthor_id\np1\ta1\n";
        let err = parse_records(text.as_bytes(), &Schema::default(), b'\t').unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{err}");
    }

    #[test]
    fn custom_schema_maps_header_names() {
        let text = "PaperId,AuthorId,AuthorName,AffilId,AffilName,Year,FieldId\np1,a1,Ada,i1,Inst,2001,f1\n";
        let schema = Schema {
            paper_id: "PaperId".into(),
            author_id: "AuthorId".into(),
            author_name: "AuthorName".into(),
            affiliation_id: "AffilId".into(),
            affiliation_name: "AffilName".into(),
            year: "Year".into(),
            field_id: "FieldId".into(),
        };
        let out = parse_records(text.as_bytes(), &schema, b',').unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].affiliation_name, "Inst");
    }

    #[test]
    fn generated_fixture_parse_count_matches_bookkeeping() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let mut text = String::from(HEADER);
        text.push('\n');
        let mut bad = 0usize;
        let total = 10_000;
        for i in 0..total {
            if rng.random_range(0..100) < 7 {
                bad += 1;
                // Inject one of the malformed shapes.
                match rng.random_range(0..3) {
                    0 => text.push_str(&format!("\ta{i}\tN\t\t\t2005\tf\n")),
                    1 => text.push_str(&format!("p{i}\t\tN\t\t\t2005\tf\n")),
                    _ => text.push_str(&format!("p{i}\ta{i}\tN\t\t\tbogus\tf\n")),
                }
            } else {
                text.push_str(&format!("p{i}\ta{i}\tN\t\t\t2005\tf\n"));
            }
        }
        let out = parse_records(text.as_bytes(), &Schema::default(), b'\t').unwrap();
        assert_eq!(out.records.len(), total - bad);
        assert_eq!(out.skipped, bad);
    }

    #[test]
    fn filter_keeps_inclusive_year_range() {
        let records = vec![
            record("p1", "a", 1999, "f"),
            record("p2", "b", 2000, "f"),
            record("p3", "c", 2016, "f"),
            record("p4", "d", 2017, "f"),
        ];
        let kept = filter_records(&records, 2000, 2016, None).unwrap();
        assert_eq!(
            kept.iter().map(|r| r.year).collect::<Vec<_>>(),
            vec![2000, 2016]
        );
    }

    #[test]
    fn filter_on_absent_field_is_empty() {
        let records = vec![record("p1", "a", 2005, "f1")];
        let kept = filter_records(&records, 2000, 2016, Some("nope")).unwrap();
        assert!(kept.is_empty());
    }

    #[test]
    fn filter_rejects_inverted_range() {
        let err = filter_records(&[], 2016, 2000, None).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn filter_matches_linear_scan_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let fields = ["f1", "f2", "f3"];
        let records: Vec<PaperRecord> = (0..500)
            .map(|i| {
                record(
                    &format!("p{i}"),
                    &format!("a{}", rng.random_range(0..40)),
                    rng.random_range(1995..2020),
                    fields[rng.random_range(0..3)],
                )
            })
            .collect();
        let kept = filter_records(&records, 2000, 2010, Some("f2")).unwrap();
        let oracle: Vec<PaperRecord> = records
            .iter()
            .filter(|r| r.year >= 2000 && r.year <= 2010 && r.field_id == "f2")
            .cloned()
            .collect();
        assert_eq!(kept, oracle);
    }

    #[test]
    fn one_paper_expands_to_a_clique() {
        let records = vec![
            record("p1", "a", 2001, "f"),
            record("p1", "b", 2001, "f"),
            record("p1", "c", 2001, "f"),
        ];
        let projection = project_coauthorship(&records, DEFAULT_AUTHOR_CAP);
        let g = &projection.graph;
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        for (_, _, w) in g.edges() {
            assert_eq!(w, 1);
        }
    }

    #[test]
    fn repeat_collaboration_raises_weight() {
        let records = vec![
            record("p1", "a", 2001, "f"),
            record("p1", "b", 2001, "f"),
            record("p2", "a", 2002, "f"),
            record("p2", "b", 2002, "f"),
        ];
        let g = project_coauthorship(&records, DEFAULT_AUTHOR_CAP).graph;
        assert_eq!(g.edge_count(), 1);
        let (u, v) = (g.node_by_label("a").unwrap(), g.node_by_label("b").unwrap());
        assert_eq!(g.weight(u, v), Some(2));
    }

    #[test]
    fn duplicate_author_row_adds_no_self_loop() {
        let records = vec![
            record("p1", "a", 2001, "f"),
            record("p1", "a", 2001, "f"),
        ];
        let g = project_coauthorship(&records, DEFAULT_AUTHOR_CAP).graph;
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn capped_paper_adds_nodes_but_no_edges() {
        let records: Vec<PaperRecord> = (0..6)
            .map(|i| record("big", &format!("a{i}"), 2001, "f"))
            .collect();
        let projection = project_coauthorship(&records, 5);
        assert_eq!(projection.graph.node_count(), 6);
        assert_eq!(projection.graph.edge_count(), 0);
        assert_eq!(
            projection.capped_papers,
            vec![CappedPaper {
                paper_id: "big".into(),
                author_count: 6
            }]
        );
    }

    #[test]
    fn projection_matches_pair_counting_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut records = Vec::new();
        for p in 0..50 {
            let k = rng.random_range(1..=6);
            for _ in 0..k {
                records.push(record(
                    &format!("p{p}"),
                    &format!("a{}", rng.random_range(0..30)),
                    2005,
                    "f",
                ));
            }
        }
        let g = project_coauthorship(&records, DEFAULT_AUTHOR_CAP).graph;

        // Oracle: nested-loop pair counting over per-paper author sets.
        let mut by_paper: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for r in &records {
            by_paper.entry(&r.paper_id).or_default().insert(&r.author_id);
        }
        let mut oracle: BTreeMap<(String, String), u32> = BTreeMap::new();
        for authors in by_paper.values() {
            let v: Vec<&&str> = authors.iter().collect();
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    let (a, b) = (v[i].to_string(), v[j].to_string());
                    *oracle.entry((a.clone().min(b.clone()), a.max(b))).or_insert(0) += 1;
                }
            }
        }
        let got: BTreeMap<(String, String), u32> = g
            .edges()
            .map(|(u, v, w)| ((g.label(u).to_owned(), g.label(v).to_owned()), w))
            .collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn projection_is_record_order_independent() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut records = Vec::new();
        for p in 0..20 {
            for a in 0..4 {
                records.push(record(&format!("p{p}"), &format!("a{}", (p + a * 3) % 15), 2005, "f"));
            }
        }
        let before = project_coauthorship(&records, DEFAULT_AUTHOR_CAP).graph;
        let mut shuffled = records.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(5));
        let after = project_coauthorship(&shuffled, DEFAULT_AUTHOR_CAP).graph;

        assert_eq!(before.labels(), after.labels());
        assert_eq!(
            before.edges().collect::<Vec<_>>(),
            after.edges().collect::<Vec<_>>()
        );
    }

    #[test]
    fn affiliation_counts_distinct_papers() {
        let mut r1 = record("p1", "a", 2001, "f");
        r1.affiliation_id = "X".into();
        r1.affiliation_name = "Inst X".into();
        let mut r2 = record("p2", "a", 2002, "f");
        r2.affiliation_id = "X".into();
        r2.affiliation_name = "Inst X".into();
        let index = build_affiliation_index(&[r1.clone(), r2]);
        assert_eq!(index.entries[&("a".to_string(), "X".to_string())], 2);
        assert_eq!(index.names["X"], "Inst X");

        // Duplicated rows of one paper still count once.
        let index = build_affiliation_index(&[r1.clone(), r1]);
        assert_eq!(index.entries[&("a".to_string(), "X".to_string())], 1);
    }

    #[test]
    fn affiliation_index_matches_group_by_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let mut records = Vec::new();
        for i in 0..400 {
            let mut r = record(
                &format!("p{}", rng.random_range(0..60)),
                &format!("a{}", rng.random_range(0..20)),
                2005,
                "f",
            );
            let inst = rng.random_range(0..8);
            if inst > 0 {
                r.affiliation_id = format!("i{inst}");
                r.affiliation_name = format!("Institute {inst}");
            }
            records.push(r);
            let _ = i;
        }
        let index = build_affiliation_index(&records);

        let mut oracle: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
        for r in &records {
            if r.affiliation_id.is_empty() {
                continue;
            }
            oracle
                .entry((r.author_id.clone(), r.affiliation_id.clone()))
                .or_default()
                .insert(r.paper_id.clone());
        }
        assert_eq!(index.entries.len(), oracle.len());
        for (key, papers) in oracle {
            assert_eq!(index.entries[&key], papers.len() as u32);
        }
    }

    #[test]
    fn edge_list_pairs_roundtrip() {
        let text = "# coauthor pairs\na\tb\nb\ta\n\na\tc\n";
        let g = load_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let (a, b) = (g.node_by_label("a").unwrap(), g.node_by_label("b").unwrap());
        assert_eq!(g.weight(a, b), Some(2));
    }

    #[test]
    fn edge_list_rejects_malformed_line() {
        let err = load_edge_list("a\tb\nlonely\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn edge_list_csv_mode_reads_isolated_nodes() {
        let text = "source,target,weight\na,b,2\nc,,\n";
        let g = load_edge_list(text.as_bytes()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(g.node_by_label("c").unwrap()), 0);
    }

    #[test]
    fn edge_list_row_order_does_not_change_node_order() {
        let fwd = load_edge_list("source,target,weight\nz,m,1\nm,a,2\n".as_bytes()).unwrap();
        let rev = load_edge_list("source,target,weight\nm,a,2\nz,m,1\n".as_bytes()).unwrap();
        assert_eq!(fwd.labels(), &["a", "m", "z"]);
        assert_eq!(fwd.labels(), rev.labels());
        let pairs = load_edge_list("z\tm\nm\ta\n".as_bytes()).unwrap();
        assert_eq!(pairs.labels(), &["a", "m", "z"]);
    }
}

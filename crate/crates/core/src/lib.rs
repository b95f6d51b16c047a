//! Coauthorship network construction and analysis.
//!
//! The pipeline: parse bibliographic records ([`ingest`]), project them onto
//! an undirected weighted coauthorship graph ([`graph`]), then compute
//! centrality ([`centrality`]), communities ([`community`]), and summary
//! statistics ([`stats`]). [`report`] renders rank tables, ego networks, and
//! graph exports.

pub mod centrality;
pub mod community;
pub mod error;
pub mod gen;
pub mod graph;
pub mod ingest;
pub mod report;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{CoauthorGraph, NodeId};

//! Error type shared by all library modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad configuration, e.g. a schema mapping naming a column the header lacks.
    #[error("configuration error: {0}")]
    Config(String),

    /// An argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A node or file referenced by id does not exist.
    #[error("not found: {0}")]
    NotFound(String),

    /// A statistic is undefined for this input (e.g. average degree of an empty graph).
    #[error("undefined value: {0}")]
    Undefined(String),

    /// Power iteration did not reach the requested tolerance within `iterations`
    /// sweeps. The last iterate is kept so callers can inspect or resume it.
    #[error("pagerank did not converge: residual {residual:e} after {iterations} iterations")]
    NonConvergence {
        residual: f64,
        iterations: usize,
        last: Vec<f64>,
    },

    /// A data file is malformed beyond row-level skipping.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

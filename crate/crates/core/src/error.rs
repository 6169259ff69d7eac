use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Digraph orders are capped so that adjacency rows fit in a machine
    /// word and the digraph6 single-byte order encoding applies.
    #[error("digraph order {0} exceeds the supported maximum of 62")]
    OrderTooLarge(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The restricted numerical range of a digraph on fewer than two
    /// vertices is empty; range queries on such digraphs are rejected.
    #[error("restricted numerical range is empty for order {0} (need order >= 2)")]
    EmptyRange(usize),

    #[error("eigensolver failed to converge ({0})")]
    NonConvergence(&'static str),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{format} parse error at line {line}: {msg}")]
    Parse {
        format: &'static str,
        line: usize,
        msg: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// One or more digraphs could not be classified during a census run.
    /// Counts must be exact, so the whole run is abandoned and the
    /// offending digraphs are reported in digraph6 form.
    #[error("census aborted: {} digraph(s) quarantined", .0.len())]
    Quarantine(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

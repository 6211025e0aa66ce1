use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn one_based(cycle: &[usize]) -> String {
    let labels: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
    format!("({})", labels.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The polyhedron is empty; `cycle` is a negative cycle, first node repeated at the end.
    #[error("infeasible: negative cycle {}", one_based(.cycle))]
    Infeasible { cycle: Vec<usize> },

    /// Both `(i, j)` and `(j, i)` were requested tight but `w_ij + w_ji != 0`.
    #[error("inconsistent face: arcs ({},{}) and ({},{}) cannot both be tight", .i + 1, .j + 1, .j + 1, .i + 1)]
    InconsistentFace { i: usize, j: usize },

    /// The requested cell or face is empty.
    #[error("empty cell: negative cycle {}", one_based(.cycle))]
    EmptyCell { cycle: Vec<usize> },

    #[error("{what} of size {size} exceeds the configured limit {limit}")]
    Capability {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn capability(what: &'static str, size: u64, limit: u64) -> Self {
        Error::Capability { what, size, limit }
    }
}

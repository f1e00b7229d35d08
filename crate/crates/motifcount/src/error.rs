use thiserror::Error;

/// Errors produced by graph construction, counting, and validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {vertex} (edge {vertex} -> {vertex})")]
    SelfLoop { vertex: u32 },

    #[error("edge ({source}, {target}) references a vertex >= num_vertices ({num_vertices})")]
    VertexOutOfRange {
        source: u32,
        target: u32,
        num_vertices: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("ordering covers {ordering} vertices but graph has {graph}")]
    OrderingSizeMismatch { ordering: usize, graph: usize },

    #[error("duplicate vertex {0} in motif tuple")]
    DuplicateVertex(u32),

    #[error("motif size k={0} is not supported (expected 3 or 4)")]
    UnsupportedMotifSize(usize),

    #[error("motif space mismatch: expected k={expected_k} directed={expected_directed}, got k={got_k} directed={got_directed}")]
    SpaceMismatch {
        expected_k: usize,
        expected_directed: bool,
        got_k: usize,
        got_directed: bool,
    },

    #[error("graph has {n} vertices, above the brute-force cap of {cap} for k={k}")]
    OracleCapExceeded { n: usize, cap: usize, k: usize },

    #[error("class {class}: column sum {sum} is not divisible by k={k}; enumeration is inconsistent")]
    CountNotDivisible { class: u32, sum: u64, k: usize },

    #[error("worker for shard {shard} failed")]
    WorkerFailed { shard: usize },

    #[error("unknown canonical class {0} for this motif space")]
    UnknownClass(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

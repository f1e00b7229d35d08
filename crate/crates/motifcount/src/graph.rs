//! Graph ingestion and the CSR adjacency layout used by the counting engine.
//!
//! A [`CsrGraph`] stores adjacency as two flat arrays: `indices[v]..indices[v+1]`
//! delimits the sorted neighbor block of vertex `v` inside `neighbors`. Sorted
//! blocks give binary-search edge tests, and the whole structure is immutable
//! after construction so it can be shared freely across worker threads.

use crate::error::{Error, Result};

/// Vertex identifier. Graphs are limited to `u32::MAX` vertices.
pub type VertexId = u32;

/// A list of edges plus the vertex-set size, the input to [`build_csr`].
///
/// Duplicate edges are tolerated (deduplicated during CSR construction);
/// self-loops and out-of-range endpoints are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub edges: Vec<(VertexId, VertexId)>,
    pub num_vertices: usize,
    pub directed: bool,
}

/// Compressed sparse row adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsrGraph {
    indices: Vec<usize>,
    neighbors: Vec<VertexId>,
    directed: bool,
}

impl CsrGraph {
    pub fn num_vertices(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn num_adjacency_entries(&self) -> usize {
        self.neighbors.len()
    }

    /// Number of edges: directed arcs for a directed graph, unordered pairs
    /// for an undirected one (where every edge is stored in both blocks).
    pub fn num_edges(&self) -> usize {
        if self.directed {
            self.neighbors.len()
        } else {
            self.neighbors.len() / 2
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Sorted neighbor block of `v`.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.indices[v]..self.indices[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.indices[v + 1] - self.indices[v]
    }

    /// Edge test by binary search on the sorted block of `u`.
    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// The raw offset array (length `num_vertices + 1`).
    pub fn offsets(&self) -> &[usize] {
        &self.indices
    }

    /// The raw concatenated neighbor array.
    pub fn adjacency(&self) -> &[VertexId] {
        &self.neighbors
    }

    /// Expand back to a normalized edge list: sorted arcs for directed
    /// graphs, sorted `(min, max)` pairs stored once for undirected ones.
    pub fn to_edge_list(&self) -> EdgeList {
        let mut edges = Vec::with_capacity(self.num_edges());
        for u in 0..self.num_vertices() as VertexId {
            for &v in self.neighbors(u) {
                if self.directed || u < v {
                    edges.push((u, v));
                }
            }
        }
        EdgeList {
            edges,
            num_vertices: self.num_vertices(),
            directed: self.directed,
        }
    }

    fn from_arc_pairs(
        mut arcs: Vec<(VertexId, VertexId)>,
        num_vertices: usize,
        directed: bool,
    ) -> CsrGraph {
        arcs.sort_unstable();
        arcs.dedup();
        let mut indices = vec![0usize; num_vertices + 1];
        for &(u, _) in &arcs {
            indices[u as usize + 1] += 1;
        }
        for v in 0..num_vertices {
            indices[v + 1] += indices[v];
        }
        let neighbors = arcs.into_iter().map(|(_, v)| v).collect();
        CsrGraph {
            indices,
            neighbors,
            directed,
        }
    }
}

/// Build a CSR graph from an edge list.
///
/// For an undirected list each edge is materialized in both endpoint blocks;
/// mutual arc pairs and duplicate edges collapse to a single adjacency entry.
pub fn build_csr(edge_list: &EdgeList) -> Result<CsrGraph> {
    let n = edge_list.num_vertices;
    assert!(n <= u32::MAX as usize, "vertex ids must fit in u32");
    let mut arcs = Vec::with_capacity(edge_list.edges.len() * if edge_list.directed { 1 } else { 2 });
    for &(u, v) in &edge_list.edges {
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        if u as usize >= n || v as usize >= n {
            return Err(Error::VertexOutOfRange {
                source: u,
                target: v,
                num_vertices: n,
            });
        }
        arcs.push((u, v));
        if !edge_list.directed {
            arcs.push((v, u));
        }
    }
    Ok(CsrGraph::from_arc_pairs(arcs, n, edge_list.directed))
}

/// The undirected graph obtained by ignoring edge directions.
///
/// Returns a symmetric CSR where `{u, v}` is present iff `u -> v` or
/// `v -> u` exists in the input. Idempotent: an undirected input is
/// returned unchanged.
pub fn undirected_view(g: &CsrGraph) -> CsrGraph {
    if !g.is_directed() {
        return g.clone();
    }
    let mut arcs = Vec::with_capacity(g.num_adjacency_entries() * 2);
    for u in 0..g.num_vertices() as VertexId {
        for &v in g.neighbors(u) {
            arcs.push((u, v));
            arcs.push((v, u));
        }
    }
    CsrGraph::from_arc_pairs(arcs, g.num_vertices(), false)
}

/// A relabeling of the vertex set: `new_of_old` and `old_of_new` are
/// mutually inverse permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    pub new_of_old: Vec<VertexId>,
    pub old_of_new: Vec<VertexId>,
}

impl VertexOrdering {
    pub fn identity(n: usize) -> VertexOrdering {
        let ids: Vec<VertexId> = (0..n as VertexId).collect();
        VertexOrdering {
            new_of_old: ids.clone(),
            old_of_new: ids,
        }
    }

    pub fn len(&self) -> usize {
        self.new_of_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_of_old.is_empty()
    }
}

/// Order vertices by descending undirected degree, ties broken by ascending
/// original id. Low indices then carry the heaviest vertices, so roots are
/// processed (and logically excluded) heaviest-first.
pub fn degree_order(g: &CsrGraph) -> VertexOrdering {
    let degrees: Vec<usize> = if g.is_directed() {
        let gu = undirected_view(g);
        (0..gu.num_vertices() as VertexId).map(|v| gu.degree(v)).collect()
    } else {
        (0..g.num_vertices() as VertexId).map(|v| g.degree(v)).collect()
    };
    let mut old_of_new: Vec<VertexId> = (0..g.num_vertices() as VertexId).collect();
    old_of_new.sort_by_key(|&v| (std::cmp::Reverse(degrees[v as usize]), v));
    let mut new_of_old = vec![0 as VertexId; old_of_new.len()];
    for (new, &old) in old_of_new.iter().enumerate() {
        new_of_old[old as usize] = new as VertexId;
    }
    VertexOrdering {
        new_of_old,
        old_of_new,
    }
}

/// Apply a vertex relabeling: vertex `i` of the output has the adjacency of
/// `old_of_new[i]` with all neighbor ids remapped and blocks re-sorted.
pub fn relabel(g: &CsrGraph, ord: &VertexOrdering) -> Result<CsrGraph> {
    if ord.len() != g.num_vertices() {
        return Err(Error::OrderingSizeMismatch {
            ordering: ord.len(),
            graph: g.num_vertices(),
        });
    }
    let mut arcs = Vec::with_capacity(g.num_adjacency_entries());
    for u in 0..g.num_vertices() as VertexId {
        let nu = ord.new_of_old[u as usize];
        for &v in g.neighbors(u) {
            arcs.push((nu, ord.new_of_old[v as usize]));
        }
    }
    Ok(CsrGraph::from_arc_pairs(
        arcs,
        g.num_vertices(),
        g.is_directed(),
    ))
}

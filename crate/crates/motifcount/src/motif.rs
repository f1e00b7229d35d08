//! Motif indices: a k-vertex induced subgraph is encoded as the base-10 value
//! of its adjacency bits, and isomorphic encodings are merged onto the
//! minimal index over all vertex orderings.
//!
//! Directed graphs use all `k(k-1)` off-diagonal entries in row-major order;
//! undirected graphs use the `k(k-1)/2` upper-triangle entries. The first
//! pair in that order is the most significant bit.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{CsrGraph, VertexId};

/// Maximal number of edges on `k` vertices: `C(k,2)` undirected pairs or
/// twice that for directed graphs. Also the bit width of a raw motif index.
pub fn n_max(k: usize, directed: bool) -> usize {
    debug_assert!(k >= 2);
    if directed {
        k * (k - 1)
    } else {
        k * (k - 1) / 2
    }
}

/// Bit position of the ordered pair `(i, j)` in a directed encoding
/// (row-major, diagonal removed). Position 0 is the most significant bit.
#[inline]
fn directed_pos(k: usize, i: usize, j: usize) -> usize {
    i * (k - 1) + if j > i { j - 1 } else { j }
}

/// Bit position of the pair `i < j` in an undirected encoding
/// (upper triangle, row-major).
#[inline]
fn undirected_pos(k: usize, i: usize, j: usize) -> usize {
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

/// The adjacency-bit encoding of one ordered vertex tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MotifIndex {
    pub raw: u32,
    pub k: usize,
    pub directed: bool,
}

/// Encode the subgraph induced by `tuple` in `g`.
///
/// Bit `b` of `raw` is 1 iff the corresponding ordered (directed) or
/// unordered (undirected) pair is an edge, with the first row-major pair in
/// the most significant position.
pub fn encode(tuple: &[VertexId], g: &CsrGraph) -> Result<MotifIndex> {
    let k = tuple.len();
    if k != 3 && k != 4 {
        return Err(Error::UnsupportedMotifSize(k));
    }
    for (a, &v) in tuple.iter().enumerate() {
        if tuple[..a].contains(&v) {
            return Err(Error::DuplicateVertex(v));
        }
    }
    Ok(MotifIndex {
        raw: encode_raw(tuple, g),
        k,
        directed: g.is_directed(),
    })
}

/// Unchecked encoding used from the enumeration hot path.
#[inline]
pub(crate) fn encode_raw(tuple: &[VertexId], g: &CsrGraph) -> u32 {
    let k = tuple.len();
    let bits = n_max(k, g.is_directed());
    let mut raw = 0u32;
    let mut shift = bits;
    if g.is_directed() {
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                shift -= 1;
                if g.has_edge(tuple[i], tuple[j]) {
                    raw |= 1 << shift;
                }
            }
        }
    } else {
        for i in 0..k {
            for j in i + 1..k {
                shift -= 1;
                if g.has_edge(tuple[i], tuple[j]) {
                    raw |= 1 << shift;
                }
            }
        }
    }
    raw
}

/// Per-space lookup tables: raw index -> canonical (minimal-isomorph) index,
/// connectivity of the underlying undirected graph, and per-class edge and
/// isomorph counts. Built once at startup and shared read-only.
#[derive(Debug, Clone)]
pub struct MotifIndexTable {
    k: usize,
    directed: bool,
    bits: usize,
    canonical_of_raw: Vec<u32>,
    connected_of_raw: Vec<bool>,
    /// Position of the raw index's class inside `class_list`; `u32::MAX`
    /// when the underlying graph is disconnected.
    class_position_of_raw: Vec<u32>,
    class_list: Vec<u32>,
    n_edges_of_class: Vec<u32>,
    n_iso_of_class: Vec<u64>,
}

impl MotifIndexTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn num_raw(&self) -> usize {
        1 << self.bits
    }

    #[inline]
    pub fn canonical_of_raw(&self, raw: u32) -> u32 {
        self.canonical_of_raw[raw as usize]
    }

    #[inline]
    pub fn is_connected(&self, raw: u32) -> bool {
        self.connected_of_raw[raw as usize]
    }

    /// Position of `raw`'s class in [`class_list`](Self::class_list), or
    /// `None` for disconnected graphs.
    #[inline]
    pub fn class_position_of_raw(&self, raw: u32) -> Option<usize> {
        let p = self.class_position_of_raw[raw as usize];
        (p != u32::MAX).then_some(p as usize)
    }

    /// Sorted canonical indices of all connected classes.
    pub fn class_list(&self) -> &[u32] {
        &self.class_list
    }

    pub fn num_classes(&self) -> usize {
        self.class_list.len()
    }

    pub fn class_position(&self, class: u32) -> Result<usize> {
        self.class_list
            .binary_search(&class)
            .map_err(|_| Error::UnknownClass(class))
    }

    /// Number of edges in motifs of the given connected class.
    pub fn n_edges(&self, class: u32) -> Result<u32> {
        Ok(self.n_edges_of_class[self.class_position(class)?])
    }

    /// Number of labeled adjacency configurations in the given class.
    pub fn n_iso(&self, class: u32) -> Result<u64> {
        Ok(self.n_iso_of_class[self.class_position(class)?])
    }
}

/// Build the canonicalization table for one `(k, directedness)` space by
/// minimizing the encoding over all `k!` vertex orderings of every raw index.
/// Connectivity is decided on the underlying undirected graph.
pub fn build_table(k: usize, directed: bool) -> Result<MotifIndexTable> {
    if k != 3 && k != 4 {
        return Err(Error::UnsupportedMotifSize(k));
    }
    let bits = n_max(k, directed);
    let size = 1usize << bits;

    // For each permutation, source_pos[t] is the bit position the permuted
    // encoding reads its bit t from.
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let mut bit_maps: Vec<Vec<usize>> = Vec::with_capacity(perms.len());
    for sigma in &perms {
        let mut map = Vec::with_capacity(bits);
        if directed {
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        map.push(directed_pos(k, sigma[i], sigma[j]));
                    }
                }
            }
        } else {
            for i in 0..k {
                for j in i + 1..k {
                    let (a, b) = (sigma[i].min(sigma[j]), sigma[i].max(sigma[j]));
                    map.push(undirected_pos(k, a, b));
                }
            }
        }
        bit_maps.push(map);
    }

    let bit_of = |raw: usize, pos: usize| -> usize { (raw >> (bits - 1 - pos)) & 1 };

    let mut canonical_of_raw = vec![0u32; size];
    let mut connected_of_raw = vec![false; size];
    for raw in 0..size {
        let mut min = u32::MAX;
        for map in &bit_maps {
            let mut permuted = 0u32;
            for (t, &s) in map.iter().enumerate() {
                permuted |= (bit_of(raw, s) as u32) << (bits - 1 - t);
            }
            min = min.min(permuted);
        }
        canonical_of_raw[raw] = min;
        connected_of_raw[raw] = underlying_connected(raw, k, directed, bits);
    }

    let mut class_list = Vec::new();
    for raw in 0..size {
        if connected_of_raw[raw] && canonical_of_raw[raw] == raw as u32 {
            class_list.push(raw as u32);
        }
    }
    let mut n_iso_of_class = vec![0u64; class_list.len()];
    let mut class_position_of_raw = vec![u32::MAX; size];
    for raw in 0..size {
        if connected_of_raw[raw] {
            let pos = class_list
                .binary_search(&canonical_of_raw[raw])
                .expect("canonical representative of a connected raw is in the class list");
            class_position_of_raw[raw] = pos as u32;
            n_iso_of_class[pos] += 1;
        }
    }
    let n_edges_of_class = class_list.iter().map(|c| c.count_ones()).collect();

    Ok(MotifIndexTable {
        k,
        directed,
        bits,
        canonical_of_raw,
        connected_of_raw,
        class_position_of_raw,
        class_list,
        n_edges_of_class,
        n_iso_of_class,
    })
}

/// Union-find connectivity of the undirected graph underlying a raw index.
fn underlying_connected(raw: usize, k: usize, directed: bool, bits: usize) -> bool {
    let bit_set = |pos: usize| -> bool { (raw >> (bits - 1 - pos)) & 1 == 1 };
    let mut parent: [usize; 4] = [0, 1, 2, 3];
    fn find(parent: &mut [usize; 4], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        parent[x] = root;
        root
    }
    for i in 0..k {
        for j in i + 1..k {
            let linked = if directed {
                bit_set(directed_pos(k, i, j)) || bit_set(directed_pos(k, j, i))
            } else {
                bit_set(undirected_pos(k, i, j))
            };
            if linked {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..k).all(|v| find(&mut parent, v) == root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_csr, EdgeList};

    fn graph(edges: &[(u32, u32)], n: usize, directed: bool) -> CsrGraph {
        build_csr(&EdgeList {
            edges: edges.to_vec(),
            num_vertices: n,
            directed,
        })
        .unwrap()
    }

    #[test]
    fn n_max_values() {
        assert_eq!(n_max(3, false), 3);
        assert_eq!(n_max(3, true), 6);
        assert_eq!(n_max(4, true), 12);
        assert_eq!(n_max(4, false), 6);
    }

    #[test]
    fn encode_four_edge_triple() {
        // v1->v2, v1->v3, v2->v3, v3->v2 reads off as bitstring 110101.
        let g = graph(&[(0, 1), (0, 2), (1, 2), (2, 1)], 3, true);
        let m = encode(&[0, 1, 2], &g).unwrap();
        assert_eq!(m.raw, 53);
        assert_eq!(m.k, 3);
        assert!(m.directed);
    }

    #[test]
    fn encode_empty_and_complete() {
        let empty = graph(&[], 3, true);
        assert_eq!(encode(&[0, 1, 2], &empty).unwrap().raw, 0);

        let complete = graph(
            &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)],
            3,
            true,
        );
        assert_eq!(encode(&[0, 1, 2], &complete).unwrap().raw, 63);
    }

    #[test]
    fn encode_rejects_duplicates() {
        let g = graph(&[(0, 1)], 3, true);
        assert!(matches!(
            encode(&[0, 1, 0], &g),
            Err(Error::DuplicateVertex(0))
        ));
    }

    #[test]
    fn canonical_fixture_53_to_30() {
        let table = build_table(3, true).unwrap();
        assert_eq!(table.canonical_of_raw(53), 30);
        assert_eq!(table.canonical_of_raw(63), 63);
    }

    #[test]
    fn class_counts_per_space() {
        assert_eq!(build_table(3, true).unwrap().num_classes(), 13);
        assert_eq!(build_table(4, true).unwrap().num_classes(), 199);
        assert_eq!(build_table(3, false).unwrap().num_classes(), 2);
        assert_eq!(build_table(4, false).unwrap().num_classes(), 6);
    }

    #[test]
    fn canonical_map_is_idempotent_and_minimal() {
        for (k, directed) in [(3, true), (3, false), (4, true), (4, false)] {
            let table = build_table(k, directed).unwrap();
            for raw in 0..table.num_raw() as u32 {
                let c = table.canonical_of_raw(raw);
                assert!(c <= raw);
                assert_eq!(table.canonical_of_raw(c), c);
            }
        }
    }

    #[test]
    fn isomorph_counts_sum_to_connected_labeled_graphs() {
        // Connected labeled graphs: 4 undirected / 54 directed on 3 vertices,
        // 38 undirected on 4 vertices.
        let sums = |k, d| {
            let t = build_table(k, d).unwrap();
            t.n_iso_of_class.iter().sum::<u64>()
        };
        assert_eq!(sums(3, false), 4);
        assert_eq!(sums(3, true), 54);
        assert_eq!(sums(4, false), 38);
    }

    #[test]
    fn undirected_three_vertex_classes() {
        let table = build_table(3, false).unwrap();
        assert_eq!(table.class_list(), &[3, 7]);
        assert_eq!(table.n_iso(3).unwrap(), 3); // path
        assert_eq!(table.n_iso(7).unwrap(), 1); // triangle
        assert_eq!(table.n_edges(3).unwrap(), 2);
        assert_eq!(table.n_edges(7).unwrap(), 3);
        assert!(matches!(table.n_iso(5), Err(Error::UnknownClass(5))));
    }

    #[test]
    fn rejects_unsupported_k() {
        assert!(matches!(
            build_table(5, true),
            Err(Error::UnsupportedMotifSize(5))
        ));
    }

    // Independent re-derivation of the canonicalization: explicit adjacency
    // matrices, matrix permutation, and DFS connectivity. Everything the
    // table computes with bit maps and union-find is recomputed here the
    // slow way and compared entry by entry.
    mod class_oracle {
        use super::*;

        fn matrix_from_raw(raw: u32, k: usize, directed: bool) -> Vec<Vec<bool>> {
            let bits = n_max(k, directed);
            let mut m = vec![vec![false; k]; k];
            let mut pos = 0;
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    if !directed && j < i {
                        continue;
                    }
                    let set = (raw >> (bits - 1 - pos)) & 1 == 1;
                    m[i][j] = set;
                    if !directed {
                        m[j][i] = set;
                    }
                    pos += 1;
                }
            }
            m
        }

        fn raw_from_matrix(m: &[Vec<bool>], directed: bool) -> u32 {
            let k = m.len();
            let mut raw = 0u32;
            for i in 0..k {
                for j in 0..k {
                    if i == j || (!directed && j < i) {
                        continue;
                    }
                    raw = (raw << 1) | m[i][j] as u32;
                }
            }
            raw
        }

        fn permute(m: &[Vec<bool>], sigma: &[usize]) -> Vec<Vec<bool>> {
            let k = m.len();
            let mut out = vec![vec![false; k]; k];
            for i in 0..k {
                for j in 0..k {
                    out[i][j] = m[sigma[i]][sigma[j]];
                }
            }
            out
        }

        fn dfs_connected(m: &[Vec<bool>]) -> bool {
            let k = m.len();
            let mut seen = vec![false; k];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for w in 0..k {
                    if w != v && (m[v][w] || m[w][v]) && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        }

        fn check_space(k: usize, directed: bool) {
            let table = build_table(k, directed).unwrap();
            let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
            let mut classes = std::collections::BTreeMap::<u32, u64>::new();
            for raw in 0..table.num_raw() as u32 {
                let m = matrix_from_raw(raw, k, directed);
                let canonical = perms
                    .iter()
                    .map(|s| raw_from_matrix(&permute(&m, s), directed))
                    .min()
                    .unwrap();
                assert_eq!(
                    table.canonical_of_raw(raw),
                    canonical,
                    "canonical mismatch at raw {raw} (k={k}, directed={directed})"
                );
                let connected = dfs_connected(&m);
                assert_eq!(table.is_connected(raw), connected);
                if connected {
                    *classes.entry(canonical).or_default() += 1;
                }
            }
            let class_list: Vec<u32> = classes.keys().copied().collect();
            assert_eq!(table.class_list(), class_list.as_slice());
            for (class, count) in classes {
                assert_eq!(table.n_iso(class).unwrap(), count);
            }
        }

        #[test]
        fn directed_three() {
            check_space(3, true);
        }

        #[test]
        fn undirected_three() {
            check_space(3, false);
        }

        #[test]
        fn directed_four() {
            check_space(4, true);
        }

        #[test]
        fn undirected_four() {
            check_space(4, false);
        }
    }
}

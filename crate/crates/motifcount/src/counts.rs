//! Per-vertex motif count matrices.
//!
//! During enumeration counts accumulate in the raw index space (one column
//! per adjacency encoding); a single canonicalization pass at the end sums
//! all isomorphs of each motif onto its minimal index.

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexOrdering};
use crate::motif::MotifIndexTable;

/// Dense per-vertex count matrix: one row per vertex, one column per motif
/// index. `columns` lists the motif index each column stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    k: usize,
    directed: bool,
    canonical: bool,
    columns: Vec<u32>,
    num_vertices: usize,
    counts: Vec<u64>,
}

impl CountMatrix {
    /// All-zero raw-space matrix with one column per raw index.
    pub fn zero_raw(k: usize, directed: bool, num_vertices: usize) -> CountMatrix {
        let bits = crate::motif::n_max(k, directed);
        let columns: Vec<u32> = (0..1u32 << bits).collect();
        let counts = vec![0u64; num_vertices * columns.len()];
        CountMatrix {
            k,
            directed,
            canonical: false,
            columns,
            num_vertices,
            counts,
        }
    }

    pub fn from_parts(
        k: usize,
        directed: bool,
        canonical: bool,
        columns: Vec<u32>,
        num_vertices: usize,
        counts: Vec<u64>,
    ) -> CountMatrix {
        assert_eq!(counts.len(), num_vertices * columns.len());
        CountMatrix {
            k,
            directed,
            canonical,
            columns,
            num_vertices,
            counts,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// The motif index labelling each column.
    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    #[inline]
    pub fn row(&self, v: VertexId) -> &[u64] {
        let w = self.columns.len();
        &self.counts[v as usize * w..(v as usize + 1) * w]
    }

    #[inline]
    pub(crate) fn bump(&mut self, v: VertexId, column: usize) {
        let w = self.columns.len();
        self.counts[v as usize * w + column] += 1;
    }

    pub fn get(&self, v: VertexId, column: usize) -> u64 {
        self.row(v)[column]
    }

    /// Count for vertex `v` in the column labelled by motif index `index`,
    /// or 0 if the column does not exist.
    pub fn get_by_index(&self, v: VertexId, index: u32) -> u64 {
        match self.columns.binary_search(&index) {
            Ok(pos) => self.get(v, pos),
            Err(_) => 0,
        }
    }

    pub fn column_sum(&self, column: usize) -> u64 {
        (0..self.num_vertices)
            .map(|v| self.get(v as VertexId, column))
            .sum()
    }

    /// Element-wise accumulate, used to reduce worker-private matrices.
    pub fn accumulate(&mut self, other: &CountMatrix) {
        assert_eq!(self.columns, other.columns);
        assert_eq!(self.num_vertices, other.num_vertices);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Reorder rows so that row `i` of the result describes vertex
    /// `old_of_new[i]`'s counts under the labeling the matrix was built in.
    /// Used to report counts keyed by pre-relabeling ids.
    pub fn unrelabel_rows(&self, ord: &VertexOrdering) -> Result<CountMatrix> {
        if ord.len() != self.num_vertices {
            return Err(Error::OrderingSizeMismatch {
                ordering: ord.len(),
                graph: self.num_vertices,
            });
        }
        let w = self.columns.len();
        let mut counts = vec![0u64; self.counts.len()];
        for new in 0..self.num_vertices {
            let old = ord.old_of_new[new] as usize;
            counts[old * w..(old + 1) * w].copy_from_slice(self.row(new as VertexId));
        }
        Ok(CountMatrix {
            counts,
            ..self.clone()
        })
    }

    fn check_space(&self, table: &MotifIndexTable) -> Result<()> {
        if self.k != table.k() || self.directed != table.is_directed() {
            return Err(Error::SpaceMismatch {
                expected_k: table.k(),
                expected_directed: table.is_directed(),
                got_k: self.k,
                got_directed: self.directed,
            });
        }
        Ok(())
    }
}

/// Sum every raw column onto its canonical class column, restricted to
/// connected classes. Applying it to an already canonical matrix is a no-op.
pub fn merge_isomorphs(raw: &CountMatrix, table: &MotifIndexTable) -> Result<CountMatrix> {
    raw.check_space(table)?;
    if raw.canonical {
        return Ok(raw.clone());
    }
    let classes = table.class_list().to_vec();
    let width = classes.len();
    let mut counts = vec![0u64; raw.num_vertices * width];
    // Column -> class positions resolved once; raw columns are the full
    // 0..2^bits range in order.
    let positions: Vec<Option<usize>> = raw
        .columns
        .iter()
        .map(|&r| table.class_position_of_raw(r))
        .collect();
    for v in 0..raw.num_vertices {
        let row = raw.row(v as VertexId);
        let out = &mut counts[v * width..(v + 1) * width];
        for (value, position) in row.iter().zip(&positions) {
            if *value == 0 {
                continue;
            }
            if let Some(pos) = position {
                out[*pos] += value;
            }
        }
    }
    Ok(CountMatrix {
        k: raw.k,
        directed: raw.directed,
        canonical: true,
        columns: classes,
        num_vertices: raw.num_vertices,
        counts,
    })
}

/// Graph-level totals: each motif occurrence contributes to exactly `k`
/// vertex rows, so every column sum must divide evenly by `k`. A remainder
/// signals an enumeration bug and is reported as an error.
pub fn total_motif_census(m: &CountMatrix) -> Result<Vec<(u32, u64)>> {
    let k = m.k as u64;
    let mut totals = Vec::with_capacity(m.columns.len());
    for (pos, &class) in m.columns.iter().enumerate() {
        let sum = m.column_sum(pos);
        if sum % k != 0 {
            return Err(Error::CountNotDivisible {
                class,
                sum,
                k: m.k,
            });
        }
        totals.push((class, sum / k));
    }
    Ok(totals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::build_table;

    fn raw_with(k: usize, directed: bool, n: usize, cells: &[(u32, u32, u64)]) -> CountMatrix {
        let mut m = CountMatrix::zero_raw(k, directed, n);
        for &(v, raw, count) in cells {
            let w = m.columns.len();
            m.counts[v as usize * w + raw as usize] = count;
        }
        m
    }

    #[test]
    fn merge_moves_mass_to_minimal_index() {
        let table = build_table(3, true).unwrap();
        let raw = raw_with(3, true, 2, &[(0, 53, 4), (1, 53, 2)]);
        let merged = merge_isomorphs(&raw, &table).unwrap();
        assert_eq!(merged.get_by_index(0, 30), 4);
        assert_eq!(merged.get_by_index(1, 30), 2);
        assert_eq!(merged.get_by_index(0, 53), 0);
        let total: u64 = merged.columns().iter().enumerate().map(|(p, _)| merged.column_sum(p)).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn merge_of_canonical_matrix_is_identity() {
        let table = build_table(3, true).unwrap();
        let raw = raw_with(3, true, 1, &[(0, 30, 5)]);
        let merged = merge_isomorphs(&raw, &table).unwrap();
        let again = merge_isomorphs(&merged, &table).unwrap();
        assert_eq!(merged, again);
        assert_eq!(merged.get_by_index(0, 30), 5);
    }

    #[test]
    fn merge_rejects_space_mismatch() {
        let table = build_table(4, true).unwrap();
        let raw = CountMatrix::zero_raw(3, true, 1);
        assert!(matches!(
            merge_isomorphs(&raw, &table),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn rotations_of_directed_cycle_share_a_class() {
        use crate::graph::{build_csr, EdgeList};
        use crate::motif::encode;
        let g = build_csr(&EdgeList {
            edges: vec![(0, 1), (1, 2), (2, 0)],
            num_vertices: 3,
            directed: true,
        })
        .unwrap();
        let table = build_table(3, true).unwrap();
        let rotations = [[0u32, 1, 2], [1, 2, 0], [2, 0, 1]];
        let classes: Vec<u32> = rotations
            .iter()
            .map(|t| table.canonical_of_raw(encode(t, &g).unwrap().raw))
            .collect();
        assert_eq!(classes[0], classes[1]);
        assert_eq!(classes[1], classes[2]);

        // Mass encoded under any rotation merges into one class column.
        let raw = raw_with(
            3,
            true,
            3,
            &[
                (0, encode(&rotations[0], &g).unwrap().raw, 1),
                (1, encode(&rotations[1], &g).unwrap().raw, 1),
                (2, encode(&rotations[2], &g).unwrap().raw, 1),
            ],
        );
        let merged = merge_isomorphs(&raw, &table).unwrap();
        for v in 0..3 {
            assert_eq!(merged.get_by_index(v, classes[0]), 1);
        }
    }

    #[test]
    fn census_requires_divisibility() {
        let table = build_table(3, false).unwrap();
        let raw = raw_with(3, false, 3, &[(0, 7, 1), (1, 7, 1), (2, 7, 1)]);
        let merged = merge_isomorphs(&raw, &table).unwrap();
        let totals = total_motif_census(&merged).unwrap();
        assert!(totals.contains(&(7, 1)));

        let bad = raw_with(3, false, 3, &[(0, 7, 1), (1, 7, 1)]);
        let merged = merge_isomorphs(&bad, &table).unwrap();
        assert!(matches!(
            total_motif_census(&merged),
            Err(Error::CountNotDivisible { class: 7, sum: 2, k: 3 })
        ));
    }

    #[test]
    fn unrelabel_moves_rows_back() {
        let m = CountMatrix::from_parts(3, false, true, vec![3, 7], 2, vec![1, 2, 3, 4]);
        let ord = VertexOrdering {
            new_of_old: vec![1, 0],
            old_of_new: vec![1, 0],
        };
        let out = m.unrelabel_rows(&ord).unwrap();
        assert_eq!(out.row(0), &[3, 4]);
        assert_eq!(out.row(1), &[1, 2]);
    }
}

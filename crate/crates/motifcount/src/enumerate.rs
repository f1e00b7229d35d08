//! The counting engine: every connected k-subset is found exactly once as a
//! BFS exploration rooted at its minimal-index vertex.
//!
//! For each root, vertices below the root are invisible (logical removal),
//! and every reachable vertex gets a depth label equal to its minimal
//! undirected distance from the root within that restricted graph. The label
//! multiset then dictates how a subset is discovered:
//!
//! * 3-motifs: two depth-1 neighbors in ascending index order, or a
//!   depth-1 vertex with one of its depth-2 neighbors.
//! * 4-motifs: three depth-1 vertices (average depth 0.75); two depth-1
//!   vertices plus a depth-2 vertex hanging off either (1.0); one depth-1
//!   vertex with two of its depth-2 neighbors (1.25); or a depth-1/2/3
//!   chain (1.5).
//!
//! The chain variant additionally accepts a final vertex labelled 2 instead
//! of 3, provided it lies outside the chain and is not adjacent to the
//! chain's depth-1 vertex. This covers the one structure the depth rules
//! would otherwise skip: a 4-chain closed into a 5-cycle through a vertex
//! external to the subset, which marks the chain's last vertex at depth 2.

use crate::counts::CountMatrix;
use crate::error::{Error, Result};
use crate::graph::{undirected_view, CsrGraph, VertexId};
use crate::motif::encode_raw;

/// Per-root depth labels in a version-stamped array, so no clearing is
/// needed between roots.
struct DepthLabels {
    label: Vec<u8>,
    stamp: Vec<u32>,
    round: u32,
}

impl DepthLabels {
    fn new(n: usize) -> DepthLabels {
        DepthLabels {
            label: vec![0; n],
            stamp: vec![0; n],
            round: 0,
        }
    }

    fn begin_round(&mut self) {
        if self.round == u32::MAX {
            self.stamp.fill(0);
            self.round = 0;
        }
        self.round += 1;
    }

    #[inline]
    fn set(&mut self, v: VertexId, depth: u8) {
        self.label[v as usize] = depth;
        self.stamp[v as usize] = self.round;
    }

    #[inline]
    fn get(&self, v: VertexId) -> Option<u8> {
        (self.stamp[v as usize] == self.round).then(|| self.label[v as usize])
    }
}

/// Reusable worker-private state for one BFS exploration.
pub(crate) struct Scratch {
    labels: DepthLabels,
    queue: Vec<VertexId>,
    level1: Vec<VertexId>,
    /// Depth-2 neighbors of the depth-1 vertex currently being expanded.
    children: Vec<VertexId>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Scratch {
        Scratch {
            labels: DepthLabels::new(n),
            queue: Vec::new(),
            level1: Vec::new(),
            children: Vec::new(),
        }
    }
}

#[inline]
fn record(counts: &mut CountMatrix, g: &CsrGraph, tuple: &[VertexId]) {
    let raw = encode_raw(tuple, g) as usize;
    for &v in tuple {
        counts.bump(v, raw);
    }
}

/// Enumerate every motif whose minimal-index vertex is `root`.
///
/// `g` is the graph the adjacency bits are read from; `gu` is its undirected
/// view (the same object when `g` is undirected). With `anchor` set, only
/// structures whose first depth-1 vertex equals the anchor are produced, so
/// a root's work can be split across its neighbor list.
pub(crate) fn enumerate_root(
    g: &CsrGraph,
    gu: &CsrGraph,
    k: usize,
    root: VertexId,
    anchor: Option<VertexId>,
    scratch: &mut Scratch,
    counts: &mut CountMatrix,
) {
    let Scratch {
        labels,
        queue,
        level1,
        children,
    } = scratch;

    // Depth labels by BFS over the vertices above the root, up to depth k-1.
    labels.begin_round();
    labels.set(root, 0);
    let block = gu.neighbors(root);
    let above = block.partition_point(|&v| v <= root);
    level1.clear();
    level1.extend_from_slice(&block[above..]);
    if level1.is_empty() {
        return;
    }
    for &v in level1.iter() {
        labels.set(v, 1);
    }
    queue.clear();
    queue.extend_from_slice(level1);
    let mut frontier_start = 0;
    for depth in 2..k as u8 {
        let frontier_end = queue.len();
        if frontier_start == frontier_end {
            break;
        }
        for qi in frontier_start..frontier_end {
            let u = queue[qi];
            for &w in gu.neighbors(u) {
                if w > root && labels.get(w).is_none() {
                    labels.set(w, depth);
                    queue.push(w);
                }
            }
        }
        frontier_start = frontier_end;
    }

    for (ai, &a) in level1.iter().enumerate() {
        if anchor.is_some_and(|want| want != a) {
            continue;
        }
        // Depth-2 neighbors of `a`, ascending (blocks are sorted).
        children.clear();
        children.extend(
            gu.neighbors(a)
                .iter()
                .copied()
                .filter(|&v| labels.get(v) == Some(2)),
        );

        if k == 3 {
            for &b in &level1[ai + 1..] {
                record(counts, g, &[root, a, b]);
            }
            for &v in children.iter() {
                record(counts, g, &[root, a, v]);
            }
            continue;
        }

        // Average depth 0.75: three depth-1 vertices in ascending order.
        for bi in ai + 1..level1.len() {
            let b = level1[bi];
            for &c in &level1[bi + 1..] {
                record(counts, g, &[root, a, b, c]);
            }
        }

        // Average depth 1: the pair (a, b) plus a depth-2 vertex adjacent to
        // either; one adjacent to both is taken from `a`'s side only.
        for &b in &level1[ai + 1..] {
            for &v in children.iter() {
                record(counts, g, &[root, a, b, v]);
            }
            for &v in gu.neighbors(b) {
                if labels.get(v) == Some(2) && !gu.has_edge(a, v) {
                    record(counts, g, &[root, a, b, v]);
                }
            }
        }

        // Average depth 1.25: two depth-2 neighbors of `a` in ascending order.
        for (vi, &v) in children.iter().enumerate() {
            for &w in &children[vi + 1..] {
                record(counts, g, &[root, a, v, w]);
            }
        }

        // Average depth 1.5: the chain root -> a -> v -> w. The final vertex
        // is normally at depth 3; a depth-2 final vertex is accepted when it
        // is not adjacent to `a` (the 5-cycle closure case).
        for &v in children.iter() {
            for &w in gu.neighbors(v) {
                match labels.get(w) {
                    Some(3) => record(counts, g, &[root, a, v, w]),
                    Some(2) if !gu.has_edge(a, w) => {
                        // Encoding orders vertices by (depth, index) and both
                        // v and w carry depth label 2 here.
                        if v < w {
                            record(counts, g, &[root, a, v, w]);
                        } else {
                            record(counts, g, &[root, a, w, v]);
                        }
                    }
                    _ => {}
                }
            }
        }
    }
}

/// Count, for every vertex, each raw motif index over all connected
/// k-subsets of the underlying undirected graph. Single-threaded; see
/// [`parallel_count`](crate::parallel::parallel_count) for the sharded
/// version.
///
/// Any vertex labeling gives correct canonical counts; relabeling by
/// descending degree first is the performance-motivated choice.
pub fn count_motifs(g: &CsrGraph, k: usize) -> Result<CountMatrix> {
    if k != 3 && k != 4 {
        return Err(Error::UnsupportedMotifSize(k));
    }
    let gu_storage;
    let gu = if g.is_directed() {
        gu_storage = undirected_view(g);
        &gu_storage
    } else {
        g
    };
    let mut counts = CountMatrix::zero_raw(k, g.is_directed(), g.num_vertices());
    let mut scratch = Scratch::new(g.num_vertices());
    for root in 0..g.num_vertices() as VertexId {
        enumerate_root(g, gu, k, root, None, &mut scratch, &mut counts);
    }
    Ok(counts)
}

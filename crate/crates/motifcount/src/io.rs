//! Text formats: whitespace-separated edge lists and per-vertex count CSVs.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::counts::CountMatrix;
use crate::error::{Error, Result};
use crate::graph::{EdgeList, VertexId};

/// What to do with a self-loop found in an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfLoopPolicy {
    Reject,
    Skip,
}

/// An edge list parsed from disk. Raw ids are compacted to `0..n`;
/// `original_ids[i]` is the id the input file used for vertex `i`.
#[derive(Debug, Clone)]
pub struct LoadedEdgeList {
    pub edge_list: EdgeList,
    pub original_ids: Vec<u64>,
    pub skipped_self_loops: usize,
}

/// Parse an edge list: one `src dst` pair per line, decimal ids separated by
/// whitespace, lines starting with `#` or `%` (and blank lines) ignored.
pub fn load_edge_list<P: AsRef<Path>>(
    path: P,
    directed: bool,
    self_loops: SelfLoopPolicy,
) -> Result<LoadedEdgeList> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file), directed, self_loops)
}

/// [`load_edge_list`] over any reader; useful for tests and pipes.
pub fn parse_edge_list<R: Read>(
    reader: R,
    directed: bool,
    self_loops: SelfLoopPolicy,
) -> Result<LoadedEdgeList> {
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    let mut skipped = 0usize;
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let src = parse_field(fields.next(), line_no)?;
        let dst = parse_field(fields.next(), line_no)?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "expected exactly two fields".into(),
            });
        }
        if src == dst {
            match self_loops {
                SelfLoopPolicy::Skip => {
                    skipped += 1;
                    continue;
                }
                SelfLoopPolicy::Reject => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("self-loop on vertex {src}"),
                    })
                }
            }
        }
        raw_edges.push((src, dst));
    }

    // Compact ids: dense 0..n in ascending original-id order.
    let mut ids: Vec<u64> = raw_edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect();
    ids.sort_unstable();
    ids.dedup();
    let compact =
        |id: u64| -> VertexId { ids.binary_search(&id).expect("id present") as VertexId };
    let edges: Vec<(VertexId, VertexId)> = raw_edges
        .iter()
        .map(|&(u, v)| (compact(u), compact(v)))
        .collect();

    Ok(LoadedEdgeList {
        edge_list: EdgeList {
            edges,
            num_vertices: ids.len(),
            directed,
        },
        original_ids: ids,
        skipped_self_loops: skipped,
    })
}

fn parse_field(field: Option<&str>, line_no: usize) -> Result<u64> {
    let text = field.ok_or_else(|| Error::Parse {
        line: line_no,
        message: "missing vertex id".into(),
    })?;
    text.parse::<u64>().map_err(|e| Error::Parse {
        line: line_no,
        message: format!("bad vertex id {text:?}: {e}"),
    })
}

/// Write a count matrix as CSV: a `# space:` comment naming the motif space,
/// a `vertex,<class ids...>` header, then one row per vertex keyed by its
/// original id.
pub fn write_counts_csv<W: Write>(mut w: W, m: &CountMatrix, original_ids: &[u64]) -> Result<()> {
    assert_eq!(original_ids.len(), m.num_vertices());
    writeln!(
        w,
        "# space: k={} {} {}",
        m.k(),
        if m.is_directed() { "directed" } else { "undirected" },
        if m.is_canonical() { "canonical" } else { "raw" },
    )?;
    write!(w, "vertex")?;
    for c in m.columns() {
        write!(w, ",{c}")?;
    }
    writeln!(w)?;
    for v in 0..m.num_vertices() {
        write!(w, "{}", original_ids[v])?;
        for &count in m.row(v as VertexId) {
            write!(w, ",{count}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Parse a CSV produced by [`write_counts_csv`] back into the matrix and the
/// original vertex ids.
pub fn read_counts_csv<R: Read>(reader: R) -> Result<(CountMatrix, Vec<u64>)> {
    let mut lines = BufReader::new(reader).lines().enumerate();

    let (mut k, mut directed, mut canonical) = (None, None, None);
    let mut header: Option<(usize, String)> = None;
    for (idx, line) in lines.by_ref() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(space) = rest.trim().strip_prefix("space:") {
                for token in space.split_whitespace() {
                    match token {
                        "directed" => directed = Some(true),
                        "undirected" => directed = Some(false),
                        "canonical" => canonical = Some(true),
                        "raw" => canonical = Some(false),
                        _ => {
                            if let Some(kv) = token.strip_prefix("k=") {
                                k = kv.parse::<usize>().ok();
                            }
                        }
                    }
                }
            }
            continue;
        }
        header = Some((idx + 1, line));
        break;
    }

    let (header_line, header) = header.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing header row".into(),
    })?;
    let (k, directed, canonical) = match (k, directed, canonical) {
        (Some(k), Some(d), Some(c)) => (k, d, c),
        _ => {
            return Err(Error::Parse {
                line: header_line,
                message: "missing or incomplete '# space:' line".into(),
            })
        }
    };
    let mut cols = header.split(',');
    if cols.next() != Some("vertex") {
        return Err(Error::Parse {
            line: header_line,
            message: "header must start with 'vertex'".into(),
        });
    }
    let columns: Vec<u32> = cols
        .map(|c| {
            c.trim().parse::<u32>().map_err(|e| Error::Parse {
                line: header_line,
                message: format!("bad class id {c:?}: {e}"),
            })
        })
        .collect::<Result<_>>()?;

    let mut ids = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let line_no = idx + 1;
        let mut fields = trimmed.split(',');
        let id = fields
            .next()
            .unwrap()
            .parse::<u64>()
            .map_err(|e| Error::Parse {
                line: line_no,
                message: format!("bad vertex id: {e}"),
            })?;
        ids.push(id);
        let mut got = 0usize;
        for field in fields {
            let value = field.trim().parse::<u64>().map_err(|e| Error::Parse {
                line: line_no,
                message: format!("bad count: {e}"),
            })?;
            counts.push(value);
            got += 1;
        }
        if got != columns.len() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {} counts, found {got}", columns.len()),
            });
        }
    }

    let matrix = CountMatrix::from_parts(k, directed, canonical, columns, ids.len(), counts);
    Ok((matrix, ids))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_file() {
        let loaded = parse_edge_list("0 1\n1 2\n".as_bytes(), true, SelfLoopPolicy::Reject).unwrap();
        assert_eq!(loaded.edge_list.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(loaded.edge_list.num_vertices, 3);
        assert_eq!(loaded.original_ids, vec![0, 1, 2]);
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let text = "# a comment\n% another\n\n0 1\n";
        let loaded = parse_edge_list(text.as_bytes(), false, SelfLoopPolicy::Reject).unwrap();
        assert_eq!(loaded.edge_list.edges.len(), 1);
    }

    #[test]
    fn compacts_sparse_ids() {
        let loaded =
            parse_edge_list("10 20\n20 30\n".as_bytes(), true, SelfLoopPolicy::Reject).unwrap();
        assert_eq!(loaded.edge_list.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(loaded.original_ids, vec![10, 20, 30]);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = parse_edge_list("0 1\nbogus\n".as_bytes(), true, SelfLoopPolicy::Reject)
            .unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn self_loop_policy() {
        let err =
            parse_edge_list("3 3\n".as_bytes(), true, SelfLoopPolicy::Reject).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let loaded = parse_edge_list("3 3\n0 1\n".as_bytes(), true, SelfLoopPolicy::Skip).unwrap();
        assert_eq!(loaded.skipped_self_loops, 1);
        assert_eq!(loaded.edge_list.edges.len(), 1);
    }

    #[test]
    fn counts_csv_round_trip() {
        let m = CountMatrix::from_parts(
            3,
            true,
            true,
            vec![6, 30, 63],
            2,
            vec![1, 2, 3, 4, 5, 6],
        );
        let ids = vec![100, 205];
        let mut buffer = Vec::new();
        write_counts_csv(&mut buffer, &m, &ids).unwrap();
        let (back, back_ids) = read_counts_csv(buffer.as_slice()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back_ids, ids);
    }
}

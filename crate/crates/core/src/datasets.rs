//! Benchmark graphs with known community counts.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;

/// `(name, n, K)` for the bundled benchmark names.
pub const KNOWN_BENCHMARKS: [(&str, usize, usize); 3] = [
    ("karate", 34, 2),
    ("dolphins", 62, 2),
    ("football", 115, 11),
];

pub fn known_benchmark(name: &str) -> Option<(usize, usize)> {
    KNOWN_BENCHMARKS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, n, k)| (n, k))
}

#[derive(Debug, Clone)]
pub struct BenchmarkGraph {
    pub name: String,
    pub adjacency: AdjacencyMatrix,
    /// Ground-truth community count.
    pub k: usize,
    pub source_path: PathBuf,
    /// File label of each node, in first-appearance order.
    pub labels: Vec<String>,
}

impl BenchmarkGraph {
    pub fn n(&self) -> usize {
        self.adjacency.n()
    }

    /// One `label index` pair per line.
    pub fn label_map(&self) -> String {
        let mut out = String::new();
        for (i, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "{label} {i}");
        }
        out
    }

    pub fn write_label_map(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.label_map()).map_err(|e| Error::io(path, e))
    }
}

/// Edges as index pairs, and the label of each index.
pub type LabelledEdges = (Vec<(usize, usize)>, Vec<String>);

/// Parses an edge list whose node labels are arbitrary tokens.
pub fn parse_labelled_edges(text: &str, source: &str) -> Result<LabelledEdges> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                path: source.to_string(),
                line: lineno + 1,
                msg: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let mut id = |tok: &str| {
            *index.entry(tok.to_string()).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        let (u, v) = (id(fields[0]), id(fields[1]));
        if u == v {
            return Err(Error::Parse {
                path: source.to_string(),
                line: lineno + 1,
                msg: format!("self-loop on {}", fields[0]),
            });
        }
        edges.push((u, v));
    }
    Ok((edges, labels))
}

/// Loads `path` as benchmark `name`. Known names fix n and K; other names
/// need `k`.
pub fn load_benchmark(
    name: &str,
    path: impl AsRef<Path>,
    k: Option<usize>,
) -> Result<BenchmarkGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (edges, labels) = parse_labelled_edges(&text, &path.display().to_string())?;
    let n = labels.len();
    let k = match (known_benchmark(name), k) {
        (Some((expected, known_k)), _) => {
            if n != expected {
                return Err(Error::NodeCountMismatch {
                    name: name.to_string(),
                    expected,
                    found: n,
                });
            }
            known_k
        }
        (None, Some(k)) => k,
        (None, None) => {
            return Err(Error::InvalidParameter(format!(
                "unknown benchmark {name:?} needs an explicit K"
            )))
        }
    };
    let adjacency = AdjacencyMatrix::from_edge_list(&edges, n)?;
    if !adjacency.is_connected() {
        return Err(Error::Disconnected);
    }
    if k == 0 || k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    Ok(BenchmarkGraph {
        name: name.to_string(),
        adjacency,
        k,
        source_path: path.to_path_buf(),
        labels,
    })
}

/// Loads `<dir>/<name>.txt` for every known benchmark, failing on the first
/// missing file.
pub fn load_all(dir: impl AsRef<Path>) -> Result<Vec<BenchmarkGraph>> {
    KNOWN_BENCHMARKS
        .iter()
        .map(|(name, _, _)| load_benchmark(name, dir.as_ref().join(format!("{name}.txt")), None))
        .collect()
}

//! Simple undirected graphs, degree statistics and the symmetric normalised
//! Laplacian `L = D^{-1/2} A D^{-1/2}`.
//!
//! Matrices are dense throughout. Graphs in this toolkit have at most a few
//! thousand nodes and every downstream quantity needs a full eigendecomposition
//! anyway.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Symmetric binary adjacency matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    dense: DMatrix<f64>,
}

impl AdjacencyMatrix {
    /// Builds the adjacency matrix of an undirected simple graph.
    ///
    /// Duplicate edges, in either orientation, collapse to one edge.
    pub fn from_edge_list(edges: &[(usize, usize)], n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewNodes(n));
        }
        let mut dense = DMatrix::<f64>::zeros(n, n);
        for &(i, j) in edges {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            dense[(i, j)] = 1.0;
            dense[(j, i)] = 1.0;
        }
        Ok(Self::from_dense_unchecked(dense))
    }

    /// Wraps a dense 0/1 matrix the caller guarantees is symmetric with zero
    /// diagonal.
    pub(crate) fn from_dense_unchecked(dense: DMatrix<f64>) -> Self {
        let n = dense.nrows();
        let neighbors = (0..n)
            .map(|i| (0..n).filter(|&j| dense[(i, j)] != 0.0).collect())
            .collect();
        Self {
            n,
            neighbors,
            dense,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.dense
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.dense[(i, j)] != 0.0
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(i, j)` pairs with `i < j`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    /// Squared Frobenius norm. Equals the degree total `n * d_mean` for any
    /// binary adjacency matrix.
    pub fn frobenius_sq(&self) -> f64 {
        self.dense.iter().map(|x| x * x).sum()
    }

    /// Breadth-first traversal from node 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees(self.degrees())
    }

    /// `L[i][j] = A[i][j] / sqrt(d_i d_j)`. Fails when any node is isolated.
    pub fn normalized_laplacian(&self) -> Result<DMatrix<f64>> {
        let degrees = self.degrees();
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedNode(i));
        }
        let inv_sqrt: Vec<f64> = degrees.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
        Ok(DMatrix::from_fn(self.n, self.n, |i, j| {
            self.dense[(i, j)] * inv_sqrt[i] * inv_sqrt[j]
        }))
    }
}

/// Degree vector and the scalar summaries derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub mean_degree: f64,
    pub d_min: usize,
    pub d_max: usize,
    /// Population standard deviation (divides by n).
    pub sigma_d: f64,
    pub cv_d: f64,
    /// Normalisation distortion `max(sqrt(d_mean/d_min) - 1, 1 - sqrt(d_mean/d_max))`.
    /// `None` when some node is isolated.
    pub alpha: Option<f64>,
}

impl DegreeProfile {
    pub fn from_degrees(degrees: Vec<usize>) -> Self {
        let n = degrees.len() as f64;
        let total: usize = degrees.iter().sum();
        let mean_degree = total as f64 / n;
        let d_min = degrees.iter().copied().min().unwrap_or(0);
        let d_max = degrees.iter().copied().max().unwrap_or(0);
        let var = degrees
            .iter()
            .map(|&d| (d as f64 - mean_degree).powi(2))
            .sum::<f64>()
            / n;
        let sigma_d = var.sqrt();
        let alpha = if d_min == 0 {
            None
        } else if d_min == d_max {
            Some(0.0)
        } else {
            let low = (mean_degree / d_min as f64).sqrt() - 1.0;
            let high = 1.0 - (mean_degree / d_max as f64).sqrt();
            Some(low.max(high).max(0.0))
        };
        Self {
            degrees,
            mean_degree,
            d_min,
            d_max,
            sigma_d,
            cv_d: sigma_d / mean_degree,
            alpha,
        }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.d_min == self.d_max
    }
}

/// Parses the plain edge-list format: two whitespace-separated non-negative
/// integers per line, `#` comment lines and blank lines skipped.
///
/// Returns the edges and the inferred node count (max index + 1).
pub fn parse_edge_list(text: &str, source: &str) -> Result<(Vec<(usize, usize)>, usize)> {
    let mut edges = Vec::new();
    let mut max_index = None::<usize>;
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse {
            path: source.to_string(),
            line: lineno + 1,
            msg,
        };
        let mut fields = trimmed.split_whitespace();
        let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
            return Err(parse_err(format!(
                "expected two node indices, got {trimmed:?}"
            )));
        };
        if fields.next().is_some() {
            return Err(parse_err(format!(
                "expected two node indices, got {trimmed:?}"
            )));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(format!("invalid node index {s:?}")))
        };
        let (i, j) = (parse(a)?, parse(b)?);
        max_index = Some(max_index.map_or(i.max(j), |m| m.max(i).max(j)));
        edges.push((i, j));
    }
    Ok((edges, max_index.map_or(0, |m| m + 1)))
}

/// Reads an edge-list file. `n` overrides the inferred node count.
pub fn read_edge_list(path: impl AsRef<Path>, n: Option<usize>) -> Result<AdjacencyMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (edges, inferred) = parse_edge_list(&text, &path.display().to_string())?;
    AdjacencyMatrix::from_edge_list(&edges, n.unwrap_or(inferred))
}

//! Degree-corrected stochastic blockmodel with LogNormal propensities.
//!
//! Random streams: every graph is keyed by one 64-bit seed. Row `i` of the
//! upper triangle draws from ChaCha8 stream `i`, one uniform per pair
//! `(i, j)`, `j > i`, in increasing `j`; the draw for a pair therefore depends
//! only on `(seed, i, j)` and rows can be sampled in any order. Propensities
//! use stream `u64::MAX`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::AdjacencyMatrix;

const THETA_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcsbmParams {
    pub n: usize,
    /// Number of blocks.
    pub k: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub cv_theta: f64,
    pub seed: u64,
}

impl DcsbmParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n < 2 {
            return Err(Error::TooFewNodes(self.n));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::DimensionOutOfRange {
                k: self.k,
                n: self.n,
            });
        }
        for (name, p) in [("p_in", self.p_in), ("p_out", self.p_out)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} outside [0, 1]"));
            }
        }
        if self.p_out > self.p_in {
            return bad(format!(
                "p_out = {} exceeds p_in = {}",
                self.p_out, self.p_in
            ));
        }
        if !(self.cv_theta >= 0.0 && self.cv_theta.is_finite()) {
            return bad(format!(
                "cv_theta = {} must be finite and >= 0",
                self.cv_theta
            ));
        }
        Ok(())
    }

    /// Block of node `i`: contiguous blocks whose sizes differ by at most one.
    pub fn label(&self, i: usize) -> usize {
        i * self.k / self.n
    }

    pub fn labels(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.label(i)).collect()
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// LogNormal propensities with `sigma^2 = ln(1 + cv^2)`, `mu = -sigma^2 / 2`,
/// divided by their sample mean.
pub fn sample_theta<R: Rng + ?Sized>(n: usize, cv_theta: f64, rng: &mut R) -> Result<Vec<f64>> {
    if !(cv_theta >= 0.0 && cv_theta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cv_theta = {cv_theta} must be finite and >= 0"
        )));
    }
    if cv_theta == 0.0 {
        return Ok(vec![1.0; n]);
    }
    let var = cv_theta.powi(2).ln_1p();
    let dist = LogNormal::new(-var / 2.0, var.sqrt())
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let raw: Vec<f64> = (0..n).map(|_| dist.sample(rng)).collect();
    let mean = raw.iter().sum::<f64>() / n as f64;
    Ok(raw.into_iter().map(|x| x / mean).collect())
}

/// Draws the adjacency matrix given propensities.
pub fn sample_dcsbm(params: &DcsbmParams, theta: &[f64]) -> Result<(AdjacencyMatrix, Vec<usize>)> {
    sample_dcsbm_with(params, theta, Execution::Sequential)
}

pub fn sample_dcsbm_with(
    params: &DcsbmParams,
    theta: &[f64],
    exec: Execution,
) -> Result<(AdjacencyMatrix, Vec<usize>)> {
    params.validate()?;
    let n = params.n;
    if theta.len() != n {
        return Err(Error::LengthMismatch(theta.len(), n));
    }
    if let Some(bad) = theta.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(Error::InvalidParameter(format!(
            "theta entry {bad} not positive"
        )));
    }
    let labels = params.labels();
    let rows: Vec<usize> = (0..n).collect();
    let edges: Vec<(usize, usize)> = exec
        .map(&rows, |&i| {
            let mut rng = stream(params.seed, i as u64);
            (i + 1..n)
                .filter(|&j| {
                    let b = if labels[i] == labels[j] {
                        params.p_in
                    } else {
                        params.p_out
                    };
                    let p = (theta[i] * theta[j] * b).min(1.0);
                    rng.random::<f64>() < p
                })
                .map(|j| (i, j))
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    Ok((AdjacencyMatrix::from_edge_list(&edges, n)?, labels))
}

#[derive(Debug, Clone)]
pub struct DcsbmSample {
    pub theta: Vec<f64>,
    pub adjacency: AdjacencyMatrix,
    pub labels: Vec<usize>,
}

/// Samples propensities and graph from `params.seed` alone.
pub fn generate(params: &DcsbmParams, exec: Execution) -> Result<DcsbmSample> {
    params.validate()?;
    let theta = sample_theta(
        params.n,
        params.cv_theta,
        &mut stream(params.seed, THETA_STREAM),
    )?;
    let (adjacency, labels) = sample_dcsbm_with(params, &theta, exec)?;
    Ok(DcsbmSample {
        theta,
        adjacency,
        labels,
    })
}

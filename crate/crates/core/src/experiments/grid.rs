use sha2::{Digest, Sha256};

use super::config::GridConfig;
use super::record::GraphRecord;
use crate::baseline::{assemble_report, embeddings, spectral_baseline};
use crate::dcsbm::{generate, DcsbmParams};
use crate::error::Result;
use crate::exec::Execution;

/// One grid cell and replicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub cv_theta: f64,
    pub p_in: f64,
    pub k: usize,
    pub replicate: usize,
}

/// First eight bytes (big-endian) of SHA-256 over the cell's coordinates.
pub fn cell_seed(master_seed: u64, n: usize, p_out: f64, cell: &GridCell) -> u64 {
    let key = format!(
        "regdep-grid|{master_seed}|{n}|{:016x}|{:016x}|{:016x}|{}|{}",
        cell.cv_theta.to_bits(),
        cell.p_in.to_bits(),
        p_out.to_bits(),
        cell.k,
        cell.replicate
    );
    let digest = Sha256::digest(key.as_bytes());
    u64::from_be_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// Cells in grid order: cv_theta, then p_in, then K, then replicate.
pub fn grid_cells(config: &GridConfig) -> Vec<GridCell> {
    let mut cells = Vec::with_capacity(config.graph_count());
    for &cv_theta in &config.cv_theta_values {
        for &p_in in &config.p_in_values {
            for &k in &config.k_values {
                for replicate in 0..config.replicates {
                    cells.push(GridCell {
                        cv_theta,
                        p_in,
                        k,
                        replicate,
                    });
                }
            }
        }
    }
    cells
}

/// Samples and analyses one graph.
pub fn run_cell(config: &GridConfig, cell: &GridCell) -> Result<GraphRecord> {
    let seed = cell_seed(config.master_seed, config.n, config.p_out, cell);
    let params = DcsbmParams {
        n: config.n,
        k: cell.k,
        p_in: cell.p_in,
        p_out: config.p_out,
        cv_theta: cell.cv_theta,
        seed,
    };
    let sample = generate(&params, Execution::Sequential)?;
    let a = &sample.adjacency;
    let base = spectral_baseline(a, cell.k)?;
    let emb = embeddings(a, cell.k)?;
    let report = assemble_report(a, &base, &emb)?;
    Ok(GraphRecord::from_report(
        seed,
        cell.p_in,
        config.p_out,
        cell.cv_theta,
        &report,
    ))
}

/// One record per cell, in grid order regardless of scheduling.
pub fn run_grid(config: &GridConfig, exec: Execution) -> Result<Vec<GraphRecord>> {
    config.validate()?;
    let cells = grid_cells(config);
    exec.map(&cells, |cell| run_cell(config, cell))
        .into_iter()
        .collect()
}

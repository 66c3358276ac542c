//! Rank correlations and the linear-interpolation quartile convention.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// 1-based ranks, ties sharing their average rank.
pub fn mid_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        let avg = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    let scale = sxx.max(syy);
    if sxx <= 1e-24 * scale.max(1.0) || syy <= 1e-24 * scale.max(1.0) {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: x.len(),
        });
    }
    Ok(())
}

pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    check_lengths(x, y)?;
    pearson(&mid_ranks(x), &mid_ranks(y))
}

/// Category codes with every category of fewer than two members folded into
/// one shared leftover category.
fn merge_rare(codes: &[usize]) -> Vec<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &c in codes {
        *counts.entry(c).or_default() += 1;
    }
    codes
        .iter()
        .map(|c| if counts[c] < 2 { usize::MAX } else { *c })
        .collect()
}

/// Spearman correlation of `x` and `y` after removing the effect of the
/// categorical `controls`: both rank vectors are regressed on an intercept
/// plus one indicator per non-reference category, and the residuals are
/// correlated.
pub fn partial_spearman(x: &[f64], y: &[f64], controls: &[Vec<usize>]) -> Result<f64> {
    check_lengths(x, y)?;
    let n = x.len();
    let mut columns: Vec<DVector<f64>> = vec![DVector::from_element(n, 1.0)];
    for control in controls {
        if control.len() != n {
            return Err(Error::LengthMismatch(control.len(), n));
        }
        let codes = merge_rare(control);
        let mut levels: Vec<usize> = codes.clone();
        levels.sort_unstable();
        levels.dedup();
        for &level in levels.iter().skip(1) {
            columns.push(DVector::from_iterator(
                n,
                codes.iter().map(|&c| if c == level { 1.0 } else { 0.0 }),
            ));
        }
    }
    let design = DMatrix::from_columns(&columns);
    let svd = design.clone().svd(true, true);
    let residual = |v: Vec<f64>| -> Result<Vec<f64>> {
        let b = DVector::from_vec(v);
        let beta = svd
            .solve(&b, 1e-10)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok((b - &design * beta).iter().copied().collect())
    };
    let rx = residual(mid_ranks(x))?;
    let ry = residual(mid_ranks(y))?;
    pearson(&rx, &ry)
}

/// Linear-interpolation percentile of sorted data at position `p (N - 1)`.
pub fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// 25th, 50th and 75th percentiles.
pub fn quartile_bounds(x: &[f64]) -> Result<[f64; 3]> {
    if x.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok([0.25, 0.5, 0.75].map(|p| percentile_sorted(&sorted, p)))
}

/// Quartile index in 0..4; boundary values fall in the lower quartile.
pub fn quartile_of(v: f64, bounds: &[f64; 3]) -> usize {
    bounds.iter().position(|&b| v <= b).unwrap_or(3)
}

pub fn quartiles(x: &[f64]) -> Result<Vec<usize>> {
    let b = quartile_bounds(x)?;
    Ok(x.iter().map(|&v| quartile_of(v, &b)).collect())
}

pub fn median(x: &[f64]) -> f64 {
    if x.is_empty() {
        return f64::NAN;
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    percentile_sorted(&sorted, 0.5)
}

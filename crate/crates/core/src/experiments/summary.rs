use std::fmt::Write as _;

use super::record::GraphRecord;
use super::stats::{median, partial_spearman, quartile_bounds, quartile_of, spearman};
use crate::error::{Error, Result};

/// Minimum usable records for quartile statistics.
pub const MIN_USABLE: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub total: usize,
    pub usable: usize,
    pub violations: usize,
    pub tightness_median: f64,
    pub tightness_max: f64,
    /// Partial Spearman of CV(d) and sin_theta, controlling K and p_in quartile.
    pub rho_arg1: f64,
    /// Spearman of CV(d) and sin_theta within each p_in quartile.
    pub rho_arg1_by_panel: [f64; 4],
    /// Spearman of delta_K and sin_theta within each CV(d) quartile.
    pub rho_arg2_by_quartile: [f64; 4],
    /// Spearman of CV(d) / delta_K and sin_theta, pooled.
    pub rho_arg3: f64,
    /// Median T2 share within each CV(d) / delta_K quartile.
    pub t2_share_by_quartile: [f64; 4],
    /// Median alpha within each CV(d) / delta_K quartile.
    pub alpha_by_quartile: [f64; 4],
}

impl SummaryStats {
    pub fn excluded(&self) -> usize {
        self.total - self.usable
    }
}

fn by_quartile<F>(groups: &[usize], mut f: F) -> [f64; 4]
where
    F: FnMut(&[usize]) -> f64,
{
    std::array::from_fn(|q| {
        let members: Vec<usize> = (0..groups.len()).filter(|&i| groups[i] == q).collect();
        f(&members)
    })
}

fn pick(records: &[&GraphRecord], idx: &[usize], f: impl Fn(&GraphRecord) -> f64) -> Vec<f64> {
    idx.iter().map(|&i| f(records[i])).collect()
}

/// Within-group Spearman; NaN when the group is too small or constant.
fn local_spearman(x: Vec<f64>, y: Vec<f64>) -> f64 {
    spearman(&x, &y).unwrap_or(f64::NAN)
}

pub fn summarize(records: &[GraphRecord]) -> Result<SummaryStats> {
    let usable: Vec<&GraphRecord> = records.iter().filter(|r| r.valid_assumptions).collect();
    if usable.len() < MIN_USABLE {
        return Err(Error::TooFewSamples {
            needed: MIN_USABLE,
            got: usable.len(),
        });
    }
    let all: Vec<usize> = (0..usable.len()).collect();
    let col = |f: fn(&GraphRecord) -> f64| pick(&usable, &all, f);
    let sin = col(|r| r.sin_theta);
    let cv = col(|r| r.cv_d);
    let ratio = col(GraphRecord::ratio);
    let p_in = col(|r| r.p_in);
    let tight = col(|r| r.tightness);

    let grouping = |x: &[f64]| -> Result<Vec<usize>> {
        let b = quartile_bounds(x)?;
        Ok(x.iter().map(|&v| quartile_of(v, &b)).collect())
    };
    let p_in_q = grouping(&p_in)?;
    let cv_q = grouping(&cv)?;
    let ratio_q = grouping(&ratio)?;
    let k_codes: Vec<usize> = usable.iter().map(|r| r.k).collect();

    let rho_arg1 = partial_spearman(&cv, &sin, &[k_codes, p_in_q.clone()])?;
    let rho_arg3 = spearman(&ratio, &sin)?;
    let s = |idx: &[usize], f: fn(&GraphRecord) -> f64| pick(&usable, idx, f);

    Ok(SummaryStats {
        total: records.len(),
        usable: usable.len(),
        violations: usable.iter().filter(|r| !r.bound_holds).count(),
        tightness_median: median(&tight),
        tightness_max: tight.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        rho_arg1,
        rho_arg1_by_panel: by_quartile(&p_in_q, |idx| {
            local_spearman(s(idx, |r| r.cv_d), s(idx, |r| r.sin_theta))
        }),
        rho_arg2_by_quartile: by_quartile(&cv_q, |idx| {
            local_spearman(s(idx, |r| r.delta_k), s(idx, |r| r.sin_theta))
        }),
        rho_arg3,
        t2_share_by_quartile: by_quartile(&ratio_q, |idx| median(&s(idx, |r| r.t2_share))),
        alpha_by_quartile: by_quartile(&ratio_q, |idx| median(&s(idx, |r| r.alpha))),
    })
}

impl SummaryStats {
    /// Plain-text report.
    pub fn render(&self) -> String {
        let q = |xs: &[f64; 4], digits: usize| {
            xs.iter()
                .map(|x| format!("{x:+.digits$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = String::new();
        let _ = writeln!(out, "graphs              {}", self.total);
        let _ = writeln!(out, "usable              {}", self.usable);
        let _ = writeln!(out, "excluded            {}", self.excluded());
        let _ = writeln!(out, "bound violations    {}", self.violations);
        let _ = writeln!(out, "tightness median    {:.4}", self.tightness_median);
        let _ = writeln!(out, "tightness max       {:.4}", self.tightness_max);
        let _ = writeln!(out, "rho CV(d) partial   {:+.3}", self.rho_arg1);
        let _ = writeln!(out, "rho CV(d) by p_in Q {}", q(&self.rho_arg1_by_panel, 3));
        let _ = writeln!(
            out,
            "rho delta by CV Q   {}",
            q(&self.rho_arg2_by_quartile, 3)
        );
        let _ = writeln!(out, "rho CV(d)/delta     {:+.3}", self.rho_arg3);
        let _ = writeln!(
            out,
            "T2 share by ratio Q {}",
            q(&self.t2_share_by_quartile, 3)
        );
        let _ = writeln!(out, "alpha by ratio Q    {}", q(&self.alpha_by_quartile, 3));
        out
    }
}

//! Spectral baseline `R`, residual `E = A - R`, and the Regularity Departure
//! Bound with its shared-drift / renormalisation-gap split.
//!
//! The baseline is the closest rank-K, symmetric, equal-row-sum matrix to `A`
//! in Frobenius norm:
//!
//! ```text
//! R = (d_mean / n) 11^T + sum_{k < K} mu_k v_k v_k^T
//! ```
//!
//! where `(mu_k, v_k)` are the top K-1 eigenpairs (signed order) of the
//! doubly-centred adjacency `P A P`, `P = I - 11^T / n`. The bound is
//!
//! ```text
//! sin_theta(U_A, U_L) <= 2 ||E||_F / delta_K + alpha (2 + alpha) sqrt(n d_mean) / delta_K
//!                        \______ T1 ______/   \__________________ T2 ________________/
//! ```
//!
//! with `delta_K = lambda_K(R) - lambda_{K+1}(R)` in signed order.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, DegreeProfile};
use crate::spectral::{
    subspace_disagreement, symmetric_eigendecomposition, top_k_by_magnitude, EmbeddingSubspace,
};

/// Eigengaps at or below this value violate the bound's gap assumption.
pub const MIN_EIGENGAP: f64 = 1e-9;

/// Absolute slack allowed when checking `actual <= T1 + T2`.
pub const VALIDITY_TOLERANCE: f64 = 1e-9;

/// `P A P` with `P = I - 11^T / n`.
pub fn centered_adjacency(a: &AdjacencyMatrix) -> DMatrix<f64> {
    let n = a.n();
    let nf = n as f64;
    let degrees = a.degrees();
    let total = degrees.iter().sum::<usize>() as f64;
    let m = a.as_matrix();
    DMatrix::from_fn(n, n, |i, j| {
        m[(i, j)] - degrees[i] as f64 / nf - degrees[j] as f64 / nf + total / (nf * nf)
    })
}

/// Householder reflector `H = I - beta w w^T` whose first column is `1/sqrt(n)`.
/// Its remaining columns form an orthonormal basis of the complement of `1`.
struct OnesReflector {
    w: DVector<f64>,
    beta: f64,
}

impl OnesReflector {
    fn new(n: usize) -> Self {
        let x = 1.0 / (n as f64).sqrt();
        let mut w = DVector::from_element(n, x);
        w[0] -= 1.0;
        let beta = 2.0 / w.norm_squared();
        Self { w, beta }
    }

    /// `H M H` for symmetric `M`, as the rank-two update `M - w q^T - q w^T`.
    fn conjugate(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let p = m * &self.w * self.beta;
        let scale = 0.5 * self.beta * self.w.dot(&p);
        let q = &p - &self.w * scale;
        m - &self.w * q.transpose() - &q * self.w.transpose()
    }

    /// `H [0; y]`: lifts a vector from the complement coordinates back to R^n.
    fn lift(&self, y: &[f64]) -> DVector<f64> {
        let n = self.w.len();
        let mut z = DVector::zeros(n);
        z.rows_mut(1, n - 1).copy_from_slice(y);
        let coef = self.beta * self.w.dot(&z);
        z - &self.w * coef
    }
}

/// The baseline `R` together with the residual and centred-spectrum data.
#[derive(Debug, Clone)]
pub struct BaselineDecomposition {
    pub k: usize,
    pub mean_degree: f64,
    pub r: DMatrix<f64>,
    /// Top K-1 eigenvalues of the centred adjacency, signed-descending.
    pub mu: Vec<f64>,
    /// n x (K-1), orthonormal, every column orthogonal to `1`.
    pub v: DMatrix<f64>,
    /// Frobenius norm of the centred spectrum beyond the top K-1.
    pub tau_k: f64,
    /// `lambda_K(R) - lambda_{K+1}(R)` in signed order; NaN when K = n.
    pub delta_k: f64,
    /// Spectrum of R, signed-descending: `{d_mean, mu_1..mu_{K-1}, 0 x (n-K)}`.
    pub r_spectrum: Vec<f64>,
    pub e: DMatrix<f64>,
    pub frob_e: f64,
    /// `P A P`.
    pub centered: DMatrix<f64>,
}

impl BaselineDecomposition {
    pub fn n(&self) -> usize {
        self.r.nrows()
    }

    /// True when every selected `mu_k` is positive, so the signed and
    /// magnitude orderings of R agree.
    pub fn assortative(&self) -> bool {
        self.mu.iter().all(|&m| m > 0.0)
    }

    /// Orthonormal basis of the column space of R: `[1/sqrt(n) | v_1 .. v_{K-1}]`.
    pub fn range_basis(&self) -> EmbeddingSubspace {
        let n = self.n();
        let mut basis = DMatrix::zeros(n, self.k);
        basis.column_mut(0).fill(1.0 / (n as f64).sqrt());
        if self.k > 1 {
            basis.columns_mut(1, self.k - 1).copy_from(&self.v);
        }
        let mut eigenvalues = vec![self.mean_degree];
        eigenvalues.extend_from_slice(&self.mu);
        EmbeddingSubspace {
            basis,
            eigenvalues,
            magnitude_gap: f64::NAN,
            ill_defined: false,
            signed_order_agrees: true,
        }
    }
}

/// Builds the spectral baseline of rank `k`.
///
/// The centred eigenproblem is solved on the (n-1)-dimensional complement of
/// `1`, so the constant direction can never be selected as a `v_k`.
pub fn spectral_baseline(a: &AdjacencyMatrix, k: usize) -> Result<BaselineDecomposition> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let profile = a.degree_profile();
    let mean_degree = profile.mean_degree;

    let reflector = OnesReflector::new(n);
    let conj = reflector.conjugate(a.as_matrix());
    let block = conj.view((1, 1), (n - 1, n - 1)).into_owned();
    let block_eig = symmetric_eigendecomposition(&block)?;

    let kept = k - 1;
    let mu: Vec<f64> = block_eig.eigenvalues[..kept].to_vec();
    let mut v = DMatrix::zeros(n, kept);
    for j in 0..kept {
        let y: Vec<f64> = block_eig.eigenvectors.column(j).iter().copied().collect();
        v.set_column(j, &reflector.lift(&y));
    }
    let tau_k = block_eig.eigenvalues[kept..]
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();

    let mut r = DMatrix::from_element(n, n, mean_degree / n as f64);
    for (col, &m) in v.column_iter().zip(&mu) {
        r += col * col.transpose() * m;
    }

    let mut r_spectrum = Vec::with_capacity(n);
    r_spectrum.push(mean_degree);
    r_spectrum.extend_from_slice(&mu);
    r_spectrum.resize(n, 0.0);
    r_spectrum.sort_by(|x, y| y.total_cmp(x));
    let delta_k = if k < n {
        r_spectrum[k - 1] - r_spectrum[k]
    } else {
        f64::NAN
    };

    let e = a.as_matrix() - &r;
    let frob_e = e.norm();

    Ok(BaselineDecomposition {
        k,
        mean_degree,
        r,
        mu,
        v,
        tau_k,
        delta_k,
        r_spectrum,
        e,
        frob_e,
        centered: centered_adjacency(a),
    })
}

/// Bound terms, present only when `d_min > 0` and `delta_K > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTerms {
    /// Shared drift `2 ||E||_F / delta_K`.
    pub t1: f64,
    /// Renormalisation gap `alpha (2 + alpha) sqrt(n d_mean) / delta_K`.
    pub t2: f64,
    pub rhs: f64,
    pub actual: f64,
    pub tightness: f64,
    pub t2_share: f64,
    pub valid: bool,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub k: usize,
    pub profile: DegreeProfile,
    pub delta_k: f64,
    pub frob_e: f64,
    pub frob_a: f64,
    pub tau_k: f64,
    pub assortative: bool,
    /// `sin_theta(U_A, U_L)`; `None` when some node is isolated.
    pub actual: Option<f64>,
    /// True when either top-K subspace has a vanishing magnitude gap.
    pub ill_defined: bool,
    pub assumptions_met: bool,
    pub terms: Option<BoundTerms>,
}

impl BoundReport {
    pub fn n(&self) -> usize {
        self.profile.n()
    }

    /// `CV(d) / delta_K`.
    pub fn heterogeneity_ratio(&self) -> f64 {
        self.profile.cv_d / self.delta_k
    }
}

/// Top-K embeddings of A and of L (when L exists).
pub(crate) struct Embeddings {
    pub ase: EmbeddingSubspace,
    pub lse: Option<EmbeddingSubspace>,
}

pub(crate) fn embeddings(a: &AdjacencyMatrix, k: usize) -> Result<Embeddings> {
    let ase = top_k_by_magnitude(&symmetric_eigendecomposition(a.as_matrix())?, k)?;
    let lse = match a.normalized_laplacian() {
        Ok(l) => Some(top_k_by_magnitude(&symmetric_eigendecomposition(&l)?, k)?),
        Err(Error::IsolatedNode(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Embeddings { ase, lse })
}

pub(crate) fn assemble_report(
    a: &AdjacencyMatrix,
    base: &BaselineDecomposition,
    emb: &Embeddings,
) -> Result<BoundReport> {
    let profile = a.degree_profile();
    let actual = match &emb.lse {
        Some(lse) => Some(subspace_disagreement(&emb.ase, lse)?),
        None => None,
    };
    let ill_defined = emb.ase.ill_defined || emb.lse.as_ref().is_some_and(|s| s.ill_defined);
    let assumptions_met = profile.d_min > 0 && base.delta_k > MIN_EIGENGAP;
    let terms = match (assumptions_met, actual, profile.alpha) {
        (true, Some(actual), Some(alpha)) => {
            let n = a.n() as f64;
            let t1 = 2.0 * base.frob_e / base.delta_k;
            let t2 = alpha * (2.0 + alpha) * (n * profile.mean_degree).sqrt() / base.delta_k;
            let rhs = t1 + t2;
            Some(BoundTerms {
                t1,
                t2,
                rhs,
                actual,
                tightness: actual / rhs,
                t2_share: t2 / rhs,
                valid: actual <= rhs + VALIDITY_TOLERANCE,
            })
        }
        _ => None,
    };
    Ok(BoundReport {
        k: base.k,
        frob_a: a.frobenius_sq().sqrt(),
        delta_k: base.delta_k,
        frob_e: base.frob_e,
        tau_k: base.tau_k,
        assortative: base.assortative(),
        profile,
        actual,
        ill_defined,
        assumptions_met,
        terms,
    })
}

/// Evaluates the bound for `a` at embedding dimension `k`.
///
/// Assumption violations (isolated nodes, non-positive eigengap) are encoded
/// in the report rather than raised.
pub fn bound_report(a: &AdjacencyMatrix, k: usize) -> Result<BoundReport> {
    let base = spectral_baseline(a, k)?;
    let emb = embeddings(a, k)?;
    assemble_report(a, &base, &emb)
}

/// Every intermediate inequality of the bound, evaluated numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualDiagnostics {
    /// `||F_direct - F_expanded||_F / ||F_direct||_F` for the four-term expansion.
    pub expansion_rel_error: f64,
    pub frob_f: f64,
    /// `(||E||_F + alpha (2 + alpha) sqrt(n d_mean)) / d_mean`.
    pub frob_f_bound: f64,
    /// `sin_theta(U_A, U_R)`.
    pub ase_drift: f64,
    /// `||E||_F / delta_K`.
    pub ase_drift_bound: f64,
    /// `sin_theta(U_L, U_R)`.
    pub lse_drift: f64,
    /// `||E||_F / delta_K + alpha (2 + alpha) sqrt(n d_mean) / delta_K`.
    pub lse_drift_bound: f64,
    pub alpha: f64,
}

/// Evaluates `F = L - R / d_mean` directly and via
/// `(E + Delta A + A Delta + Delta A Delta) / d_mean`, plus both drift bounds.
pub fn laplacian_residual_check(
    a: &AdjacencyMatrix,
    base: &BaselineDecomposition,
) -> Result<ResidualDiagnostics> {
    let n = a.n();
    let profile = a.degree_profile();
    let l = a.normalized_laplacian()?;
    let alpha = profile
        .alpha
        .expect("no isolated node after Laplacian succeeded");
    let dbar = profile.mean_degree;
    let delta: Vec<f64> = profile
        .degrees
        .iter()
        .map(|&d| (dbar / d as f64).sqrt() - 1.0)
        .collect();

    let f_direct = &l - &base.r / dbar;
    let am = a.as_matrix();
    let f_expanded = DMatrix::from_fn(n, n, |i, j| {
        let aij = am[(i, j)];
        (base.e[(i, j)] + delta[i] * aij + aij * delta[j] + delta[i] * aij * delta[j]) / dbar
    });
    let frob_f = f_direct.norm();
    let expansion_rel_error = (&f_direct - &f_expanded).norm() / frob_f;

    let gap_term = alpha * (2.0 + alpha) * (n as f64 * dbar).sqrt();
    let anchor = base.range_basis();
    let emb = embeddings(a, base.k)?;
    let lse = emb.lse.expect("Laplacian exists");

    Ok(ResidualDiagnostics {
        expansion_rel_error,
        frob_f,
        frob_f_bound: (base.frob_e + gap_term) / dbar,
        ase_drift: subspace_disagreement(&emb.ase, &anchor)?,
        ase_drift_bound: base.frob_e / base.delta_k,
        lse_drift: subspace_disagreement(&lse, &anchor)?,
        lse_drift_bound: (base.frob_e + gap_term) / base.delta_k,
        alpha,
    })
}

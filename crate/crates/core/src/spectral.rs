//! Dense symmetric eigendecomposition, top-K selection by eigenvalue
//! magnitude, and the sin-theta distance between subspaces.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Gap below which the top-K subspace is considered ill-defined.
pub const ILL_DEFINED_GAP: f64 = 1e-9;

const EIGEN_MAX_SWEEPS: usize = 100_000;

/// Eigenpairs of a symmetric matrix, eigenvalues in signed decreasing order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column `j` pairs with `eigenvalues[j]`.
    pub eigenvectors: DMatrix<f64>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column indices sorted by descending |lambda|, then descending signed
    /// lambda, then ascending index.
    pub fn magnitude_order(&self) -> Vec<usize> {
        let lam = &self.eigenvalues;
        let mut order: Vec<usize> = (0..lam.len()).collect();
        order.sort_by(|&a, &b| {
            lam[b]
                .abs()
                .total_cmp(&lam[a].abs())
                .then(lam[b].total_cmp(&lam[a]))
                .then(a.cmp(&b))
        });
        order
    }
}

/// Full eigendecomposition of a symmetric matrix.
///
/// The input is symmetrised by averaging with its transpose first.
pub fn symmetric_eigendecomposition(m: &DMatrix<f64>) -> Result<EigenDecomposition> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            n,
            m.ncols()
        )));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, EIGEN_MAX_SWEEPS)
        .ok_or(Error::EigenNonConvergence { n })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let eigenvectors = eig.eigenvectors.select_columns(&order);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// A K-dimensional subspace given by an orthonormal basis.
#[derive(Debug, Clone)]
pub struct EmbeddingSubspace {
    /// n x K, orthonormal columns.
    pub basis: DMatrix<f64>,
    /// Eigenvalues paired with the basis columns, magnitude-descending. Empty
    /// for subspaces that did not come from an eigendecomposition.
    pub eigenvalues: Vec<f64>,
    /// `|lambda_(K)| - |lambda_(K+1)|` in magnitude order; 0 when K = n.
    pub magnitude_gap: f64,
    /// Set when the magnitude gap is too small to single out the subspace.
    pub ill_defined: bool,
    /// False when the top-K by magnitude and the top-K by signed value pick
    /// different eigenpairs.
    pub signed_order_agrees: bool,
}

impl EmbeddingSubspace {
    /// Wraps a basis with orthonormal columns.
    pub fn from_orthonormal(basis: DMatrix<f64>) -> Self {
        Self {
            basis,
            eigenvalues: Vec::new(),
            magnitude_gap: f64::NAN,
            ill_defined: false,
            signed_order_agrees: true,
        }
    }

    /// Orthonormalises the columns of `m` with a thin QR factorisation.
    pub fn span_of(m: DMatrix<f64>) -> Self {
        let q = m.qr().q();
        Self::from_orthonormal(q)
    }

    pub fn n(&self) -> usize {
        self.basis.nrows()
    }

    pub fn k(&self) -> usize {
        self.basis.ncols()
    }
}

/// Selects the K eigenvectors of largest |eigenvalue|.
pub fn top_k_by_magnitude(decomp: &EigenDecomposition, k: usize) -> Result<EmbeddingSubspace> {
    let n = decomp.n();
    if k == 0 || k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let order = decomp.magnitude_order();
    let lam = &decomp.eigenvalues;
    let chosen = &order[..k];
    let magnitude_gap = if k == n {
        0.0
    } else {
        lam[order[k - 1]].abs() - lam[order[k]].abs()
    };
    // signed order is just 0..k since eigenvalues are stored signed-descending
    let mut sorted = chosen.to_vec();
    sorted.sort_unstable();
    let signed_order_agrees = sorted.iter().copied().eq(0..k);
    Ok(EmbeddingSubspace {
        basis: decomp.eigenvectors.select_columns(chosen),
        eigenvalues: chosen.iter().map(|&j| lam[j]).collect(),
        magnitude_gap,
        ill_defined: k < n && magnitude_gap <= ILL_DEFINED_GAP,
        signed_order_agrees,
    })
}

fn check_same_shape(u: &EmbeddingSubspace, v: &EmbeddingSubspace) -> Result<()> {
    if u.n() != v.n() || u.k() != v.k() {
        return Err(Error::DimensionMismatch(format!(
            "subspaces are {}x{} and {}x{}",
            u.n(),
            u.k(),
            v.n(),
            v.k()
        )));
    }
    Ok(())
}

/// `sqrt(sum_k sin^2 theta_k)`, the Frobenius sin-theta distance.
///
/// Evaluated as `||V - U U^T V||_F`, which equals `sqrt(K - ||U^T V||_F^2)` for
/// orthonormal bases but keeps full relative accuracy near zero.
pub fn subspace_disagreement(u: &EmbeddingSubspace, v: &EmbeddingSubspace) -> Result<f64> {
    check_same_shape(u, v)?;
    let overlap = u.basis.transpose() * &v.basis;
    let residual = &v.basis - &u.basis * overlap;
    let k = u.k() as f64;
    Ok(residual.norm().min(k.sqrt()))
}

/// Principal angles in radians, ascending, from the singular values of `U^T V`.
pub fn principal_angles(u: &EmbeddingSubspace, v: &EmbeddingSubspace) -> Result<Vec<f64>> {
    check_same_shape(u, v)?;
    let overlap = u.basis.transpose() * &v.basis;
    let mut sv: Vec<f64> = overlap
        .singular_values()
        .iter()
        .map(|s| s.clamp(0.0, 1.0))
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv.into_iter().map(f64::acos).collect())
}

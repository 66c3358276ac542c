//! Graphs on which L is a scalar multiple of A, so ASE and LSE coincide for
//! every K with a well-defined top-K subspace.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::spectral::{subspace_disagreement, symmetric_eigendecomposition, top_k_by_magnitude};

/// Entrywise tolerance for `L = lambda A`.
pub const SCALAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyClassification {
    Regular(usize),
    BipartiteBiregular {
        d1: usize,
        d2: usize,
        part1: Vec<usize>,
        part2: Vec<usize>,
    },
    NotScalar,
}

impl FamilyClassification {
    /// `lambda` with `L = lambda A`.
    pub fn scalar_lambda(&self) -> Option<f64> {
        self.product_constant().map(|c| 1.0 / (c as f64).sqrt())
    }

    /// The common value of `d_i d_j` over edges.
    pub fn product_constant(&self) -> Option<usize> {
        match self {
            FamilyClassification::Regular(d) => Some(d * d),
            FamilyClassification::BipartiteBiregular { d1, d2, .. } => Some(d1 * d2),
            FamilyClassification::NotScalar => None,
        }
    }

    pub fn is_scalar(&self) -> bool {
        !matches!(self, FamilyClassification::NotScalar)
    }

    pub fn label(&self) -> &'static str {
        match self {
            FamilyClassification::Regular(_) => "regular",
            FamilyClassification::BipartiteBiregular { .. } => "bipartite-biregular",
            FamilyClassification::NotScalar => "not-scalar",
        }
    }
}

/// Two-colouring by BFS; `None` if an odd cycle is found.
fn two_colouring(a: &AdjacencyMatrix) -> Option<Vec<u8>> {
    let n = a.n();
    let mut colour = vec![u8::MAX; n];
    for start in 0..n {
        if colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in a.neighbors(u) {
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    queue.push_back(v);
                } else if colour[v] == colour[u] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

/// Classifies a connected graph by whether `d_i d_j` is constant over edges.
pub fn classify_scalar_family(a: &AdjacencyMatrix) -> Result<FamilyClassification> {
    if !a.is_connected() {
        return Err(Error::Disconnected);
    }
    let degrees = a.degrees();
    let d0 = degrees[0];
    if degrees.iter().all(|&d| d == d0) {
        return Ok(FamilyClassification::Regular(d0));
    }
    let Some(colour) = two_colouring(a) else {
        return Ok(FamilyClassification::NotScalar);
    };
    let (part1, part2): (Vec<usize>, Vec<usize>) = (0..a.n()).partition(|&i| colour[i] == 0);
    let d1 = degrees[part1[0]];
    let d2 = degrees[part2[0]];
    let uniform =
        part1.iter().all(|&i| degrees[i] == d1) && part2.iter().all(|&i| degrees[i] == d2);
    Ok(if uniform {
        FamilyClassification::BipartiteBiregular {
            d1,
            d2,
            part1,
            part2,
        }
    } else {
        FamilyClassification::NotScalar
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementCheck {
    pub k: usize,
    /// `None` when the top-K subspace of A or L is not unique.
    pub sin_theta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub family: FamilyClassification,
    pub lambda: f64,
    /// `max_ij |L_ij - lambda A_ij|`.
    pub scalar_residual: f64,
    pub checks: Vec<AgreementCheck>,
}

impl AgreementReport {
    pub fn max_sin_theta(&self) -> f64 {
        self.checks
            .iter()
            .filter_map(|c| c.sin_theta)
            .fold(0.0, f64::max)
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| c.sin_theta.is_none()).count()
    }
}

/// Checks `L = lambda A` and evaluates `sin_theta(U_A, U_L)` for K = 1..=k_max.
pub fn verify_perfect_agreement(a: &AdjacencyMatrix, k_max: usize) -> Result<AgreementReport> {
    let n = a.n();
    if k_max == 0 || k_max > n {
        return Err(Error::DimensionOutOfRange { k: k_max, n });
    }
    let family = classify_scalar_family(a)?;
    let lambda = family.scalar_lambda().ok_or(Error::NotScalarFamily)?;
    let l = a.normalized_laplacian()?;
    let scalar_residual = (&l - a.as_matrix() * lambda).amax();
    if scalar_residual > SCALAR_TOLERANCE {
        return Err(Error::NotScalarFamily);
    }

    let eig_a = symmetric_eigendecomposition(a.as_matrix())?;
    let eig_l = symmetric_eigendecomposition(&l)?;
    let checks = (1..=k_max)
        .map(|k| {
            let ua = top_k_by_magnitude(&eig_a, k)?;
            let ul = top_k_by_magnitude(&eig_l, k)?;
            let sin_theta = if ua.ill_defined || ul.ill_defined {
                None
            } else {
                Some(subspace_disagreement(&ua, &ul)?)
            };
            Ok(AgreementCheck { k, sin_theta })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AgreementReport {
        family,
        lambda,
        scalar_residual,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(usize, usize)], n: usize) -> AdjacencyMatrix {
        AdjacencyMatrix::from_edge_list(edges, n).unwrap()
    }

    fn complete_bipartite(p: usize, q: usize) -> AdjacencyMatrix {
        let edges: Vec<_> = (0..p)
            .flat_map(|i| (p..p + q).map(move |j| (i, j)))
            .collect();
        graph(&edges, p + q)
    }

    #[test]
    fn cycle_is_regular() {
        let c5 = graph(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 5);
        let f = classify_scalar_family(&c5).unwrap();
        assert_eq!(f, FamilyClassification::Regular(2));
        assert_eq!(f.scalar_lambda(), Some(0.5));
    }

    #[test]
    fn k35_is_biregular() {
        let f = classify_scalar_family(&complete_bipartite(3, 5)).unwrap();
        match &f {
            FamilyClassification::BipartiteBiregular {
                d1,
                d2,
                part1,
                part2,
            } => {
                assert_eq!((*d1, *d2), (5, 3));
                assert_eq!(part1, &vec![0, 1, 2]);
                assert_eq!(part2.len(), 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(f.product_constant(), Some(15));
    }

    #[test]
    fn paw_and_path_are_not_scalar() {
        let paw = graph(&[(0, 1), (0, 2), (1, 2), (2, 3)], 4);
        assert_eq!(
            classify_scalar_family(&paw).unwrap(),
            FamilyClassification::NotScalar
        );
        // P4 is bipartite with parts {0,2}, {1,3} of degrees (1,2) and (2,1)
        let p4 = graph(&[(0, 1), (1, 2), (2, 3)], 4);
        assert_eq!(
            classify_scalar_family(&p4).unwrap(),
            FamilyClassification::NotScalar
        );
    }

    #[test]
    fn disconnected_rejected() {
        let g = graph(&[(0, 1), (2, 3)], 4);
        assert!(matches!(
            classify_scalar_family(&g),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn star_agreement() {
        let star = complete_bipartite(1, 6);
        let r = verify_perfect_agreement(&star, 7).unwrap();
        assert!(r.scalar_residual <= SCALAR_TOLERANCE);
        assert!((r.lambda - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert!(r.max_sin_theta() <= 1e-8);
        // eigenvalues +-sqrt6 and five zeros: K = 1 ties on magnitude
        assert_eq!(r.checks[0].sin_theta, None);
        assert!(r.checks[1].sin_theta.is_some());
    }

    #[test]
    fn not_scalar_errors() {
        let paw = graph(&[(0, 1), (0, 2), (1, 2), (2, 3)], 4);
        assert!(matches!(
            verify_perfect_agreement(&paw, 2),
            Err(Error::NotScalarFamily)
        ));
    }
}

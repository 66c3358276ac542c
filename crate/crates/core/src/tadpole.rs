//! Tadpole graphs `Tad(3, n-3)`: a triangle with a pendant path. The family
//! on which the K = 1 disagreement tends to 1 without reaching it.

use nalgebra::DVector;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::AdjacencyMatrix;
use crate::spectral::symmetric_eigendecomposition;

/// Rayleigh-quotient lower bound on the spectral radius of every tadpole.
pub const RAYLEIGH_FLOOR: f64 = 28.0 / 13.0;

/// Path entries below this fraction of the largest |u| are under the
/// eigensolver's resolution and are left out of the sinh fit.
pub const PROFILE_FLOOR: f64 = 1e-6;

/// Triangle on {0, 1, 2} and path 2 - 3 - ... - (n-1).
pub fn tadpole_graph(n: usize) -> Result<AdjacencyMatrix> {
    if n < 4 {
        return Err(Error::TadpoleTooSmall(n));
    }
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    edges.extend((2..n - 1).map(|i| (i, i + 1)));
    AdjacencyMatrix::from_edge_list(&edges, n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TadpoleRecord {
    pub n: usize,
    /// `sin_theta(u, w)` between the leading eigenvectors of A and L.
    pub f: f64,
    pub cos_theta: f64,
    /// Spectral radius of A.
    pub lambda: f64,
    /// `arccosh(lambda / 2)`.
    pub t: f64,
    /// Max relative deviation of path entries from `C sinh((n - k) t)`.
    pub sinh_profile_error: f64,
    /// Max entrywise deviation of `w` from `sqrt(d_i) / sqrt(2n)`.
    pub perron_error: f64,
}

impl TadpoleRecord {
    /// `cos_theta * sqrt(2n)`.
    pub fn s_n(&self) -> f64 {
        self.cos_theta * (2.0 * self.n as f64).sqrt()
    }
}

fn leading_vector(m: &nalgebra::DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let eig = symmetric_eigendecomposition(m)?;
    let mut u: DVector<f64> = eig.eigenvectors.column(0).into_owned();
    if u.sum() < 0.0 {
        u = -u;
    }
    Ok((eig.eigenvalues[0], u))
}

/// `sinh((n - k) t) / sinh((n - 3) t)` without overflow.
fn scaled_sinh(n: usize, k: usize, t: f64) -> f64 {
    let a = (n - k) as f64 * t;
    let b = (n - 3) as f64 * t;
    (-(b - a)).exp() * (-(-2.0 * a).exp_m1()) / (-(-2.0 * b).exp_m1())
}

fn sinh_profile_error(u: &DVector<f64>, t: f64) -> f64 {
    let n = u.len();
    let floor = PROFILE_FLOOR * u.amax();
    let (nodes, basis): (Vec<usize>, Vec<f64>) = (3..n)
        .filter(|&k| u[k].abs() >= floor)
        .map(|k| (k, scaled_sinh(n, k, t)))
        .unzip();
    let num: f64 = nodes.iter().zip(&basis).map(|(&k, s)| u[k] * s).sum();
    let den: f64 = basis.iter().map(|s| s * s).sum();
    let c = num / den;
    nodes
        .iter()
        .zip(&basis)
        .map(|(&k, s)| ((u[k] - c * s) / u[k]).abs())
        .fold(0.0, f64::max)
}

pub fn analyze_tadpole(n: usize) -> Result<TadpoleRecord> {
    let a = tadpole_graph(n)?;
    let l = a.normalized_laplacian()?;
    let (lambda, u) = leading_vector(a.as_matrix())?;
    let (_, w) = leading_vector(&l)?;

    let scale = (2.0 * n as f64).sqrt();
    let perron_error = a
        .degrees()
        .iter()
        .zip(w.iter())
        .map(|(&d, wi)| (wi - (d as f64).sqrt() / scale).abs())
        .fold(0.0, f64::max);

    let cos_theta = u.dot(&w).abs().min(1.0);
    let t = (lambda / 2.0).acosh();
    Ok(TadpoleRecord {
        n,
        f: (1.0 - cos_theta * cos_theta).sqrt(),
        cos_theta,
        lambda,
        t,
        sinh_profile_error: sinh_profile_error(&u, t),
        perron_error,
    })
}

/// One record per entry of `ns`, in input order.
pub fn tadpole_curve(ns: &[usize]) -> Result<Vec<TadpoleRecord>> {
    tadpole_curve_with(ns, Execution::default())
}

pub fn tadpole_curve_with(ns: &[usize], exec: Execution) -> Result<Vec<TadpoleRecord>> {
    exec.map(ns, |&n| analyze_tadpole(n)).into_iter().collect()
}

/// Binary fixed-point arithmetic with `bits` fractional bits.
#[derive(Debug, Clone, Copy)]
struct Fixed {
    bits: u64,
}

impl Fixed {
    fn encode(self, x: f64) -> BigInt {
        let scaled = x * 2f64.powi(52);
        let mantissa = BigInt::from(scaled as i64);
        mantissa << (self.bits - 52)
    }

    fn int(self, k: i64) -> BigInt {
        BigInt::from(k) << self.bits
    }

    fn recip(self, x: &BigInt) -> BigInt {
        (BigInt::one() << (2 * self.bits)) / x
    }

    fn mul(self, x: &BigInt, y: &BigInt) -> BigInt {
        (x * y) >> self.bits
    }

    fn decode(self, x: &BigInt) -> f64 {
        let shift = self.bits.saturating_sub(60);
        (x >> shift).to_f64().unwrap_or(f64::NAN) / 2f64.powi((self.bits - shift) as i32)
    }
}

/// Number of eigenvalues of `Tad(3, n-3)` strictly above `q`, by Sylvester
/// inertia of `A - qI` using the elimination order leaf, path, triangle.
fn count_above(fx: Fixed, n: usize, q: &BigInt) -> usize {
    let nudge = |p: BigInt| if p.is_zero() { BigInt::one() } else { p };
    let mut positive = 0;
    let mut pivot = nudge(-q.clone());
    if pivot.is_positive() {
        positive += 1;
    }
    for _ in 3..n - 1 {
        pivot = nudge(-q.clone() - fx.recip(&pivot));
        if pivot.is_positive() {
            positive += 1;
        }
    }
    let a22 = -q.clone() - fx.recip(&pivot);
    let p0 = nudge(-q.clone());
    let inv0 = fx.recip(&p0);
    let p1 = nudge(-q.clone() - &inv0);
    let off = fx.int(1) - &inv0;
    let p2 = nudge(a22 - &inv0 - fx.mul(&fx.mul(&fx.recip(&p1), &off), &off));
    positive + [p0, p1, p2].iter().filter(|p| p.is_positive()).count()
}

/// An interval `[lo, hi]` of width `2^-bits` containing the spectral radius.
#[derive(Debug, Clone)]
pub struct PerronBracket {
    pub n: usize,
    pub bits: u64,
    lo: BigInt,
    hi: BigInt,
}

impl PerronBracket {
    pub fn lo(&self) -> f64 {
        Fixed { bits: self.bits }.decode(&self.lo)
    }

    pub fn hi(&self) -> f64 {
        Fixed { bits: self.bits }.decode(&self.hi)
    }

    /// True when the spectral radius of `Tad(3, m-3)` exceeds this bracket.
    pub fn exceeded_by(&self, m: usize) -> Result<bool> {
        if m < 4 {
            return Err(Error::TadpoleTooSmall(m));
        }
        Ok(count_above(Fixed { bits: self.bits }, m, &self.hi) >= 1)
    }
}

/// Brackets the spectral radius of `Tad(3, n-3)` in extended precision.
///
/// Consecutive radii differ by roughly `exp(-0.96 n)`, far below f64
/// resolution once n reaches 50; `bits` should exceed `1.4 n`.
pub fn perron_bracket(n: usize, bits: u64) -> Result<PerronBracket> {
    if n < 4 {
        return Err(Error::TadpoleTooSmall(n));
    }
    if bits < 64 {
        return Err(Error::InvalidParameter(format!(
            "need at least 64 bits, got {bits}"
        )));
    }
    let fx = Fixed { bits };
    let mut lo = fx.encode(2.0);
    let mut hi = fx.int(3);
    debug_assert_eq!(count_above(fx, n, &lo), 1);
    debug_assert_eq!(count_above(fx, n, &hi), 0);
    let one = BigInt::one();
    while &hi - &lo > one {
        let mid: BigInt = (&lo + &hi) >> 1;
        if count_above(fx, n, &mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(PerronBracket { n, bits, lo, hi })
}

/// Certifies `lambda_{n_1} < lambda_{n_2} < ...` for increasing `ns`.
pub fn certify_radius_increasing(ns: &[usize]) -> Result<bool> {
    let bits = 2 * ns.iter().copied().max().unwrap_or(4) as u64 + 128;
    for pair in ns.windows(2) {
        if pair[1] <= pair[0] {
            return Ok(false);
        }
        if !perron_bracket(pair[0], bits)?.exceeded_by(pair[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_tadpole_is_paw() {
        let a = tadpole_graph(4).unwrap();
        assert_eq!(a.degrees(), vec![2, 2, 3, 1]);
        assert_eq!(a.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
    }

    #[test]
    fn volume_is_2n() {
        let a = tadpole_graph(6).unwrap();
        assert_eq!(a.edge_count(), 6);
        assert_eq!(a.degrees().iter().sum::<usize>(), 12);
        assert_eq!(a.degrees(), vec![2, 2, 3, 2, 2, 1]);
        assert!(a.is_connected());
    }

    #[test]
    fn too_small() {
        assert!(matches!(tadpole_graph(3), Err(Error::TadpoleTooSmall(3))));
        assert!(analyze_tadpole(2).is_err());
    }

    #[test]
    fn paw_record() {
        let r = analyze_tadpole(4).unwrap();
        assert!((r.lambda - 2.170086486626033).abs() < 1e-12);
        assert!((r.f - 0.07852100424319404).abs() < 1e-10);
        assert!((r.f.powi(2) + r.cos_theta.powi(2) - 1.0).abs() < 1e-12);
        assert!(r.perron_error < 1e-12);
        assert_eq!(r.sinh_profile_error, 0.0);
    }

    #[test]
    fn curve_preserves_order() {
        let recs = tadpole_curve_with(&[50, 10, 20], Execution::Sequential).unwrap();
        assert_eq!(
            recs.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![50, 10, 20]
        );
        assert_eq!(recs, tadpole_curve(&[50, 10, 20]).unwrap());
    }

    #[test]
    fn scaled_sinh_matches_direct_ratio() {
        let t = 0.7;
        for k in 3..20 {
            let direct = ((20 - k) as f64 * t).sinh() / (17.0 * t).sinh();
            assert!((scaled_sinh(20, k, t) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn bracket_agrees_with_eigensolver() {
        for n in [4, 5, 10] {
            let b = perron_bracket(n, 96).unwrap();
            let r = analyze_tadpole(n).unwrap();
            assert!(
                b.lo() <= r.lambda + 1e-14 && r.lambda - 1e-14 <= b.hi(),
                "n={n}"
            );
            assert!(b.hi() - b.lo() < 1e-20);
        }
    }

    #[test]
    fn count_above_matches_dense_spectrum() {
        let fx = Fixed { bits: 80 };
        let a = tadpole_graph(7).unwrap();
        let eig = symmetric_eigendecomposition(a.as_matrix()).unwrap();
        for q in [-2.5, -1.1, 0.05, 0.3, 1.7, 2.2, 3.0] {
            let expected = eig.eigenvalues.iter().filter(|&&l| l > q).count();
            assert_eq!(count_above(fx, 7, &fx.encode(q)), expected, "q={q}");
        }
    }

    #[test]
    fn radius_increase_beyond_f64() {
        assert!(certify_radius_increasing(&[50, 51, 60]).unwrap());
        assert!(!certify_radius_increasing(&[60, 50]).unwrap());
    }
}

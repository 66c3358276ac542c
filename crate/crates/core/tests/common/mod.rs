#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseResult, TestRunner};
use regdep::dcsbm::{generate, DcsbmParams};
use regdep::experiments::record::{read_records, write_records};
use regdep::experiments::GraphRecord;
use regdep::spectral::subspace_disagreement;
use regdep::{EmbeddingSubspace, Execution};

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn subspace(n: usize, k: usize, entries: &[f64]) -> EmbeddingSubspace {
    EmbeddingSubspace::span_of(DMatrix::from_column_slice(n, k, &entries[..n * k]))
}

fn orthogonal(k: usize, entries: &[f64]) -> DMatrix<f64> {
    DMatrix::from_column_slice(k, k, &entries[..k * k]).qr().q()
}

/// `(n, k, entries)` with enough entries for three n x k bases and a k x k rotation.
pub fn bases() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (3usize..10)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                Just(k),
                proptest::collection::vec(-1.0f64..1.0, 3 * n * k + k * k),
            )
        })
}

pub fn metric_axioms(n: usize, k: usize, e: &[f64]) -> TestCaseResult {
    let nk = n * k;
    let (u, v, w) = (
        subspace(n, k, e),
        subspace(n, k, &e[nk..]),
        subspace(n, k, &e[2 * nk..]),
    );
    let d = |a: &EmbeddingSubspace, b: &EmbeddingSubspace| subspace_disagreement(a, b).unwrap();
    prop_assert!(d(&u, &u) <= 1e-12);
    prop_assert!((d(&u, &v) - d(&v, &u)).abs() <= 1e-12);
    prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w) + 1e-12);
    prop_assert!(d(&u, &v) >= 0.0 && d(&u, &v) <= (k as f64).sqrt() + 1e-12);
    Ok(())
}

pub fn basis_invariance(n: usize, k: usize, e: &[f64]) -> TestCaseResult {
    let u = subspace(n, k, e);
    let v = subspace(n, k, &e[n * k..]);
    let q = orthogonal(k, &e[3 * n * k..]);
    let rotated = EmbeddingSubspace::from_orthonormal(&u.basis * q);
    let before = subspace_disagreement(&u, &v).unwrap();
    let after = subspace_disagreement(&rotated, &v).unwrap();
    prop_assert!((before - after).abs() <= 1e-12, "{before} vs {after}");
    Ok(())
}

pub fn params() -> impl Strategy<Value = DcsbmParams> {
    (
        10usize..60,
        1usize..5,
        0.05f64..1.0,
        0.0f64..1.0,
        0.0f64..1.0,
        any::<u64>(),
    )
        .prop_map(|(n, k, p_in, frac, cv, seed)| DcsbmParams {
            n,
            k,
            p_in,
            p_out: p_in * frac,
            cv_theta: cv,
            seed,
        })
}

pub fn determinism(p: DcsbmParams) -> TestCaseResult {
    let a = generate(&p, Execution::Sequential).unwrap();
    let b = generate(&p, Execution::Parallel).unwrap();
    prop_assert_eq!(a.theta, b.theta);
    prop_assert_eq!(a.adjacency.edges(), b.adjacency.edges());
    prop_assert_eq!(a.labels, b.labels);
    Ok(())
}

pub fn record() -> impl Strategy<Value = GraphRecord> {
    let f = || any::<f64>();
    (
        (
            any::<u64>(),
            any::<usize>(),
            any::<usize>(),
            f(),
            f(),
            f(),
            f(),
            any::<usize>(),
        ),
        (any::<usize>(), f(), f(), f(), f(), f(), f(), f()),
        (f(), f(), f(), f(), f(), f(), any::<bool>(), any::<bool>()),
    )
        .prop_map(|(a, b, c)| GraphRecord {
            seed: a.0,
            n: a.1,
            k: a.2,
            p_in: a.3,
            p_out: a.4,
            cv_theta: a.5,
            d_mean: a.6,
            d_min: a.7,
            d_max: b.0,
            sigma_d: b.1,
            cv_d: b.2,
            alpha: b.3,
            delta_k: b.4,
            frob_e: b.5,
            frob_a: b.6,
            tau_k: b.7,
            t1: c.0,
            t2: c.1,
            bound_rhs: c.2,
            sin_theta: c.3,
            tightness: c.4,
            t2_share: c.5,
            valid_assumptions: c.6,
            bound_holds: c.7,
        })
}

fn same_float(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a.to_bits() == b.to_bits()
}

pub fn csv_round_trip(rs: Vec<GraphRecord>) -> TestCaseResult {
    let mut buf = Vec::new();
    write_records(&rs, &mut buf).unwrap();
    let back = read_records(buf.as_slice(), "mem").unwrap();
    prop_assert_eq!(back.len(), rs.len());
    for (x, y) in rs.iter().zip(&back) {
        let fx = [
            x.p_in,
            x.p_out,
            x.cv_theta,
            x.d_mean,
            x.sigma_d,
            x.cv_d,
            x.alpha,
            x.delta_k,
            x.frob_e,
            x.frob_a,
            x.tau_k,
            x.t1,
            x.t2,
            x.bound_rhs,
            x.sin_theta,
            x.tightness,
            x.t2_share,
        ];
        let fy = [
            y.p_in,
            y.p_out,
            y.cv_theta,
            y.d_mean,
            y.sigma_d,
            y.cv_d,
            y.alpha,
            y.delta_k,
            y.frob_e,
            y.frob_a,
            y.tau_k,
            y.t1,
            y.t2,
            y.bound_rhs,
            y.sin_theta,
            y.tightness,
            y.t2_share,
        ];
        for (a, b) in fx.iter().zip(&fy) {
            prop_assert!(same_float(*a, *b), "{a:?} -> {b:?}");
        }
        prop_assert_eq!(
            (
                x.seed,
                x.n,
                x.k,
                x.d_min,
                x.d_max,
                x.valid_assumptions,
                x.bound_holds
            ),
            (
                y.seed,
                y.n,
                y.k,
                y.d_min,
                y.d_max,
                y.valid_assumptions,
                y.bound_holds
            )
        );
    }
    Ok(())
}

/// Runs every property suite with `cases` cases each.
pub fn run_property_suites(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let run = |name: &'static str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| {
        let mut runner = TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        });
        (name, f(&mut runner))
    };
    vec![
        run("metric axioms", &|r| {
            r.run(&bases(), |(n, k, e)| metric_axioms(n, k, &e))
                .map_err(|e| e.to_string())
        }),
        run("basis invariance", &|r| {
            r.run(&bases(), |(n, k, e)| basis_invariance(n, k, &e))
                .map_err(|e| e.to_string())
        }),
        run("determinism", &|r| {
            r.run(&params(), determinism).map_err(|e| e.to_string())
        }),
        run("csv round-trip", &|r| {
            r.run(&proptest::collection::vec(record(), 0..5), csv_round_trip)
                .map_err(|e| e.to_string())
        }),
    ]
}

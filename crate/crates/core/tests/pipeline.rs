//! Grid determinism, CSV persistence and the bundled benchmark file.

use regdep::datasets::{load_all, load_benchmark};
use regdep::experiments::record::read_csv;
use regdep::experiments::{run_grid, summarize, write_csv, GridConfig};
use regdep::{bound_report, Execution};

fn data_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn small_grid() -> GridConfig {
    GridConfig {
        n: 60,
        cv_theta_values: vec![0.05, 0.3, 0.6],
        p_in_values: vec![0.3, 0.5, 0.7],
        p_out: 0.05,
        k_values: vec![2, 3],
        replicates: 1,
        master_seed: 42,
    }
}

#[test]
fn same_config_gives_identical_csv_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_grid();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write_csv(&run_grid(&cfg, Execution::Parallel).unwrap(), &a).unwrap();
    write_csv(&run_grid(&cfg, Execution::Sequential).unwrap(), &b).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let back = read_csv(&a).unwrap();
    assert_eq!(back.len(), 18);
}

#[test]
fn exclusion_bookkeeping() {
    let records = run_grid(&small_grid(), Execution::Parallel).unwrap();
    let s = summarize(&records).unwrap();
    let invalid = records.iter().filter(|r| !r.valid_assumptions).count();
    assert_eq!(s.usable + invalid, s.total);
    assert_eq!(s.violations, 0);
    for r in &records {
        if !r.valid_assumptions {
            assert!(r.t1.is_nan() && !r.bound_holds);
            assert!(r.d_min == 0 || r.delta_k <= 1e-9 || r.delta_k.is_nan());
        }
    }
    for rho in [s.rho_arg1, s.rho_arg3] {
        assert!((-1.0..=1.0).contains(&rho));
    }
}

#[test]
fn karate_file() {
    let g = load_benchmark("karate", data_dir().join("karate.txt"), None).unwrap();
    assert_eq!((g.n(), g.k, g.adjacency.edge_count()), (34, 2, 78));
    let p = g.adjacency.degree_profile();
    assert!((p.mean_degree - 2.0 * 78.0 / 34.0).abs() < 1e-15);
    let r = bound_report(&g.adjacency, 2).unwrap();
    let t = r.terms.unwrap();
    assert!((t.tightness - 0.0401).abs() < 5e-4);
    // karate: mu_1 exceeds d_mean, so the gap is d_mean itself
    assert!((r.delta_k - p.mean_degree).abs() < 1e-12);
}

#[test]
fn karate_is_line_order_insensitive() {
    let text = std::fs::read_to_string(data_dir().join("karate.txt")).unwrap();
    let mut lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    lines.reverse();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("karate.txt");
    std::fs::write(&path, lines.join("\n")).unwrap();
    let labelled_edges = |g: &regdep::datasets::BenchmarkGraph| {
        let mut out: Vec<(u32, u32)> = g
            .adjacency
            .edges()
            .iter()
            .map(|&(i, j)| {
                let (x, y): (u32, u32) =
                    (g.labels[i].parse().unwrap(), g.labels[j].parse().unwrap());
                (x.min(y), x.max(y))
            })
            .collect();
        out.sort();
        out
    };
    let shuffled = load_benchmark("karate", &path, None).unwrap();
    let original = load_benchmark("karate", data_dir().join("karate.txt"), None).unwrap();
    assert_eq!(labelled_edges(&shuffled), labelled_edges(&original));
}

#[test]
fn load_all_names_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data_dir().join("karate.txt"), dir.path().join("karate.txt")).unwrap();
    let err = load_all(dir.path()).unwrap_err().to_string();
    assert!(err.contains("dolphins.txt"), "{err}");
}

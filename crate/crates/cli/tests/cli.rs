use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn repo(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn regdep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regdep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|r| r.starts_with(' ')))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
        .trim()
        .to_string()
}

#[test]
fn analyze_karate() {
    let o = regdep(&[
        "analyze",
        repo("data/karate.txt").to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t: f64 = field(&stdout(&o), "tightness").parse().unwrap();
    assert!((t - 0.0401).abs() < 5e-4);
    assert_eq!(field(&stdout(&o), "valid"), "true");
}

#[test]
fn analyze_regular_cycle() {
    let o = regdep(&["analyze", data("c5.txt").to_str().unwrap(), "--k", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(field(&out, "sin_theta").parse::<f64>().unwrap() <= 1e-8);
    assert_eq!(field(&out, "T2").parse::<f64>().unwrap(), 0.0);
    assert_eq!(field(&out, "family"), "regular");
}

#[test]
fn analyze_star_notes_family() {
    let o = regdep(&["analyze", data("star7.txt").to_str().unwrap(), "--k", "1"]);
    assert_eq!(field(&stdout(&o), "family"), "bipartite biregular");
}

#[test]
fn analyze_csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = regdep(&[
        "analyze",
        data("paw.txt").to_str().unwrap(),
        "--k",
        "2",
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("n,K,d_mean"));
    assert!(lines[1].starts_with("4,2,"));
    assert!(lines[1].ends_with(",not-scalar"));
}

#[test]
fn analyze_isolated_node_exits_2() {
    let o = regdep(&[
        "analyze",
        data("isolated.txt").to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("isolated"), "{}", stderr(&o));
}

#[test]
fn classify_families() {
    let cases = [
        ("c5.txt", "regular d=2, lambda=0.5"),
        ("k35.txt", "bipartite-biregular d1=5 d2=3"),
        ("paw.txt", "not-scalar"),
    ];
    for (file, expected) in cases {
        let o = regdep(&["classify", data(file).to_str().unwrap()]);
        assert!(o.status.success());
        assert!(stdout(&o).starts_with(expected), "{file}: {}", stdout(&o));
    }
}

#[test]
fn tadpole_rows() {
    let o = regdep(&["tadpole", "--n-min", "4", "--n-max", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,f,cos_theta,lambda,t,sinh_profile_error");
    assert_eq!(lines.len(), 2);

    let o = regdep(&["tadpole", "--n-min", "10", "--n-max", "500", "--step", "10"]);
    let f: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(f.len(), 50);
    assert!(f.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn tadpole_range_is_usage_error() {
    assert_eq!(
        regdep(&["tadpole", "--n-min", "3", "--n-max", "5"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        regdep(&["tadpole", "--n-min", "9", "--n-max", "5"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(regdep(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(regdep(&["--help"]).status.code(), Some(0));
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str, jobs: &str| {
        let out = dir.path().join(sub);
        let o = regdep(&[
            "--jobs",
            jobs,
            "simulate",
            "--config",
            data("tiny.conf").to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("0 bound violations"), "{}", stdout(&o));
        assert!(out.join("summary.txt").exists());
        std::fs::read(out.join("records.csv")).unwrap()
    };
    let a = run("a", "1");
    let b = run("b", "2");
    assert_eq!(a, b);
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 17);
}

#[test]
fn malformed_config_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    let text = std::fs::read_to_string(data("tiny.conf"))
        .unwrap()
        .replace("p_out = 0.05", "p_out 0.05");
    std::fs::write(&cfg, text).unwrap();
    let o = regdep(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.conf:4:"), "{}", stderr(&o));
}

#[test]
fn benchmarks_missing_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(repo("data/karate.txt"), dir.path().join("karate.txt")).unwrap();
    let o = regdep(&["benchmarks", "--data-dir", dir.path().to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("dolphins.txt"), "{}", stderr(&o));
}

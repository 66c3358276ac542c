use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Factorial DC-SBM grid: `cv_theta x p_in x K x replicate`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub cv_theta_values: Vec<f64>,
    pub p_in_values: Vec<f64>,
    pub p_out: f64,
    pub k_values: Vec<usize>,
    pub replicates: usize,
    pub master_seed: u64,
}

const KEYS: [&str; 7] = [
    "n",
    "cv_theta_values",
    "p_in_values",
    "p_out",
    "K_values",
    "replicates",
    "master_seed",
];

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

impl GridConfig {
    /// 144-graph grid at n = 300.
    pub fn desk() -> Self {
        Self {
            n: 300,
            cv_theta_values: vec![0.05, 0.2, 0.4, 0.6],
            p_in_values: vec![0.15, 0.3, 0.5, 0.7],
            p_out: 0.05,
            k_values: vec![2, 4, 7],
            replicates: 3,
            master_seed: 20240601,
        }
    }

    /// 10 x 9 x 8 x 5 = 3600 graphs at n = 500.
    pub fn full_scale() -> Self {
        Self {
            n: 500,
            cv_theta_values: linspace(0.05, 0.7, 10),
            p_in_values: linspace(0.15, 0.7, 9),
            p_out: 0.05,
            k_values: vec![2, 3, 4, 5, 6, 7, 8, 10],
            replicates: 5,
            master_seed: 20240601,
        }
    }

    pub fn graph_count(&self) -> usize {
        self.cv_theta_values.len() * self.p_in_values.len() * self.k_values.len() * self.replicates
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if self.cv_theta_values.is_empty()
            || self.p_in_values.is_empty()
            || self.k_values.is_empty()
        {
            return bad("cv_theta_values, p_in_values and K_values must be non-empty");
        }
        if self.replicates == 0 {
            return bad("replicates must be at least 1");
        }
        if self.k_values.iter().any(|&k| k == 0 || k > self.n) {
            return bad("every K must lie in 1..=n");
        }
        if self
            .cv_theta_values
            .iter()
            .any(|c| !(*c >= 0.0 && c.is_finite()))
        {
            return bad("cv_theta values must be finite and >= 0");
        }
        if !(0.0..=1.0).contains(&self.p_out) {
            return bad("p_out must lie in [0, 1]");
        }
        if self
            .p_in_values
            .iter()
            .any(|p| !(self.p_out..=1.0).contains(p))
        {
            return bad("p_in values must lie in [p_out, 1]");
        }
        Ok(())
    }

    /// `key = value` lines; lists are comma-separated; `#` starts a comment.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse {
            path: source.to_string(),
            line,
            msg,
        };
        let mut seen: HashMap<&str, (usize, String)> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(lineno, format!("expected `key = value`, got {line:?}")))?;
            let key = key.trim();
            let known = KEYS
                .iter()
                .find(|k| **k == key)
                .ok_or_else(|| err(lineno, format!("unknown key {key:?}")))?;
            if seen
                .insert(known, (lineno, value.trim().to_string()))
                .is_some()
            {
                return Err(err(lineno, format!("duplicate key {key:?}")));
            }
        }

        fn scalar<T: std::str::FromStr>(v: &str) -> std::result::Result<T, String> {
            v.parse().map_err(|_| format!("cannot parse {v:?}"))
        }
        fn list<T: std::str::FromStr>(v: &str) -> std::result::Result<Vec<T>, String> {
            v.split(',').map(|s| scalar(s.trim())).collect()
        }
        let end = text.lines().count() + 1;
        let get = |key: &str| {
            seen.get(key)
                .ok_or_else(|| err(end, format!("missing key {key:?}")))
        };
        macro_rules! field {
            ($key:expr, $f:ident) => {{
                let (line, v) = get($key)?;
                $f(v).map_err(|m| err(*line, format!("{}: {m}", $key)))?
            }};
        }
        let cfg = GridConfig {
            n: field!("n", scalar),
            cv_theta_values: field!("cv_theta_values", list),
            p_in_values: field!("p_in_values", list),
            p_out: field!("p_out", scalar),
            k_values: field!("K_values", list),
            replicates: field!("replicates", scalar),
            master_seed: field!("master_seed", scalar),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn render(&self) -> String {
        let join = |xs: Vec<String>| xs.join(", ");
        format!(
            "n = {}\ncv_theta_values = {}\np_in_values = {}\np_out = {}\nK_values = {}\nreplicates = {}\nmaster_seed = {}\n",
            self.n,
            join(self.cv_theta_values.iter().map(|x| x.to_string()).collect()),
            join(self.p_in_values.iter().map(|x| x.to_string()).collect()),
            self.p_out,
            join(self.k_values.iter().map(|x| x.to_string()).collect()),
            self.replicates,
            self.master_seed
        )
    }
}

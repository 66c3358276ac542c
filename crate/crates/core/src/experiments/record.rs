//! Per-graph records and their CSV form.

use std::io::{Read, Write};
use std::path::Path;

use crate::baseline::BoundReport;
use crate::error::{Error, Result};
use crate::tadpole::TadpoleRecord;

pub const RECORD_COLUMNS: [&str; 24] = [
    "seed",
    "n",
    "K",
    "p_in",
    "p_out",
    "cv_theta",
    "d_mean",
    "d_min",
    "d_max",
    "sigma_d",
    "cv_d",
    "alpha",
    "delta_K",
    "frob_E",
    "frob_A",
    "tau_K",
    "T1",
    "T2",
    "bound_rhs",
    "sin_theta",
    "tightness",
    "t2_share",
    "valid_assumptions",
    "bound_holds",
];

pub const TADPOLE_COLUMNS: [&str; 6] = ["n", "f", "cos_theta", "lambda", "t", "sinh_profile_error"];

/// One simulated graph. Quantities that could not be evaluated are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphRecord {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub cv_theta: f64,
    pub d_mean: f64,
    pub d_min: usize,
    pub d_max: usize,
    pub sigma_d: f64,
    pub cv_d: f64,
    pub alpha: f64,
    pub delta_k: f64,
    pub frob_e: f64,
    pub frob_a: f64,
    pub tau_k: f64,
    pub t1: f64,
    pub t2: f64,
    pub bound_rhs: f64,
    pub sin_theta: f64,
    pub tightness: f64,
    pub t2_share: f64,
    pub valid_assumptions: bool,
    pub bound_holds: bool,
}

impl GraphRecord {
    pub fn from_report(seed: u64, p_in: f64, p_out: f64, cv_theta: f64, r: &BoundReport) -> Self {
        let nan = f64::NAN;
        let t = r.terms;
        GraphRecord {
            seed,
            n: r.n(),
            k: r.k,
            p_in,
            p_out,
            cv_theta,
            d_mean: r.profile.mean_degree,
            d_min: r.profile.d_min,
            d_max: r.profile.d_max,
            sigma_d: r.profile.sigma_d,
            cv_d: r.profile.cv_d,
            alpha: r.profile.alpha.unwrap_or(nan),
            delta_k: r.delta_k,
            frob_e: r.frob_e,
            frob_a: r.frob_a,
            tau_k: r.tau_k,
            t1: t.map_or(nan, |t| t.t1),
            t2: t.map_or(nan, |t| t.t2),
            bound_rhs: t.map_or(nan, |t| t.rhs),
            sin_theta: r.actual.unwrap_or(nan),
            tightness: t.map_or(nan, |t| t.tightness),
            t2_share: t.map_or(nan, |t| t.t2_share),
            valid_assumptions: r.assumptions_met,
            bound_holds: t.is_some_and(|t| t.valid),
        }
    }

    /// `CV(d) / delta_K`.
    pub fn ratio(&self) -> f64 {
        self.cv_d / self.delta_k
    }

    fn fields(&self) -> [String; 24] {
        let f = |x: f64| format!("{x:.16e}");
        [
            self.seed.to_string(),
            self.n.to_string(),
            self.k.to_string(),
            f(self.p_in),
            f(self.p_out),
            f(self.cv_theta),
            f(self.d_mean),
            self.d_min.to_string(),
            self.d_max.to_string(),
            f(self.sigma_d),
            f(self.cv_d),
            f(self.alpha),
            f(self.delta_k),
            f(self.frob_e),
            f(self.frob_a),
            f(self.tau_k),
            f(self.t1),
            f(self.t2),
            f(self.bound_rhs),
            f(self.sin_theta),
            f(self.tightness),
            f(self.t2_share),
            self.valid_assumptions.to_string(),
            self.bound_holds.to_string(),
        ]
    }

    fn from_fields(row: &csv::StringRecord, line: usize, source: &str) -> Result<Self> {
        let err = |col: usize| Error::Parse {
            path: source.to_string(),
            line,
            msg: format!(
                "bad value {:?} in column {}",
                &row[col], RECORD_COLUMNS[col]
            ),
        };
        let float = |col: usize| row[col].parse::<f64>().map_err(|_| err(col));
        let int = |col: usize| row[col].parse::<usize>().map_err(|_| err(col));
        let boolean = |col: usize| row[col].parse::<bool>().map_err(|_| err(col));
        if row.len() != RECORD_COLUMNS.len() {
            return Err(Error::Parse {
                path: source.to_string(),
                line,
                msg: format!(
                    "expected {} fields, found {}",
                    RECORD_COLUMNS.len(),
                    row.len()
                ),
            });
        }
        Ok(GraphRecord {
            seed: row[0].parse().map_err(|_| err(0))?,
            n: int(1)?,
            k: int(2)?,
            p_in: float(3)?,
            p_out: float(4)?,
            cv_theta: float(5)?,
            d_mean: float(6)?,
            d_min: int(7)?,
            d_max: int(8)?,
            sigma_d: float(9)?,
            cv_d: float(10)?,
            alpha: float(11)?,
            delta_k: float(12)?,
            frob_e: float(13)?,
            frob_a: float(14)?,
            tau_k: float(15)?,
            t1: float(16)?,
            t2: float(17)?,
            bound_rhs: float(18)?,
            sin_theta: float(19)?,
            tightness: float(20)?,
            t2_share: float(21)?,
            valid_assumptions: boolean(22)?,
            bound_holds: boolean(23)?,
        })
    }
}

pub fn write_records<W: Write>(records: &[GraphRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_COLUMNS)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

pub fn write_csv(records: &[GraphRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_records(records, std::io::BufWriter::new(file))
}

pub fn read_records<R: Read>(input: R, source: &str) -> Result<Vec<GraphRecord>> {
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header = rd.headers()?.clone();
    if !header.iter().eq(RECORD_COLUMNS.iter().copied()) {
        return Err(Error::Parse {
            path: source.to_string(),
            line: 1,
            msg: "header does not match the record schema".into(),
        });
    }
    rd.records()
        .enumerate()
        .map(|(i, row)| GraphRecord::from_fields(&row?, i + 2, source))
        .collect()
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<GraphRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_records(std::io::BufReader::new(file), &path.display().to_string())
}

pub fn write_tadpole_records<W: Write>(records: &[TadpoleRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TADPOLE_COLUMNS)?;
    for r in records {
        let f = |x: f64| format!("{x:.16e}");
        w.write_record([
            r.n.to_string(),
            f(r.f),
            f(r.cos_theta),
            f(r.lambda),
            f(r.t),
            f(r.sinh_profile_error),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

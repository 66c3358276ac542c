mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use regdep::datasets::load_all;
use regdep::exec::with_jobs;
use regdep::experiments::record::write_tadpole_records;
use regdep::experiments::{run_grid, summarize, write_csv, GridConfig};
use regdep::graph::read_edge_list;
use regdep::tadpole::tadpole_curve_with;
use regdep::{bound_report, classify_scalar_family, Error, Execution};

const EXIT_INTERNAL: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "regdep",
    version,
    about = "Adjacency vs Laplacian spectral embedding disagreement"
)]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the disagreement bound on an edge list
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report whether L is a scalar multiple of A
    Classify { graph: PathBuf },
    /// Sweep tadpole graphs and write their records as CSV
    Tadpole {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a DC-SBM grid and write records.csv and summary.txt
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Tabulate the bundled benchmark graphs
    Benchmarks {
        #[arg(long, default_value = "data")]
        data_dir: PathBuf,
        /// CSV destination for the combined table
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Validation(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EigenNonConvergence { .. } | Error::Csv(_) => Failure::Internal(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Internal(e.to_string()))
        }
    }
}

fn analyze(graph: &Path, k: usize, format: Format, output: Option<&Path>) -> Result<(), Failure> {
    let a = read_edge_list(graph, None)?;
    let report = bound_report(&a, k)?;
    let family = classify_scalar_family(&a).ok();
    let text = match format {
        Format::Text => render::report_text(graph, &report, family.as_ref()),
        Format::Csv => render::report_csv(&report, family.as_ref()),
    };
    emit(output, &text)?;
    if !report.assumptions_met {
        let why = if report.profile.d_min == 0 {
            "graph has an isolated node (d_min = 0)".to_string()
        } else {
            format!("eigengap delta_K = {:e} is not positive", report.delta_k)
        };
        return Err(Failure::Validation(format!(
            "bound assumptions violated: {why}"
        )));
    }
    Ok(())
}

fn classify(graph: &Path) -> Result<(), Failure> {
    let a = read_edge_list(graph, None)?;
    let family = classify_scalar_family(&a)?;
    emit(None, &format!("{}\n", render::family_line(&family)))
}

fn tadpole(
    n_min: usize,
    n_max: usize,
    step: usize,
    output: Option<&Path>,
    exec: Execution,
) -> Result<(), Failure> {
    if n_min < 4 || n_max < n_min || step == 0 {
        return Err(Failure::Usage(format!(
            "need 4 <= n-min <= n-max and step >= 1 (got {n_min}, {n_max}, {step})"
        )));
    }
    let ns: Vec<usize> = (n_min..=n_max).step_by(step).collect();
    let records = tadpole_curve_with(&ns, exec)?;
    let mut buf = Vec::new();
    write_tadpole_records(&records, &mut buf)?;
    emit(output, &String::from_utf8_lossy(&buf))
}

fn simulate(config: &Path, output: &Path, exec: Execution) -> Result<(), Failure> {
    let cfg = GridConfig::load(config)?;
    fs::create_dir_all(output)
        .map_err(|e| Failure::Internal(format!("{}: {e}", output.display())))?;
    let records = run_grid(&cfg, exec)?;
    write_csv(&records, output.join("records.csv"))?;
    let summary = summarize(&records)?;
    emit(Some(&output.join("summary.txt")), &summary.render())?;
    emit(
        None,
        &format!(
            "{} graphs, {} usable, {} bound violations\n",
            summary.total, summary.usable, summary.violations
        ),
    )
}

fn benchmarks(data_dir: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for g in load_all(data_dir)? {
        let report = bound_report(&g.adjacency, g.k)?;
        rows.push((g.name, report));
    }
    rows.sort_by(|a, b| {
        let s = |r: &regdep::BoundReport| r.actual.unwrap_or(f64::INFINITY);
        s(&a.1).total_cmp(&s(&b.1))
    });
    emit(None, &render::benchmark_tables(&rows))?;
    if let Some(path) = output {
        emit(Some(path), &render::benchmark_csv(&rows))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = Execution::Parallel;
    let jobs = cli.jobs;
    if jobs == Some(0) {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    with_jobs(jobs, move || match &cli.command {
        Command::Analyze {
            graph,
            k,
            format,
            output,
        } => analyze(graph, *k, *format, output.as_deref()),
        Command::Classify { graph } => classify(graph),
        Command::Tadpole {
            n_min,
            n_max,
            step,
            output,
        } => tadpole(*n_min, *n_max, *step, output.as_deref(), exec),
        Command::Simulate { config, output } => simulate(config, output, exec),
        Command::Benchmarks { data_dir, output } => benchmarks(data_dir, output.as_deref()),
    })?
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

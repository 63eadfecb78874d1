//! Command-line front end.
//!
//! Exit codes: 0 on success (including runs that hit the sweep cap),
//! 1 on usage errors, 2 when a run or an output write fails.

use crate::config::{table_cells, BenchConfig, Cell, ProblemSource, Table};
use crate::report::{emit_table, history_csv, Format};
use crate::run::{build_problem, run_grid};
use clap::{Parser, ValueEnum};
use spm_core::matrix::market::write_matrix_market;
use spm_core::problems::{ConvectionCase, ProblemFamily};
use spm_core::solver::{Method, StoppingRule};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUN: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodKind {
    /// Greedy m-dimensional projection (needs --m).
    Mdspm,
    /// Two-dimensional projection on {i, i - gap} (needs --ij-gap).
    Gap2d,
    /// Two successive one-dimensional projections (needs --ij-gap).
    #[value(name = "1ddspm")]
    OneDdspm,
    /// Gauss-Seidel.
    Gs,
}

#[derive(Debug, Parser)]
#[command(name = "spm-bench", version, about = "Sweep counts of successive projection solvers on SPD test systems")]
pub struct Args {
    /// Generated test family: 1, 2 (dense banded) or 3 (convection-diffusion).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub example: Option<u8>,
    /// Coefficient case of family 3 (1, 2 or 3).
    #[arg(long)]
    pub case: Option<u8>,
    /// Dimension of families 1 and 2 [default: 1000].
    #[arg(long)]
    pub n: Option<usize>,
    /// Interior mesh size of family 3 [default: 32].
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<MethodKind>,
    /// Subspace dimension for mdspm.
    #[arg(long)]
    pub m: Option<usize>,
    /// Index gap for gap2d and 1ddspm.
    #[arg(long = "ij-gap")]
    pub ij_gap: Option<usize>,
    /// Stop once a sweep changes x by less than this in the max norm.
    #[arg(long, default_value_t = StoppingRule::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = StoppingRule::DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: usize,
    /// Solve with a Matrix Market operator instead of a generated family.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Write the per-sweep history of a single run as CSV.
    #[arg(long)]
    pub history: Option<PathBuf>,
    /// Output format: csv or markdown.
    #[arg(long, default_value = "markdown")]
    pub format: Format,
    /// Run a whole published grid: table1, table2, table3 or all.
    #[arg(long)]
    pub reproduce: Option<String>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the single-run operator as a Matrix Market file.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Run(String),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Run(_) | CliError::Io { .. } => EXIT_RUN,
        }
    }
}

/// What a validated command line asks for.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub config: BenchConfig,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub history: Option<PathBuf>,
    pub export: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_tables(s: &str) -> Result<Vec<Table>, CliError> {
    if s == "all" {
        Ok(vec![Table::Table1, Table::Table2, Table::Table3])
    } else {
        s.parse::<Table>().map(|t| vec![t]).map_err(usage)
    }
}

fn single_method(args: &Args) -> Result<Method, CliError> {
    let kind = args.method.ok_or_else(|| usage("--method is required unless --reproduce is given"))?;
    match kind {
        MethodKind::Mdspm => {
            if args.ij_gap.is_some() {
                return Err(usage("--ij-gap applies only to gap2d and 1ddspm"));
            }
            let m = args.m.ok_or_else(|| usage("mdspm requires --m"))?;
            Ok(Method::greedy(m))
        }
        MethodKind::Gap2d | MethodKind::OneDdspm => {
            if args.m.is_some() {
                return Err(usage("--m applies only to mdspm"));
            }
            let gap = args.ij_gap.ok_or_else(|| usage("gap2d and 1ddspm require --ij-gap"))?;
            Ok(if kind == MethodKind::Gap2d {
                Method::gap_pair(gap)
            } else {
                Method::DoubleSuccessive { gap }
            })
        }
        MethodKind::Gs => {
            if args.m.is_some() || args.ij_gap.is_some() {
                return Err(usage("gs takes neither --m nor --ij-gap"));
            }
            Ok(Method::gauss_seidel())
        }
    }
}

fn single_source(args: &Args) -> Result<ProblemSource, CliError> {
    if let Some(path) = &args.matrix {
        if args.example.is_some() || args.n.is_some() || args.grid.is_some() || args.case.is_some() {
            return Err(usage("--matrix conflicts with --example, --n, --grid and --case"));
        }
        return Ok(ProblemSource::MatrixFile(path.clone()));
    }
    let example = args.example.ok_or_else(|| usage("either --example or --matrix is required"))?;
    let family = match example {
        1 | 2 => {
            if args.grid.is_some() || args.case.is_some() {
                return Err(usage("--grid and --case apply only to --example 3"));
            }
            let n = args.n.unwrap_or(crate::config::TABLE_N);
            if example == 1 {
                ProblemFamily::Example1 { n }
            } else {
                ProblemFamily::Example2 { n }
            }
        }
        _ => {
            if args.n.is_some() {
                return Err(usage("--n does not apply to --example 3; use --grid"));
            }
            let case = args.case.ok_or_else(|| usage("--example 3 requires --case"))?;
            let case = ConvectionCase::try_from(case).map_err(|e| usage(e.to_string()))?;
            ProblemFamily::Example3 {
                case,
                grid: args.grid.unwrap_or(crate::config::TABLE_GRID),
            }
        }
    };
    Ok(ProblemSource::Generated(family))
}

/// Checks flag consistency and turns the arguments into a [`Plan`].
pub fn plan(args: &Args) -> Result<Plan, CliError> {
    let rule = StoppingRule::new(args.tol, args.max_sweeps).map_err(|e| usage(e.to_string()))?;
    let cells = if let Some(target) = &args.reproduce {
        let single_flags = args.example.is_some()
            || args.case.is_some()
            || args.n.is_some()
            || args.grid.is_some()
            || args.method.is_some()
            || args.m.is_some()
            || args.ij_gap.is_some()
            || args.matrix.is_some()
            || args.history.is_some()
            || args.export.is_some();
        if single_flags {
            return Err(usage("--reproduce cannot be combined with single-run flags"));
        }
        parse_tables(target)?.into_iter().flat_map(table_cells).collect()
    } else {
        vec![Cell {
            problem: single_source(args)?,
            method: single_method(args)?,
        }]
    };
    Ok(Plan {
        config: BenchConfig { cells, rule },
        format: args.format,
        output: args.output.clone(),
        history: args.history.clone(),
        export: args.export.clone(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Runs a plan, writing the table to `stdout` unless an output path is set.
pub fn execute(plan: &Plan, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(path) = &plan.export {
        let problem = build_problem(&plan.config.cells[0].problem).map_err(CliError::Run)?;
        write_matrix_market(&*problem.operator, path).map_err(|e| CliError::Run(e.to_string()))?;
    }
    let reports = run_grid(&plan.config);
    let table = emit_table(&reports, plan.format);
    match &plan.output {
        Some(path) => write_file(path, &table)?,
        None => stdout.write_all(table.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })?,
    }
    if let (Some(path), [report]) = (&plan.history, reports.as_slice()) {
        write_file(path, &history_csv(&report.history))?;
    }
    let failed: Vec<String> = reports
        .iter()
        .filter_map(|r| match &r.outcome {
            crate::report::Outcome::Errored(msg) => Some(format!("{} / {}: {msg}", r.problem, r.method)),
            _ => None,
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Run(format!("{} run(s) failed:\n{}", failed.len(), failed.join("\n"))))
    }
}

/// Full entry point with injectable streams; returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match plan(&args).and_then(|p| execute(&p, stdout)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

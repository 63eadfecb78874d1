//! Executing benchmark cells.

use crate::config::{BenchConfig, Cell, ProblemSource};
use crate::report::{Outcome, RunReport};
use rayon::prelude::*;
use spm_core::matrix::market::read_matrix_market;
use spm_core::problems::{Problem, ProblemFamily};
use spm_core::solver::{solve, StoppingRule};
use std::sync::Arc;
use std::time::Instant;

/// Builds the system for a cell. File operators get `b = A e` and the
/// same initial guess as the generated families.
pub fn build_problem(source: &ProblemSource) -> Result<Problem, String> {
    match source {
        ProblemSource::Generated(family) => Problem::build(family).map_err(|e| e.to_string()),
        ProblemSource::MatrixFile(path) => {
            let matrix = read_matrix_market(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let family = ProblemFamily::External {
                name: path.display().to_string(),
            };
            Ok(Problem::from_operator(family, Arc::new(matrix)))
        }
    }
}

/// Runs one cell. Failures are captured in the report rather than returned,
/// so one bad cell does not abort a grid.
pub fn run_cell(cell: &Cell, rule: StoppingRule) -> RunReport {
    let mut report = RunReport {
        problem: cell.problem.to_string(),
        method: cell.method,
        outcome: Outcome::Errored(String::new()),
        wall_ms: 0.0,
        history: Vec::new(),
        symmetrized: false,
    };
    let problem = match build_problem(&cell.problem) {
        Ok(p) => p,
        Err(msg) => {
            report.outcome = Outcome::Errored(msg);
            return report;
        }
    };
    report.symmetrized = problem.symmetrized;
    let start = Instant::now();
    let result = solve(&*problem.operator, &problem.b, &problem.x0, cell.method, rule);
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok((state, summary)) => {
            report.outcome = Outcome::Finished(summary);
            report.history = state.history;
        }
        Err(e) => report.outcome = Outcome::Errored(e.to_string()),
    }
    report
}

/// Runs every cell in parallel; reports come back in cell order.
pub fn run_grid(config: &BenchConfig) -> Vec<RunReport> {
    config
        .cells
        .par_iter()
        .map(|cell| run_cell(cell, config.rule))
        .collect()
}

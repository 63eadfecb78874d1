//! Run reports and their CSV / Markdown renderings.

use spm_core::selection::SelectionStrategy;
use spm_core::solver::{ConvergenceReport, Method, SweepRecord};
use std::fmt::Write as _;
use std::str::FromStr;

pub const CSV_HEADER: [&str; 8] = [
    "problem",
    "method",
    "params",
    "sweeps",
    "converged",
    "final_res_2",
    "final_dx_inf",
    "wall_ms",
];

pub const HISTORY_HEADER: [&str; 3] = ["sweep", "dx_inf", "res_2"];

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Finished(ConvergenceReport),
    /// Construction or solve failed; the message is kept for the report.
    Errored(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub problem: String,
    pub method: Method,
    pub outcome: Outcome,
    pub wall_ms: f64,
    pub history: Vec<SweepRecord>,
    /// Operator is the symmetric part of a nonsymmetric discretization.
    pub symmetrized: bool,
}

impl RunReport {
    pub fn sweeps(&self) -> Option<usize> {
        match &self.outcome {
            Outcome::Finished(r) => Some(r.sweeps),
            Outcome::Errored(_) => None,
        }
    }

    pub fn converged(&self) -> bool {
        matches!(&self.outcome, Outcome::Finished(r) if r.converged)
    }

    pub fn is_error(&self) -> bool {
        matches!(self.outcome, Outcome::Errored(_))
    }
}

pub fn method_name(method: &Method) -> &'static str {
    match method {
        Method::Projection(SelectionStrategy::GreedyTopM { .. }) => "mdspm",
        Method::Projection(SelectionStrategy::Gap { .. }) => "gap2d",
        Method::Projection(SelectionStrategy::Cyclic) => "gs",
        Method::DoubleSuccessive { .. } => "1ddspm",
    }
}

pub fn method_params(method: &Method) -> String {
    match method {
        Method::Projection(SelectionStrategy::GreedyTopM { m }) => format!("m={m}"),
        Method::Projection(SelectionStrategy::Gap { gap }) | Method::DoubleSuccessive { gap } => {
            format!("ij_gap={gap}")
        }
        Method::Projection(SelectionStrategy::Cyclic) => String::new(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format `{other}` (expected csv or markdown)")),
        }
    }
}

pub fn emit_table(reports: &[RunReport], format: Format) -> String {
    match format {
        Format::Csv => to_csv(reports),
        Format::Markdown => to_markdown(reports),
    }
}

fn sci(v: f64) -> String {
    format!("{v:e}")
}

/// Long-format CSV, one row per report in input order.
pub fn to_csv(reports: &[RunReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for rep in reports {
        let (sweeps, converged, res, dx) = match &rep.outcome {
            Outcome::Finished(r) => (
                r.sweeps.to_string(),
                r.converged.to_string(),
                sci(r.final_res_2),
                sci(r.final_dx_inf),
            ),
            Outcome::Errored(_) => (String::new(), "error".into(), String::new(), String::new()),
        };
        w.write_record([
            rep.problem.as_str(),
            method_name(&rep.method),
            &method_params(&rep.method),
            &sweeps,
            &converged,
            &res,
            &dx,
            &format!("{:.3}", rep.wall_ms),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn first_appearance<T: PartialEq + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for it in items {
        if !out.contains(&it) {
            out.push(it);
        }
    }
    out
}

/// Sweep counts pivoted into a problem x method table, followed by notes
/// for errored cells and symmetrized operators.
pub fn to_markdown(reports: &[RunReport]) -> String {
    let problems = first_appearance(reports.iter().map(|r| r.problem.clone()));
    let methods = first_appearance(reports.iter().map(|r| r.method));

    let mut out = String::new();
    out.push_str("| problem |");
    for m in &methods {
        let _ = write!(out, " {m} |");
    }
    out.push_str("\n|---|");
    for _ in &methods {
        out.push_str("---:|");
    }
    out.push('\n');
    for p in &problems {
        let _ = write!(out, "| {p} |");
        for m in &methods {
            let cell = reports
                .iter()
                .find(|r| &r.problem == p && r.method == *m)
                .map_or_else(String::new, |r| match &r.outcome {
                    Outcome::Finished(c) if c.converged => c.sweeps.to_string(),
                    Outcome::Finished(c) => format!("not converged ({})", c.sweeps),
                    Outcome::Errored(_) => "error".into(),
                });
            let _ = write!(out, " {cell} |");
        }
        out.push('\n');
    }

    let errors: Vec<&RunReport> = reports.iter().filter(|r| r.is_error()).collect();
    let symmetrized = first_appearance(reports.iter().filter(|r| r.symmetrized).map(|r| r.problem.clone()));
    if !errors.is_empty() || !symmetrized.is_empty() {
        out.push('\n');
    }
    for r in errors {
        if let Outcome::Errored(msg) = &r.outcome {
            let _ = writeln!(out, "- error in {} / {}: {msg}", r.problem, r.method);
        }
    }
    for p in symmetrized {
        let _ = writeln!(out, "- {p}: operator is the symmetric part (M + M^T)/2 of the discretization");
    }
    out
}

/// Per-sweep history CSV; one row per sweep, numbered from 1.
pub fn history_csv(history: &[SweepRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HISTORY_HEADER).expect("in-memory write");
    for (k, h) in history.iter().enumerate() {
        w.write_record([(k + 1).to_string(), sci(h.dx_inf), sci(h.res_2)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

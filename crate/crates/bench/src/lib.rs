//! Benchmark harness: runs solver/problem grids and renders sweep-count
//! tables as CSV or Markdown.

pub mod cli;
pub mod config;
pub mod report;
pub mod run;

pub use config::{BenchConfig, Cell, ProblemSource, Table};
pub use report::{emit_table, Format, Outcome, RunReport};
pub use run::{run_cell, run_grid};

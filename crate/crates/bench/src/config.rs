//! Benchmark cells and the published experiment grids.

use spm_core::problems::{ConvectionCase, ProblemFamily};
use spm_core::solver::{Method, StoppingRule};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Where a cell's system comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemSource {
    Generated(ProblemFamily),
    /// Matrix Market file; `b` and `x0` follow the generated families.
    MatrixFile(PathBuf),
}

impl fmt::Display for ProblemSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSource::Generated(family) => family.fmt(f),
            ProblemSource::MatrixFile(path) => write!(f, "file({})", path.display()),
        }
    }
}

/// One (problem, method) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub problem: ProblemSource,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub cells: Vec<Cell>,
    pub rule: StoppingRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Table1,
    Table2,
    Table3,
}

impl FromStr for Table {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table1" => Ok(Table::Table1),
            "table2" => Ok(Table::Table2),
            "table3" => Ok(Table::Table3),
            other => Err(format!("unknown table `{other}` (expected table1, table2 or table3)")),
        }
    }
}

/// Dimension of the dense banded families in the published grids.
pub const TABLE_N: usize = 1000;
/// Mesh size of the convection-diffusion family in the published grid.
pub const TABLE_GRID: usize = 32;

/// The six methods of every published row, in column order.
pub fn table_methods() -> Vec<Method> {
    let mut methods = vec![Method::gap_pair(2), Method::gap_pair(500)];
    methods.extend((2..=5).map(Method::greedy));
    methods
}

pub fn table_problems(table: Table) -> Vec<ProblemFamily> {
    match table {
        Table::Table1 => vec![ProblemFamily::Example1 { n: TABLE_N }],
        Table::Table2 => vec![ProblemFamily::Example2 { n: TABLE_N }],
        Table::Table3 => ConvectionCase::ALL
            .into_iter()
            .map(|case| ProblemFamily::Example3 {
                case,
                grid: TABLE_GRID,
            })
            .collect(),
    }
}

/// Problem-major grid of cells for a published table.
pub fn table_cells(table: Table) -> Vec<Cell> {
    table_problems(table)
        .into_iter()
        .flat_map(|family| {
            table_methods().into_iter().map(move |method| Cell {
                problem: ProblemSource::Generated(family.clone()),
                method,
            })
        })
        .collect()
}

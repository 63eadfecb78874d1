//! Successive projection methods for symmetric positive definite systems.
//!
//! Each inner step of a sweep projects the error onto a small coordinate
//! subspace `span{e_i : i in S}` and enforces `r[S] = 0`. Choosing
//! `S = {i}` cyclically gives Gauss-Seidel; a fixed pair `{i, i - gap}`
//! gives the two-dimensional method; picking the `m` largest residual
//! components gives the greedy m-dimensional method, whose every step
//! decreases `||x* - x||_A^2` by at least `m ||r||^2 / (n lambda_max)`.
//!
//! ```
//! use spm_core::problems::build_example1;
//! use spm_core::solver::{solve, Method, StoppingRule};
//!
//! let p = build_example1(100).unwrap();
//! let (state, report) = solve(&*p.operator, &p.b, &p.x0, Method::greedy(3), StoppingRule::default()).unwrap();
//! assert!(report.converged);
//! assert!(state.x.iter().all(|v| (v - 1.0).abs() < 1e-5));
//! ```

pub mod error;
pub mod matrix;
pub mod problems;
pub mod selection;
pub mod solver;

pub use error::{MarketError, MatrixError, ProblemError, SelectionError, SolverError};
pub use matrix::{BandedConstant, CscMatrix, DenseMatrix, SpdOperator};
pub use problems::{Problem, ProblemFamily};
pub use selection::{IndexSet, SelectionStrategy};
pub use solver::{solve, solve_observed, ConvergenceReport, Method, SolverState, StepObserver, StoppingRule};

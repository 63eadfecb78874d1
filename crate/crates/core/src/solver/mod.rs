//! Successive projection solvers.
//!
//! One outer iteration (a *sweep*) performs `n` inner projection steps. The
//! methods differ only in how each inner step picks its subspace:
//!
//! | method                         | inner step `i` projects onto            |
//! |--------------------------------|-----------------------------------------|
//! | Gauss-Seidel                   | `e_i`                                   |
//! | double successive (1D)         | `e_i`, then `e_j` with `j = i - gap`    |
//! | gap pair (2D)                  | `span{e_i, e_j}` with `j = i - gap`     |
//! | greedy m-dimensional           | `m` largest residual components         |
//!
//! Iteration stops when the infinity norm of the change in `x` across a
//! full sweep drops below the tolerance.

mod cholesky;
pub mod diagnostics;
mod projection;

pub use cholesky::{cholesky_solve, Cholesky};
pub use projection::{
    extract_projected, oned_dspm_index_step, oned_dspm_step, projection_step, twod_dspm_step,
    ProjectedSystem, Projector,
};

use crate::error::SolverError;
use crate::matrix::{check_len, norm2, residual, SpdOperator};
use crate::selection::{gap_indices, SelectionStrategy, TopMSelector};
use std::fmt;

/// Per-sweep convergence record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    /// `||x_after - x_before||_inf` across the sweep.
    pub dx_inf: f64,
    /// `||r||_2` at the end of the sweep.
    pub res_2: f64,
    /// Sum of the A-norm-squared error decreases of the sweep's steps.
    pub decrease: f64,
}

/// Current iterate and its incrementally maintained residual.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub x: Vec<f64>,
    pub r: Vec<f64>,
    pub history: Vec<SweepRecord>,
}

impl SolverState {
    pub fn new(op: &dyn SpdOperator, b: &[f64], x0: &[f64]) -> Result<Self, SolverError> {
        let r = residual(op, b, x0)?;
        Ok(SolverState {
            x: x0.to_vec(),
            r,
            history: Vec::new(),
        })
    }

    /// Assemble a state from an iterate and a residual the caller vouches for.
    pub fn from_parts(x: Vec<f64>, r: Vec<f64>) -> Self {
        assert_eq!(x.len(), r.len(), "iterate and residual lengths differ");
        SolverState {
            x,
            r,
            history: Vec::new(),
        }
    }

    pub fn sweeps(&self) -> usize {
        self.history.len()
    }

    /// `||(b - A x) - r||_2 / ||b||_2`: how far the incremental residual has
    /// drifted from a fresh recomputation.
    pub fn residual_drift(&self, op: &dyn SpdOperator, b: &[f64]) -> Result<f64, SolverError> {
        let fresh = residual(op, b, &self.x)?;
        let diff: Vec<f64> = fresh.iter().zip(&self.r).map(|(f, r)| f - r).collect();
        let scale = norm2(b).max(f64::MIN_POSITIVE);
        Ok(norm2(&diff) / scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    tol: f64,
    max_sweeps: usize,
}

impl StoppingRule {
    pub const DEFAULT_TOL: f64 = 1e-6;
    pub const DEFAULT_MAX_SWEEPS: usize = 10_000;

    pub fn new(tol: f64, max_sweeps: usize) -> Result<Self, SolverError> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(SolverError::InvalidStoppingRule(format!(
                "tolerance must be positive and finite, got {tol}"
            )));
        }
        if max_sweeps == 0 {
            return Err(SolverError::InvalidStoppingRule(
                "max_sweeps must be at least 1".into(),
            ));
        }
        Ok(StoppingRule { tol, max_sweeps })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_sweeps(&self) -> usize {
        self.max_sweeps
    }
}

impl Default for StoppingRule {
    fn default() -> Self {
        StoppingRule {
            tol: Self::DEFAULT_TOL,
            max_sweeps: Self::DEFAULT_MAX_SWEEPS,
        }
    }
}

/// A sweep kernel together with its index rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// One projection per inner step onto the subspace the strategy selects.
    Projection(SelectionStrategy),
    /// Two successive one-dimensional projections per inner step, along
    /// `e_i` and then `e_{i - gap}` (wrapping).
    DoubleSuccessive { gap: usize },
}

impl Method {
    pub fn greedy(m: usize) -> Self {
        Method::Projection(SelectionStrategy::GreedyTopM { m })
    }

    pub fn gap_pair(gap: usize) -> Self {
        Method::Projection(SelectionStrategy::Gap { gap })
    }

    pub fn gauss_seidel() -> Self {
        Method::Projection(SelectionStrategy::Cyclic)
    }

    pub fn validate(&self, n: usize) -> Result<(), SolverError> {
        match self {
            Method::Projection(s) => s.validate(n)?,
            Method::DoubleSuccessive { gap } => {
                gap_indices(0, *gap, n)?;
            }
        }
        Ok(())
    }
}

impl From<SelectionStrategy> for Method {
    fn from(s: SelectionStrategy) -> Self {
        Method::Projection(s)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Projection(SelectionStrategy::GreedyTopM { m }) => write!(f, "mdspm(m={m})"),
            Method::Projection(SelectionStrategy::Gap { gap }) => write!(f, "gap2d(ij_gap={gap})"),
            Method::Projection(SelectionStrategy::Cyclic) => write!(f, "gs"),
            Method::DoubleSuccessive { gap } => write!(f, "1ddspm(ij_gap={gap})"),
        }
    }
}

/// Hook called around every inner step of a sweep.
pub trait StepObserver {
    fn before_step(&mut self, _indices: &[usize], _state: &SolverState) {}
    /// `decrease` is the A-norm-squared error decrease the step reported.
    fn after_step(&mut self, _indices: &[usize], _decrease: f64, _state: &SolverState) {}
}

impl StepObserver for () {}

/// Runs sweeps of one method, reusing scratch space between steps.
#[derive(Debug)]
pub struct Sweeper {
    method: Method,
    projector: Projector,
    selector: TopMSelector,
    single: [usize; 1],
}

impl Sweeper {
    pub fn new(method: Method) -> Self {
        Sweeper {
            method,
            projector: Projector::new(),
            selector: TopMSelector::new(),
            single: [0],
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// One sweep of `n` inner steps. Returns the summed error decrease.
    ///
    /// The greedy rule stops early once the residual is exactly zero; every
    /// later step would be a no-op.
    pub fn sweep(&mut self, op: &dyn SpdOperator, state: &mut SolverState) -> Result<f64, SolverError> {
        self.sweep_observed(op, state, &mut ())
    }

    pub fn sweep_observed(
        &mut self,
        op: &dyn SpdOperator,
        state: &mut SolverState,
        observer: &mut dyn StepObserver,
    ) -> Result<f64, SolverError> {
        let n = op.dim();
        self.method.validate(n)?;
        check_len(n, state.x.len())?;
        check_len(n, state.r.len())?;
        let mut total = 0.0;
        let mut pair = [0usize; 2];
        for i in 0..n {
            let decrease = match self.method {
                Method::Projection(SelectionStrategy::GreedyTopM { m }) => {
                    let s = self.selector.select(&state.r, m)?;
                    if s.as_slice().iter().all(|&k| state.r[k] == 0.0) {
                        break;
                    }
                    observer.before_step(s.as_slice(), state);
                    let d = self.projector.step(op, s.as_slice(), state)?;
                    observer.after_step(s.as_slice(), d, state);
                    d
                }
                Method::Projection(SelectionStrategy::Gap { gap }) => {
                    let s = gap_indices(i, gap, n)?;
                    observer.before_step(s.as_slice(), state);
                    let d = self.projector.step(op, s.as_slice(), state)?;
                    observer.after_step(s.as_slice(), d, state);
                    d
                }
                Method::Projection(SelectionStrategy::Cyclic) => {
                    self.single[0] = i;
                    observer.before_step(&self.single, state);
                    let d = self.projector.step(op, &self.single, state)?;
                    observer.after_step(&self.single, d, state);
                    d
                }
                Method::DoubleSuccessive { gap } => {
                    // Order matters here: e_i first, then its partner.
                    pair[0] = i;
                    pair[1] = if i >= gap { i - gap } else { i + n - gap };
                    observer.before_step(&pair, state);
                    let d = oned_dspm_index_step(op, pair[0], pair[1], state)?;
                    observer.after_step(&pair, d, state);
                    d
                }
            };
            total += decrease;
        }
        Ok(total)
    }
}

/// One sweep with a selection strategy.
pub fn sweep(
    op: &dyn SpdOperator,
    strategy: SelectionStrategy,
    state: &mut SolverState,
) -> Result<f64, SolverError> {
    Sweeper::new(strategy.into()).sweep(op, state)
}

/// Summary of a completed solve. Hitting the sweep cap is a normal outcome
/// (`converged == false`), not an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub sweeps: usize,
    pub converged: bool,
    pub final_dx_inf: f64,
    pub final_res_2: f64,
}

pub fn solve(
    op: &dyn SpdOperator,
    b: &[f64],
    x0: &[f64],
    method: Method,
    rule: StoppingRule,
) -> Result<(SolverState, ConvergenceReport), SolverError> {
    solve_observed(op, b, x0, method, rule, &mut ())
}

/// [`solve`], reporting every inner step to `observer`.
pub fn solve_observed(
    op: &dyn SpdOperator,
    b: &[f64],
    x0: &[f64],
    method: Method,
    rule: StoppingRule,
    observer: &mut dyn StepObserver,
) -> Result<(SolverState, ConvergenceReport), SolverError> {
    let mut state = SolverState::new(op, b, x0)?;
    method.validate(op.dim())?;
    let mut sweeper = Sweeper::new(method);
    let mut start = state.x.clone();
    let mut converged = false;
    while state.sweeps() < rule.max_sweeps() {
        let decrease = sweeper.sweep_observed(op, &mut state, observer)?;
        let dx_inf = state
            .x
            .iter()
            .zip(&start)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        state.history.push(SweepRecord {
            dx_inf,
            res_2: norm2(&state.r),
            decrease,
        });
        if dx_inf < rule.tol() {
            converged = true;
            break;
        }
        start.copy_from_slice(&state.x);
    }
    let last = state.history.last().copied();
    let report = ConvergenceReport {
        sweeps: state.sweeps(),
        converged,
        final_dx_inf: last.map_or(f64::INFINITY, |r| r.dx_inf),
        final_res_2: last.map_or_else(|| norm2(&state.r), |r| r.res_2),
    };
    Ok((state, report))
}

//! Single projection steps.
//!
//! A step with index set `S = {i_1 < ... < i_m}` solves the `m x m` system
//! `A[S,S] y = r[S]`, then sets `x[S] += y` and `r -= sum_j y_j A[:, i_j]`.
//! Afterwards `r[S] = 0` and `||x* - x||_A^2` has dropped by exactly
//! `r[S]^T y`, the value every kernel here returns.

use super::cholesky::Cholesky;
use super::SolverState;
use crate::error::SolverError;
use crate::matrix::{dot, SpdOperator};
use crate::selection::IndexSet;

/// Principal submatrix `A[S,S]` (row-major) and `r[S]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProjectedSystem {
    pub gram: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl ProjectedSystem {
    pub fn dim(&self) -> usize {
        self.rhs.len()
    }
}

pub fn extract_projected(op: &dyn SpdOperator, s: &IndexSet, r: &[f64]) -> ProjectedSystem {
    let mut sys = ProjectedSystem::default();
    fill_projected(op, s.as_slice(), r, &mut sys);
    sys
}

fn fill_projected(op: &dyn SpdOperator, s: &[usize], r: &[f64], sys: &mut ProjectedSystem) {
    let m = s.len();
    sys.gram.clear();
    sys.gram.resize(m * m, 0.0);
    for (a, &i) in s.iter().enumerate() {
        for (b, &j) in s.iter().enumerate().take(a + 1) {
            let v = op.entry(i, j);
            sys.gram[a * m + b] = v;
            sys.gram[b * m + a] = v;
        }
    }
    sys.rhs.clear();
    sys.rhs.extend(s.iter().map(|&i| r[i]));
}

/// Scratch buffers for repeated projection steps.
#[derive(Debug, Default)]
pub struct Projector {
    system: ProjectedSystem,
    y: Vec<f64>,
}

impl Projector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Project onto `span{e_i : i in s}` and return the A-norm-squared
    /// error decrease.
    pub fn step(
        &mut self,
        op: &dyn SpdOperator,
        s: &[usize],
        state: &mut SolverState,
    ) -> Result<f64, SolverError> {
        fill_projected(op, s, &state.r, &mut self.system);
        if self.system.rhs.iter().all(|&v| v == 0.0) {
            return Ok(0.0);
        }
        let m = s.len();
        let chol = Cholesky::factor(m, &self.system.gram)?;
        self.y.clear();
        self.y.extend_from_slice(&self.system.rhs);
        chol.solve_in_place(&mut self.y);
        for (&i, &yj) in s.iter().zip(&self.y) {
            state.x[i] += yj;
            op.add_scaled_column(i, -yj, &mut state.r);
        }
        Ok(dot(&self.system.rhs, &self.y))
    }

    pub fn last_solution(&self) -> &[f64] {
        &self.y
    }
}

pub fn projection_step(
    op: &dyn SpdOperator,
    s: &IndexSet,
    state: &mut SolverState,
) -> Result<f64, SolverError> {
    Projector::new().step(op, s.as_slice(), state)
}

struct Directions {
    av1: Vec<f64>,
    av2: Vec<f64>,
    a: f64,
    c: f64,
    d: f64,
    p1: f64,
    p2: f64,
}

fn directions(
    op: &dyn SpdOperator,
    v1: &[f64],
    v2: &[f64],
    state: &SolverState,
) -> Result<Directions, SolverError> {
    let av1 = op.matvec(v1)?;
    let av2 = op.matvec(v2)?;
    let a = dot(&av1, v1);
    let c = dot(&av1, v2);
    let d = dot(&av2, v2);
    if !(a > 0.0 && d > 0.0) {
        return Err(SolverError::ZeroDirection);
    }
    Ok(Directions {
        a,
        c,
        d,
        p1: -dot(&state.r, v1),
        p2: -dot(&state.r, v2),
        av1,
        av2,
    })
}

fn apply(state: &mut SolverState, dirs: &Directions, v1: &[f64], v2: &[f64], alpha: f64, beta: f64) {
    for k in 0..state.x.len() {
        state.x[k] += alpha * v1[k] + beta * v2[k];
        state.r[k] -= alpha * dirs.av1[k] + beta * dirs.av2[k];
    }
}

/// Two successive one-dimensional projections, first along `v1` then
/// along `v2`. Returns the total A-norm-squared error decrease.
pub fn oned_dspm_step(
    op: &dyn SpdOperator,
    v1: &[f64],
    v2: &[f64],
    state: &mut SolverState,
) -> Result<f64, SolverError> {
    let dirs = directions(op, v1, v2, state)?;
    let Directions { a, c, d, p1, p2, .. } = dirs;
    let alpha = -p1 / a;
    let beta = (c * p1 - a * p2) / (a * d);
    apply(state, &dirs, v1, v2, alpha, beta);
    Ok(p1 * p1 / a + beta * beta * d)
}

/// Projection onto `span{v1, v2}` via the closed-form 2x2 solve.
pub fn twod_dspm_step(
    op: &dyn SpdOperator,
    v1: &[f64],
    v2: &[f64],
    state: &mut SolverState,
) -> Result<f64, SolverError> {
    let dirs = directions(op, v1, v2, state)?;
    let Directions { a, c, d, p1, p2, .. } = dirs;
    let det = a * d - c * c;
    if det <= 1e-12 * a * d {
        return Err(SolverError::DependentDirections { det });
    }
    let alpha = (c * p2 - d * p1) / det;
    let beta = (c * p1 - a * p2) / det;
    apply(state, &dirs, v1, v2, alpha, beta);
    Ok(-(alpha * p1 + beta * p2))
}

/// Index form of [`oned_dspm_step`] with `v1 = e_i`, `v2 = e_j`: O(column)
/// work instead of two products.
pub fn oned_dspm_index_step(
    op: &dyn SpdOperator,
    i: usize,
    j: usize,
    state: &mut SolverState,
) -> Result<f64, SolverError> {
    let a = op.entry(i, i);
    let d = op.entry(j, j);
    if !(a > 0.0) {
        return Err(SolverError::NotPositiveDefinite { row: i, pivot: a });
    }
    if !(d > 0.0) {
        return Err(SolverError::NotPositiveDefinite { row: j, pivot: d });
    }
    let alpha = state.r[i] / a;
    state.x[i] += alpha;
    op.add_scaled_column(i, -alpha, &mut state.r);
    let beta = state.r[j] / d;
    state.x[j] += beta;
    op.add_scaled_column(j, -beta, &mut state.r);
    Ok(alpha * alpha * a + beta * beta * d)
}

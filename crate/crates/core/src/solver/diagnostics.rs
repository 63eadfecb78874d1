//! Runtime checks of the convergence identities.
//!
//! These need a reference solution or spectral information and are meant
//! for tests and reports, never for the solver path.

use crate::matrix::{dot, norm2, SpdOperator};

/// `v^T A v`.
pub fn a_norm_sq(op: &dyn SpdOperator, v: &[f64]) -> f64 {
    let av = op.matvec(v).expect("vector length matches operator");
    dot(&av, v)
}

/// `||x_star - x||_A^2`.
pub fn error_energy(op: &dyn SpdOperator, x_star: &[f64], x: &[f64]) -> f64 {
    let d: Vec<f64> = x_star.iter().zip(x).map(|(s, xi)| s - xi).collect();
    a_norm_sq(op, &d)
}

/// Whether a step from `x_before` to `x_after` dropped the squared A-norm
/// error by `decrease`, within `1e-9` relative to the error energy before
/// the step.
pub fn decrease_identity_check(
    op: &dyn SpdOperator,
    x_star: &[f64],
    x_before: &[f64],
    x_after: &[f64],
    decrease: f64,
) -> bool {
    let before = error_energy(op, x_star, x_before);
    let after = error_energy(op, x_star, x_after);
    let drop = before - after;
    (drop - decrease).abs() <= 1e-9 * before.max(f64::MIN_POSITIVE)
}

/// Lower bound on the decrease of a greedy step with `m` indices:
/// `decrease >= m / (n * lambda_max) * ||r||^2`, with `1e-12` absolute slack.
pub fn greedy_bound_check(r: &[f64], m: usize, lambda_max: f64, decrease: f64) -> bool {
    let n = r.len() as f64;
    let rr = dot(r, r);
    decrease >= (m as f64) / (n * lambda_max) * rr - 1e-12
}

/// Upper estimate of the largest eigenvalue of `op`.
///
/// Power iteration on the Rayleigh quotient until the relative change
/// falls below `1e-8`, then inflated by a factor `1 + 1e-6`.
pub fn lambda_max_estimate(op: &dyn SpdOperator) -> f64 {
    const REL_TOL: f64 = 1e-8;
    const INFLATE: f64 = 1e-6;
    const MAX_ITERS: usize = 200_000;

    let n = op.dim();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 + 1.0) / (3.0 * n as f64)).collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut av = vec![0.0; n];
    let mut rho = 0.0f64;
    for _ in 0..MAX_ITERS {
        op.matvec_into(&v, &mut av);
        let next = dot(&av, &v);
        let norm = norm2(&av);
        if norm == 0.0 {
            return 0.0;
        }
        for (vi, ai) in v.iter_mut().zip(&av) {
            *vi = ai / norm;
        }
        let done = (next - rho).abs() <= REL_TOL * next.abs();
        rho = next;
        if done {
            break;
        }
    }
    rho * (1.0 + INFLATE)
}

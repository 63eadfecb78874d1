//! Operator abstractions for symmetric positive definite systems.
//!
//! The projection solvers never need rows of `A`: they read single entries
//! (to form principal submatrices), whole columns (to update the residual)
//! and occasionally a full product (to form `b` and recheck residuals).
//! [`SpdOperator`] exposes exactly those access patterns.

mod csc;
mod dense;
pub mod market;
mod structured;

pub use csc::CscMatrix;
pub use dense::DenseMatrix;
pub use structured::BandedConstant;

use crate::error::MatrixError;
use std::fmt::Debug;

/// A square symmetric positive definite operator.
///
/// Implementations are immutable after construction and may be shared
/// between threads. Index arguments of the unchecked methods are caller
/// contracts; they panic when violated. The `checked_*` methods report
/// violations as [`MatrixError`].
pub trait SpdOperator: Debug + Send + Sync {
    fn dim(&self) -> usize;

    /// `A[i][j]`.
    fn entry(&self, i: usize, j: usize) -> f64;

    /// `out += alpha * A[:, j]`.
    fn add_scaled_column(&self, j: usize, alpha: f64, out: &mut [f64]);

    /// `out = A x`.
    fn matvec_into(&self, x: &[f64], out: &mut [f64]);

    /// Nonzero entries `(i, j, value)` with `i >= j`, column-major order.
    fn lower_nonzeros(&self) -> Vec<(usize, usize, f64)> {
        let n = self.dim();
        let mut out = Vec::new();
        for j in 0..n {
            for i in j..n {
                let v = self.entry(i, j);
                if v != 0.0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    fn checked_entry(&self, i: usize, j: usize) -> Result<f64, MatrixError> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(MatrixError::IndexOutOfRange {
                row: i,
                col: j,
                dim: n,
            });
        }
        Ok(self.entry(i, j))
    }

    /// The `j`-th column as a dense vector.
    fn column(&self, j: usize) -> Result<Vec<f64>, MatrixError> {
        let n = self.dim();
        if j >= n {
            return Err(MatrixError::IndexOutOfRange {
                row: 0,
                col: j,
                dim: n,
            });
        }
        let mut col = vec![0.0; n];
        self.add_scaled_column(j, 1.0, &mut col);
        Ok(col)
    }

    fn matvec(&self, x: &[f64]) -> Result<Vec<f64>, MatrixError> {
        check_len(self.dim(), x.len())?;
        let mut out = vec![0.0; x.len()];
        self.matvec_into(x, &mut out);
        Ok(out)
    }

    /// Materialize as a dense row-major matrix.
    fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.entry(i, j);
            }
        }
        DenseMatrix::from_row_major(n, data).expect("length is n * n by construction")
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<(), MatrixError> {
    if expected != got {
        return Err(MatrixError::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `b - A x`.
pub fn residual(op: &dyn SpdOperator, b: &[f64], x: &[f64]) -> Result<Vec<f64>, MatrixError> {
    check_len(op.dim(), b.len())?;
    let mut r = op.matvec(x)?;
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    Ok(r)
}

/// Full O(n^2) scan for exact symmetry.
pub fn is_symmetric(op: &dyn SpdOperator) -> bool {
    let n = op.dim();
    (0..n).all(|i| (0..i).all(|j| op.entry(i, j) == op.entry(j, i)))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

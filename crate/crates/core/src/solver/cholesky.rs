//! Dense Cholesky factorization for small SPD systems.

use crate::error::SolverError;

/// Lower-triangular Cholesky factor `L` with `A = L L^T`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factor a row-major symmetric `n x n` matrix. Only the lower triangle is read.
    pub fn factor(n: usize, a: &[f64]) -> Result<Self, SolverError> {
        Self::factor_banded(n, n.saturating_sub(1), |i, j| a[i * n + j])
    }

    /// Factor a symmetric matrix whose entries vanish for `|i - j| > bandwidth`.
    /// The factor inherits the band, so work is O(n * bandwidth^2).
    pub fn factor_banded(
        n: usize,
        bandwidth: usize,
        entry: impl Fn(usize, usize) -> f64,
    ) -> Result<Self, SolverError> {
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            let lo = i.saturating_sub(bandwidth);
            for j in lo..=i {
                let mut sum = entry(i, j);
                for k in lo.max(j.saturating_sub(bandwidth))..j {
                    sum -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    // `!(sum > 0)` also catches NaN.
                    if !(sum > 0.0) {
                        return Err(SolverError::NotPositiveDefinite { row: i, pivot: sum });
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Ok(Cholesky { n, l })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve `A y = rhs` in place.
    pub fn solve_in_place(&self, y: &mut [f64]) {
        let n = self.n;
        debug_assert_eq!(y.len(), n);
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
    }
}

/// Solve `gram * y = rhs` for a row-major `m x m` SPD matrix.
pub fn cholesky_solve(gram: &[f64], rhs: &[f64]) -> Result<Vec<f64>, SolverError> {
    let m = rhs.len();
    assert_eq!(gram.len(), m * m, "gram must be m x m for an m-vector rhs");
    let chol = Cholesky::factor(m, gram)?;
    let mut y = rhs.to_vec();
    chol.solve_in_place(&mut y);
    Ok(y)
}

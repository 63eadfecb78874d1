use super::{check_len, SpdOperator};
use crate::error::MatrixError;

/// Dense row-major `n x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        check_len(n * n, data.len())?;
        Ok(DenseMatrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        DenseMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            check_len(n, row.len())?;
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

impl SpdOperator for DenseMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        self.data[i * self.n + j]
    }

    fn add_scaled_column(&self, j: usize, alpha: f64, out: &mut [f64]) {
        assert!(j < self.n, "column {j} out of range");
        for (i, o) in out.iter_mut().enumerate() {
            *o += alpha * self.data[i * self.n + j];
        }
    }

    fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = super::dot(self.row(i), x);
        }
    }

    fn to_dense(&self) -> DenseMatrix {
        self.clone()
    }
}

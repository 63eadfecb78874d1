use super::SpdOperator;
use crate::error::MatrixError;

/// Square sparse matrix in compressed sparse column form.
///
/// Both triangles are stored, so a column is a contiguous slice. Row
/// indices within a column are strictly increasing and explicit zeros are
/// dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct CscMatrix {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CscMatrix {
    /// Assemble from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        n: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, MatrixError> {
        let mut entries: Vec<(usize, usize, f64)> = Vec::new();
        for (i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(MatrixError::IndexOutOfRange {
                    row: i,
                    col: j,
                    dim: n,
                });
            }
            if !v.is_finite() {
                return Err(MatrixError::Invalid(format!(
                    "non-finite value at ({i}, {j})"
                )));
            }
            entries.push((j, i, v));
        }
        entries.sort_by_key(|e| (e.0, e.1));

        let mut col_ptr = vec![0usize; n + 1];
        let mut row_idx = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (j, i, v) in entries {
            if last == Some((j, i)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
            } else {
                row_idx.push(i);
                values.push(v);
                col_ptr[j + 1] += 1;
                last = Some((j, i));
            }
        }
        for j in 0..n {
            col_ptr[j + 1] += col_ptr[j];
        }
        let mut m = CscMatrix {
            n,
            col_ptr,
            row_idx,
            values,
        };
        m.drop_zeros();
        Ok(m)
    }

    /// Assemble from lower-triangle triplets (`row >= col`), mirroring each
    /// off-diagonal entry into the upper triangle.
    pub fn from_lower_triplets(
        n: usize,
        lower: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, MatrixError> {
        let mut full = Vec::new();
        for (i, j, v) in lower {
            if i < j {
                return Err(MatrixError::Invalid(format!(
                    "entry ({i}, {j}) lies above the diagonal"
                )));
            }
            full.push((i, j, v));
            if i != j {
                full.push((j, i, v));
            }
        }
        Self::from_triplets(n, full)
    }

    pub fn from_operator(op: &dyn SpdOperator) -> Self {
        Self::from_lower_triplets(op.dim(), op.lower_nonzeros())
            .expect("operator entries are in range")
    }

    fn drop_zeros(&mut self) {
        if self.values.iter().all(|&v| v != 0.0) {
            return;
        }
        let mut col_ptr = vec![0usize; self.n + 1];
        let mut row_idx = Vec::with_capacity(self.row_idx.len());
        let mut values = Vec::with_capacity(self.values.len());
        for j in 0..self.n {
            for k in self.col_ptr[j]..self.col_ptr[j + 1] {
                if self.values[k] != 0.0 {
                    row_idx.push(self.row_idx[k]);
                    values.push(self.values[k]);
                }
            }
            col_ptr[j + 1] = row_idx.len();
        }
        self.col_ptr = col_ptr;
        self.row_idx = row_idx;
        self.values = values;
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Row indices and values of column `j`.
    pub fn column_entries(&self, j: usize) -> (&[usize], &[f64]) {
        let range = self.col_ptr[j]..self.col_ptr[j + 1];
        (&self.row_idx[range.clone()], &self.values[range])
    }

    /// Largest `|i - j|` over stored entries.
    pub fn bandwidth(&self) -> usize {
        (0..self.n)
            .flat_map(|j| self.column_entries(j).0.iter().map(move |&i| i.abs_diff(j)))
            .max()
            .unwrap_or(0)
    }
}

impl SpdOperator for CscMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        let (rows, vals) = self.column_entries(j);
        match rows.binary_search(&i) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    fn add_scaled_column(&self, j: usize, alpha: f64, out: &mut [f64]) {
        assert!(j < self.n, "column {j} out of range");
        let (rows, vals) = self.column_entries(j);
        for (&i, &v) in rows.iter().zip(vals) {
            out[i] += alpha * v;
        }
    }

    fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                self.add_scaled_column(j, xj, out);
            }
        }
    }

    fn lower_nonzeros(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            let (rows, vals) = self.column_entries(j);
            for (&i, &v) in rows.iter().zip(vals) {
                if i >= j {
                    out.push((i, j, v));
                }
            }
        }
        out
    }
}

use super::SpdOperator;
use crate::error::MatrixError;

/// Tridiagonal band on a constant background:
///
/// ```text
/// A[i][i]            = diagonal
/// A[i][i+1] = A[i+1][i] = band
/// A[i][j]            = background   otherwise
/// ```
///
/// Storage is O(1); column access and products are O(n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandedConstant {
    n: usize,
    background: f64,
    diagonal: f64,
    band: f64,
}

impl BandedConstant {
    pub fn new(n: usize, background: f64, diagonal: f64, band: f64) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::Invalid("dimension must be positive".into()));
        }
        if ![background, diagonal, band].iter().all(|v| v.is_finite()) {
            return Err(MatrixError::Invalid("coefficients must be finite".into()));
        }
        Ok(BandedConstant {
            n,
            background,
            diagonal,
            band,
        })
    }

    pub fn background(&self) -> f64 {
        self.background
    }

    pub fn diagonal(&self) -> f64 {
        self.diagonal
    }

    pub fn band(&self) -> f64 {
        self.band
    }

    /// Strict diagonal dominance with positive diagonal, which together with
    /// symmetry certifies positive definiteness.
    pub fn is_diagonally_dominant(&self) -> bool {
        if self.diagonal <= 0.0 {
            return false;
        }
        let n = self.n;
        (0..n).all(|i| {
            let neighbours = usize::from(i > 0) + usize::from(i + 1 < n);
            let others = n - 1 - neighbours;
            let off = neighbours as f64 * self.band.abs() + others as f64 * self.background.abs();
            self.diagonal > off
        })
    }
}

impl SpdOperator for BandedConstant {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.n && j < self.n, "entry ({i}, {j}) out of range");
        if i == j {
            self.diagonal
        } else if i.abs_diff(j) == 1 {
            self.band
        } else {
            self.background
        }
    }

    fn add_scaled_column(&self, j: usize, alpha: f64, out: &mut [f64]) {
        assert!(j < self.n, "column {j} out of range");
        let bg = alpha * self.background;
        for o in out.iter_mut() {
            *o += bg;
        }
        out[j] += alpha * (self.diagonal - self.background);
        let band = alpha * (self.band - self.background);
        if j > 0 {
            out[j - 1] += band;
        }
        if j + 1 < self.n {
            out[j + 1] += band;
        }
    }

    fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        let n = self.n;
        let total: f64 = x.iter().sum();
        let diag = self.diagonal - self.background;
        let band = self.band - self.background;
        for i in 0..n {
            let mut v = self.background * total + diag * x[i];
            if i > 0 {
                v += band * x[i - 1];
            }
            if i + 1 < n {
                v += band * x[i + 1];
            }
            out[i] = v;
        }
    }
}

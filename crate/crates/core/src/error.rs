use thiserror::Error;

/// Errors raised by operator construction and access.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
    #[error("vector length {got} does not match operator dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid operator: {0}")]
    Invalid(String),
}

/// Matrix Market parse failure, carrying the 1-based line it occurred on.
#[derive(Debug, Error)]
pub enum MarketError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl MarketError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> Self {
        MarketError::Parse {
            line,
            message: message.into(),
        }
    }

    /// Line number for parse errors; `None` for I/O failures.
    pub fn line(&self) -> Option<usize> {
        match self {
            MarketError::Parse { line, .. } => Some(*line),
            MarketError::Io(_) => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelectionError {
    #[error("subspace dimension m = {m} must satisfy 1 <= m <= {n}")]
    InvalidSubspaceDim { m: usize, n: usize },
    #[error("gap {gap} must satisfy 0 < gap < {n}")]
    InvalidGap { gap: usize, n: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("indices must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("index set must not be empty")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("matrix is not positive definite: pivot {pivot} at row {row}")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("direction vectors are numerically dependent (ad - c^2 = {det:e})")]
    DependentDirections { det: f64 },
    #[error("direction vector has zero A-norm")]
    ZeroDirection,
    #[error("invalid stopping rule: {0}")]
    InvalidStoppingRule(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Selection(#[from] SelectionError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error("dimension n = {0} too small (need n >= 2)")]
    DimensionTooSmall(usize),
    #[error("grid size {0} too small (need grid >= 2)")]
    GridTooSmall(usize),
    #[error("unknown convection-diffusion case {0} (expected 1, 2 or 3)")]
    UnknownCase(u8),
    #[error("assembled operator is not positive definite: {0}")]
    NotPositiveDefinite(SolverError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

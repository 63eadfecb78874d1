//! Test problem families.
//!
//! Every problem uses the unit vector `e = (1, ..., 1)` as its exact
//! solution, `b = A e`, and the starting guess `x0[i] = 0.001 * (i + 1)`.

pub mod pde;

pub use pde::{ConvectionCase, PdeCoefficients};

use crate::error::ProblemError;
use crate::matrix::{BandedConstant, CscMatrix, SpdOperator};
use crate::solver::Cholesky;
use std::fmt;
use std::sync::Arc;

/// Background value of the dense banded families.
pub const BACKGROUND: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProblemFamily {
    /// Diagonal `4n`, band `n`, background `0.5`.
    Example1 { n: usize },
    /// Diagonal `3n`, band `n`, background `0.5`.
    Example2 { n: usize },
    /// Symmetrized convection-diffusion on a `grid x grid` mesh.
    Example3 { case: ConvectionCase, grid: usize },
    /// Operator supplied from outside (e.g. a Matrix Market file).
    External { name: String },
}

impl fmt::Display for ProblemFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemFamily::Example1 { n } => write!(f, "example1(n={n})"),
            ProblemFamily::Example2 { n } => write!(f, "example2(n={n})"),
            ProblemFamily::Example3 { case, grid } => {
                write!(f, "example3(case={},grid={grid})", case.number())
            }
            ProblemFamily::External { name } => write!(f, "file({name})"),
        }
    }
}

/// A ready-to-solve system.
#[derive(Debug, Clone)]
pub struct Problem {
    pub family: ProblemFamily,
    pub operator: Arc<dyn SpdOperator>,
    pub b: Vec<f64>,
    pub x0: Vec<f64>,
    /// The operator is the symmetric part of a nonsymmetric discretization.
    pub symmetrized: bool,
}

impl Problem {
    pub fn from_operator(family: ProblemFamily, operator: Arc<dyn SpdOperator>) -> Self {
        let n = operator.dim();
        let b = operator
            .matvec(&vec![1.0; n])
            .expect("unit vector has operator dimension");
        Problem {
            family,
            operator,
            b,
            x0: initial_guess(n),
            symmetrized: false,
        }
    }

    pub fn build(family: &ProblemFamily) -> Result<Self, ProblemError> {
        match family {
            ProblemFamily::Example1 { n } => build_example1(*n),
            ProblemFamily::Example2 { n } => build_example2(*n),
            ProblemFamily::Example3 { case, grid } => build_example3(*case, *grid),
            ProblemFamily::External { name } => Err(ProblemError::Matrix(
                crate::error::MatrixError::Invalid(format!(
                    "external problem `{name}` must be built from its operator"
                )),
            )),
        }
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    /// The exact solution `e`.
    pub fn reference_solution(&self) -> Vec<f64> {
        vec![1.0; self.dim()]
    }
}

/// `x0[i] = 0.001 * (i + 1)`.
pub fn initial_guess(n: usize) -> Vec<f64> {
    (1..=n).map(|i| 0.001 * i as f64).collect()
}

fn banded_family(family: ProblemFamily, n: usize, diagonal: f64) -> Result<Problem, ProblemError> {
    if n < 2 {
        return Err(ProblemError::DimensionTooSmall(n));
    }
    let op = BandedConstant::new(n, BACKGROUND, diagonal, n as f64)?;
    if !op.is_diagonally_dominant() {
        return Err(ProblemError::Matrix(crate::error::MatrixError::Invalid(
            "operator is not diagonally dominant".into(),
        )));
    }
    Ok(Problem::from_operator(family, Arc::new(op)))
}

pub fn build_example1(n: usize) -> Result<Problem, ProblemError> {
    banded_family(ProblemFamily::Example1 { n }, n, 4.0 * n as f64)
}

pub fn build_example2(n: usize) -> Result<Problem, ProblemError> {
    banded_family(ProblemFamily::Example2 { n }, n, 3.0 * n as f64)
}

pub fn build_example3(case: ConvectionCase, grid: usize) -> Result<Problem, ProblemError> {
    let op = convection_diffusion_operator(&PdeCoefficients::case(case), grid)?;
    let mut problem = Problem::from_operator(ProblemFamily::Example3 { case, grid }, Arc::new(op));
    problem.symmetrized = true;
    Ok(problem)
}

/// Symmetric part of the five-point matrix, certified positive definite by
/// a banded Cholesky factorization.
pub fn convection_diffusion_operator(coeffs: &PdeCoefficients, grid: usize) -> Result<CscMatrix, ProblemError> {
    let raw = pde::assemble(coeffs, grid)?;
    let n = grid * grid;
    let op = CscMatrix::from_triplets(n, pde::symmetrize(&raw))?;
    Cholesky::factor_banded(n, grid, |i, j| op.entry(i, j)).map_err(ProblemError::NotPositiveDefinite)?;
    Ok(op)
}

//! Five-point discretization of
//! `-Δu + a(x,y) u_x + b(x,y) u_y + c(x,y) u` on the unit square.
//!
//! Interior unknowns on a `grid x grid` mesh with `h = 1 / (grid + 1)`,
//! zero Dirichlet boundary, natural (row-major) ordering: unknown
//! `k = j * grid + i` sits at `(x, y) = ((i + 1) h, (j + 1) h)`.

use crate::error::ProblemError;
use std::fmt;

pub type Coefficient = fn(f64, f64) -> f64;

/// Convection and reaction coefficients.
#[derive(Clone, Copy)]
pub struct PdeCoefficients {
    pub a: Coefficient,
    pub b: Coefficient,
    pub c: Coefficient,
}

impl fmt::Debug for PdeCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PdeCoefficients { .. }")
    }
}

impl PdeCoefficients {
    /// Pure Laplacian.
    pub fn zero() -> Self {
        PdeCoefficients {
            a: |_, _| 0.0,
            b: |_, _| 0.0,
            c: |_, _| 0.0,
        }
    }

    pub fn case(case: ConvectionCase) -> Self {
        match case {
            ConvectionCase::One => PdeCoefficients {
                a: |_, _| 0.0,
                b: |x, y| 10.0 * (x + y),
                c: |x, y| 10.0 * (x - y),
            },
            ConvectionCase::Two => PdeCoefficients {
                a: |x, y| -10.0 * (x + y),
                b: |x, y| -10.0 * (x - y),
                c: |_, _| 1.0,
            },
            ConvectionCase::Three => PdeCoefficients {
                a: |x, y| 10.0 * (x * y).exp(),
                b: |x, y| 10.0 * (-x * y).exp(),
                c: |_, _| 0.0,
            },
        }
    }
}

/// The three coefficient presets of the convection-diffusion family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvectionCase {
    One,
    Two,
    Three,
}

impl ConvectionCase {
    pub const ALL: [ConvectionCase; 3] = [ConvectionCase::One, ConvectionCase::Two, ConvectionCase::Three];

    pub fn number(self) -> u8 {
        match self {
            ConvectionCase::One => 1,
            ConvectionCase::Two => 2,
            ConvectionCase::Three => 3,
        }
    }
}

impl TryFrom<u8> for ConvectionCase {
    type Error = ProblemError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(ConvectionCase::One),
            2 => Ok(ConvectionCase::Two),
            3 => Ok(ConvectionCase::Three),
            other => Err(ProblemError::UnknownCase(other)),
        }
    }
}

/// Raw (generally nonsymmetric) five-point matrix as `(row, col, value)`
/// triplets, at most five per row.
pub fn assemble(coeffs: &PdeCoefficients, grid: usize) -> Result<Vec<(usize, usize, f64)>, ProblemError> {
    if grid < 2 {
        return Err(ProblemError::GridTooSmall(grid));
    }
    let h = 1.0 / (grid as f64 + 1.0);
    let inv_h2 = 1.0 / (h * h);
    let inv_2h = 1.0 / (2.0 * h);
    let mut out = Vec::with_capacity(5 * grid * grid);
    for j in 0..grid {
        for i in 0..grid {
            let k = j * grid + i;
            let x = (i + 1) as f64 * h;
            let y = (j + 1) as f64 * h;
            let a = (coeffs.a)(x, y);
            let b = (coeffs.b)(x, y);
            let c = (coeffs.c)(x, y);
            out.push((k, k, 4.0 * inv_h2 + c));
            if i > 0 {
                out.push((k, k - 1, -inv_h2 - a * inv_2h));
            }
            if i + 1 < grid {
                out.push((k, k + 1, -inv_h2 + a * inv_2h));
            }
            if j > 0 {
                out.push((k, k - grid, -inv_h2 - b * inv_2h));
            }
            if j + 1 < grid {
                out.push((k, k + grid, -inv_h2 + b * inv_2h));
            }
        }
    }
    Ok(out)
}

/// Triplets of `(M + M^T) / 2`. Each entry is the sum of the same two
/// halves in either position, so the result is exactly symmetric.
pub fn symmetrize(triplets: &[(usize, usize, f64)]) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::with_capacity(2 * triplets.len());
    for &(i, j, v) in triplets {
        out.push((i, j, 0.5 * v));
        out.push((j, i, 0.5 * v));
    }
    out
}

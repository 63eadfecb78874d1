#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spm_core::{DenseMatrix, SpdOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric matrix with entries in (-1, 1), shifted on the diagonal
/// past its largest Gershgorin radius so it is SPD.
pub fn random_spd(rng: &mut impl Rng, n: usize) -> DenseMatrix {
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = rng.gen_range(-1.0..1.0);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    let radius = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| a[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let shift = radius + rng.gen_range(0.1..1.0);
    for i in 0..n {
        a[i * n + i] = a[i * n + i].abs() + shift;
    }
    DenseMatrix::from_row_major(n, a).unwrap()
}

/// Integer-valued SPD matrix (symmetric entries in -9..=9, diagonal past
/// the Gershgorin radius), an integer solution, and the exact `b = A x*`.
pub fn random_integer_system(rng: &mut impl Rng, n: usize) -> (DenseMatrix, Vec<f64>, Vec<f64>) {
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let v = f64::from(rng.gen_range(-9i32..=9));
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    for i in 0..n {
        let radius: f64 = (0..n).map(|j| a[i * n + j].abs()).sum();
        a[i * n + i] = radius + f64::from(rng.gen_range(1i32..=20));
    }
    let a = DenseMatrix::from_row_major(n, a).unwrap();
    let x_star: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(-20i32..=20))).collect();
    let b = a.matvec(&x_star).unwrap();
    (a, x_star, b)
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn to_nalgebra(op: &dyn SpdOperator) -> DMatrix<f64> {
    let n = op.dim();
    DMatrix::from_fn(n, n, |i, j| op.entry(i, j))
}

/// Dense LU solve, independent of the crate's Cholesky kernel.
pub fn direct_solve(op: &dyn SpdOperator, b: &[f64]) -> Vec<f64> {
    let a = to_nalgebra(op);
    let x = a.lu().solve(&DVector::from_column_slice(b)).expect("nonsingular");
    x.iter().copied().collect()
}

/// `(x* - x)^T A (x* - x)` with an explicit dense product.
pub fn energy(op: &dyn SpdOperator, x_star: &[f64], x: &[f64]) -> f64 {
    let a = to_nalgebra(op);
    let d = DVector::from_iterator(x.len(), x_star.iter().zip(x).map(|(s, v)| s - v));
    (d.transpose() * &a * &d)[(0, 0)]
}

/// Textbook forward Gauss-Seidel sweep working from `b`, not from a residual.
pub fn gauss_seidel_sweep(op: &dyn SpdOperator, b: &[f64], x: &mut [f64]) {
    let n = op.dim();
    for i in 0..n {
        let mut s = b[i];
        for j in 0..n {
            if j != i {
                s -= op.entry(i, j) * x[j];
            }
        }
        x[i] = s / op.entry(i, i);
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A random strictly increasing subset of `0..n` of size `m`.
pub fn random_subset(rng: &mut impl Rng, n: usize, m: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for k in 0..m {
        let j = rng.gen_range(k..n);
        idx.swap(k, j);
    }
    let mut s = idx[..m].to_vec();
    s.sort_unstable();
    s
}

//! Dense oracles and instance builders shared by the integration tests.
#![allow(dead_code)]

use lapflow_core::graph::{generate, ground, laplacian, with_random_weights, GraphKind, StandardSplitting};
use lapflow_core::linalg::DenseMatrix;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn to_na(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn matrix(s: &StandardSplitting) -> DMatrix<f64> {
    to_na(&s.to_dense())
}

pub fn inverse(s: &StandardSplitting) -> DMatrix<f64> {
    matrix(s).cholesky().expect("positive definite").inverse()
}

/// `L⁺ = (L + J/n)⁻¹ − J/n` for a connected Laplacian, `J = 11ᵀ`.
pub fn pseudo_inverse(l: &DMatrix<f64>) -> DMatrix<f64> {
    let n = l.nrows();
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    (l + &j).try_inverse().expect("regularized Laplacian is invertible") - j
}

pub fn apply(m: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v)).as_slice().to_vec()
}

/// `(D⁻¹A)` and `(AD⁻¹)` as dense matrices.
pub fn walk_matrices(s: &StandardSplitting) -> (DMatrix<f64>, DMatrix<f64>) {
    let a = to_na(&s.off().to_dense());
    let d_inv = DMatrix::from_diagonal(&DVector::from_iterator(s.n(), s.diag().iter().map(|d| 1.0 / d)));
    (&d_inv * &a, &a * &d_inv)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Random connected graph on `n` nodes with weights in `[1, 10]`, grounded
/// at a random node. Edge counts start above `0.6·n·ln n`; sparser uniform
/// samples are almost never connected.
pub fn random_grounded(n: usize, seed: u64) -> StandardSplitting {
    let mut r = rng(seed ^ 0x5eed);
    let max_m = n * (n - 1) / 2;
    let lo = ((0.6 * n as f64 * (n as f64).ln()).ceil() as usize).clamp(n.saturating_sub(1).max(1), max_m);
    let hi = (5 * n / 2).min(max_m).max(lo);
    let m = r.random_range(lo..=hi);
    let g = generate(&GraphKind::Random { n, m }, seed).expect("feasible random graph");
    let g = with_random_weights(&g, 1.0, 10.0, seed).expect("valid weights");
    let reference = r.random_range(0..n);
    ground(&laplacian(&g).expect("connected"), reference).expect("n >= 2").0
}

pub fn m_norm_error(m: &DMatrix<f64>, x: &[f64], x_star: &[f64]) -> f64 {
    let e = DVector::from_iterator(x.len(), x.iter().zip(x_star).map(|(a, b)| a - b));
    let xs = DVector::from_column_slice(x_star);
    (e.dot(&(m * &e)) / xs.dot(&(m * &xs))).sqrt()
}

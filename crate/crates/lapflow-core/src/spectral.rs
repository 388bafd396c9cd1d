//! SDDM validation, condition numbers, chain length and Loewner-order probes.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{StandardSplitting, WeightedGraph};
use crate::linalg::{dot, norm2, project_out_ones, DenseMatrix};
use crate::reference::DirectSolver;
use crate::{Error, Result};

/// Multiplier inside the chain-length logarithm.
pub const CHAIN_CONSTANT: f64 = 4.0;

/// Longest chain the solvers accept; `2^d` must fit in a machine word.
pub const MAX_CHAIN_LENGTH: usize = 60;

const DOMINANCE_TOL: f64 = 1e-12;

/// Row-by-row structural report on a candidate SDDM matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SddmReport {
    pub symmetric: bool,
    /// Every off-diagonal entry of `M` is `≤ 0`.
    pub nonpositive_off_diagonal: bool,
    /// `D[i] − Σ_j |M[i][j]|` per row.
    pub row_slack: Vec<f64>,
    pub diagonally_dominant: bool,
    pub strictly_dominant_rows: Vec<usize>,
    pub support_connected: bool,
    /// Every connected component of the support holds a strictly dominant
    /// row, which together with dominance makes `M` positive definite.
    pub strictly_positive_definite: bool,
}

impl SddmReport {
    /// Symmetric, sign pattern correct and diagonally dominant.
    pub fn is_sdd(&self) -> bool {
        self.symmetric && self.nonpositive_off_diagonal && self.diagonally_dominant
    }

    pub fn is_sddm(&self) -> bool {
        self.is_sdd() && self.strictly_positive_definite
    }

    /// Singular Laplacian of a connected graph: every row tight.
    pub fn is_connected_laplacian(&self) -> bool {
        self.is_sdd() && self.support_connected && self.strictly_dominant_rows.is_empty()
    }
}

/// Validates a splitting. Symmetry and sign hold by construction of
/// [`StandardSplitting`]; dominance and definiteness are checked here.
pub fn validate_sddm(s: &StandardSplitting) -> SddmReport {
    validate_dense(&s.to_dense())
}

/// Validates an arbitrary dense square matrix.
pub fn validate_dense(m: &DenseMatrix) -> SddmReport {
    let n = m.rows();
    let mut symmetric = true;
    let mut nonpositive = true;
    let mut adjacency = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let a = m[(i, j)];
            if (a - m[(j, i)]).abs() > 1e-14 * a.abs().max(1.0) {
                symmetric = false;
            }
            if a > 0.0 {
                nonpositive = false;
            }
            if a != 0.0 {
                adjacency[i].push(j);
            }
        }
    }
    let row_slack: Vec<f64> = (0..n)
        .map(|i| m[(i, i)] - (0..n).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum::<f64>())
        .collect();
    let tol = |i: usize| DOMINANCE_TOL * m[(i, i)].abs().max(f64::MIN_POSITIVE);
    let diagonally_dominant = (0..n).all(|i| m[(i, i)] > 0.0 && row_slack[i] >= -tol(i));
    let strictly_dominant_rows: Vec<usize> = (0..n).filter(|&i| row_slack[i] > tol(i)).collect();

    let mut component = vec![usize::MAX; n];
    let mut anchored = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let c = anchored.len();
        anchored.push(false);
        let mut stack = vec![start];
        component[start] = c;
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if component[v] == usize::MAX {
                    component[v] = c;
                    stack.push(v);
                }
            }
        }
    }
    for &i in &strictly_dominant_rows {
        anchored[component[i]] = true;
    }
    SddmReport {
        symmetric,
        nonpositive_off_diagonal: nonpositive,
        row_slack,
        diagonally_dominant,
        strictly_dominant_rows,
        support_connected: anchored.len() <= 1,
        strictly_positive_definite: n > 0 && anchored.iter().all(|&a| a),
    }
}

/// `n³·W_max/W_min` for a Laplacian, `n⁴·W_max/W_min` once grounded.
pub fn condition_bound(g: &WeightedGraph, grounded: bool) -> f64 {
    let n = g.n() as f64;
    let (lo, hi) = g.weight_range();
    let p = if grounded { 4 } else { 3 };
    libm::pow(n, p as f64) * hi / lo
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionEstimate {
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub kappa: f64,
    pub iterations: usize,
}

/// Power iteration for `λ_max` and inverse power iteration (through a
/// Cholesky factorization) for `λ_min`. Laplacians are handled on the
/// complement of the ones vector, giving `λ_n / λ_2`.
pub fn estimate_condition(s: &StandardSplitting, tol: f64, max_iters: usize) -> Result<ConditionEstimate> {
    let report = validate_sddm(s);
    let singular = if report.is_sddm() {
        false
    } else if report.is_connected_laplacian() {
        true
    } else {
        return Err(Error::NotSddm);
    };
    let n = s.n();
    if n == 1 || (!singular && s.off().nnz() == 0) {
        let lo = s.diag().iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = s.diag().iter().cloned().fold(0.0, f64::max);
        return Ok(ConditionEstimate { lambda_max: hi, lambda_min: lo, kappa: hi / lo, iterations: 0 });
    }
    let solver = DirectSolver::new(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c61_7066);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
    if singular {
        project_out_ones(&mut start);
    }

    let (lambda_max, it_max) = rayleigh_iteration(&start, singular, tol, max_iters, |v| s.apply(v))
        .map_err(|last| Error::NoConvergence { iters: max_iters, lambda_max: last, lambda_min: f64::NAN })?;
    let (inv_min, it_min) = rayleigh_iteration(&start, singular, tol, max_iters, |v| solver.solve(v))
        .map_err(|last| Error::NoConvergence { iters: max_iters, lambda_max, lambda_min: 1.0 / last })?;
    let lambda_min = 1.0 / inv_min;
    Ok(ConditionEstimate {
        lambda_max,
        lambda_min,
        kappa: (lambda_max / lambda_min).max(1.0),
        iterations: it_max + it_min,
    })
}

/// Dominant Rayleigh quotient of `apply`; `Err` carries the last quotient.
fn rayleigh_iteration(
    start: &[f64],
    project: bool,
    tol: f64,
    max_iters: usize,
    mut apply: impl FnMut(&[f64]) -> Vec<f64>,
) -> core::result::Result<(f64, usize), f64> {
    let mut v = start.to_vec();
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut last = f64::NAN;
    for it in 1..=max_iters {
        let mut w = apply(&v);
        if project {
            project_out_ones(&mut w);
        }
        let rq = dot(&v, &w);
        let nw = norm2(&w);
        if nw == 0.0 {
            return Ok((0.0, it));
        }
        v = w.into_iter().map(|x| x / nw).collect();
        if (rq - last).abs() <= tol * rq.abs() {
            return Ok((rq, it));
        }
        last = rq;
    }
    Err(last)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaSource {
    AnalyticBound,
    Estimated,
}

/// Chain parameters for the inverse approximated chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    pub kappa: f64,
    pub kappa_source: KappaSource,
    pub d: usize,
    pub eps_d: f64,
}

/// `d = ⌈log₂(4κ)⌉`; `eps_d = ln(e⁴/(e⁴ − 1))` is the resulting budget.
pub fn chain_length(kappa: f64, source: KappaSource) -> Result<ChainSpec> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(Error::KappaBelowOne(kappa));
    }
    let target = CHAIN_CONSTANT * kappa;
    let mut d = 0usize;
    while libm::ldexp(1.0, d as i32) < target {
        d += 1;
    }
    if d > MAX_CHAIN_LENGTH {
        return Err(Error::InvalidParameter(alloc::format!(
            "condition number {kappa:e} needs a chain of length {d}"
        )));
    }
    let ec = libm::exp(CHAIN_CONSTANT);
    Ok(ChainSpec { kappa, kappa_source: source, d, eps_d: libm::log(ec / (ec - 1.0)) })
}

impl ChainSpec {
    /// Chain sized by the analytic bound of the graph behind the system.
    pub fn from_bound(g: &WeightedGraph, grounded: bool) -> Result<Self> {
        chain_length(condition_bound(g, grounded), KappaSource::AnalyticBound)
    }

    /// Chain sized by [`estimate_condition`] with tolerance `1e−9`.
    pub fn from_estimate(s: &StandardSplitting) -> Result<Self> {
        let est = estimate_condition(s, 1e-9, 200_000)?;
        chain_length(est.kappa, KappaSource::Estimated)
    }
}

/// A probe that broke the sandwich `e^{−α}·vᵀXv ≤ vᵀYv ≤ e^{α}·vᵀXv`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderViolation {
    pub probe: Vec<f64>,
    pub x_form: f64,
    pub y_form: f64,
    pub alpha: f64,
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vᵀYv = {:e} outside [{:e}, {:e}] (vᵀXv = {:e}, alpha = {})",
            self.y_form,
            libm::exp(-self.alpha) * self.x_form,
            libm::exp(self.alpha) * self.x_form,
            self.x_form,
            self.alpha
        )
    }
}

/// Samples `probes` vectors with entries uniform in `[−1, 1]` (projected off
/// the ones vector when `ones_complement` is set) and checks the sandwich on
/// each. A necessary condition for `X ≈_α Y`, not a proof.
pub fn approx_order_check(
    n: usize,
    mut x_apply: impl FnMut(&[f64]) -> Vec<f64>,
    mut y_apply: impl FnMut(&[f64]) -> Vec<f64>,
    alpha: f64,
    probes: usize,
    seed: u64,
    ones_complement: bool,
) -> core::result::Result<(), OrderViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (libm::exp(-alpha), libm::exp(alpha));
    for _ in 0..probes {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        if ones_complement {
            project_out_ones(&mut v);
        }
        let x_form = dot(&v, &x_apply(&v));
        let y_form = dot(&v, &y_apply(&v));
        if !(lo * x_form <= y_form && y_form <= hi * x_form) {
            return Err(OrderViolation { probe: v, x_form, y_form, alpha });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, ground, laplacian, GraphKind};
    use crate::linalg::CsrMatrix;

    fn grounded_path(n: usize) -> StandardSplitting {
        let g = generate(&GraphKind::Path { n }, 0).unwrap();
        ground(&laplacian(&g).unwrap(), n - 1).unwrap().0
    }

    #[test]
    fn validation_examples() {
        assert!(validate_sddm(&grounded_path(3)).is_sddm());

        let l = laplacian(&generate(&GraphKind::Path { n: 3 }, 0).unwrap()).unwrap();
        let r = validate_sddm(&l);
        assert!(r.is_sdd());
        assert!(!r.is_sddm());
        assert!(r.is_connected_laplacian());

        let bad = StandardSplitting::new(vec![1.0, 1.0], CsrMatrix::from_triplets(2, [(0, 1, 2.0), (1, 0, 2.0)]))
            .unwrap();
        let r = validate_sddm(&bad);
        assert!(!r.diagonally_dominant);
        assert!(!r.is_sddm());
    }

    #[test]
    fn asymmetric_dense_matrix_is_flagged() {
        let m = DenseMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => -0.5,
            (1, 0) => -0.25,
            _ => 1.0,
        });
        assert!(!validate_dense(&m).symmetric);
    }

    #[test]
    fn condition_bound_examples() {
        let p10 = generate(&GraphKind::Path { n: 10 }, 0).unwrap();
        assert_eq!(condition_bound(&p10, false), 1000.0);
        assert_eq!(condition_bound(&p10, true), 10000.0);
    }

    #[test]
    fn trivial_condition_estimates() {
        let id = StandardSplitting::new(vec![1.0; 5], CsrMatrix::zeros(5)).unwrap();
        assert_eq!(estimate_condition(&id, 1e-10, 100).unwrap().kappa, 1.0);
        assert_eq!(estimate_condition(&grounded_path(2), 1e-10, 100).unwrap().kappa, 1.0);
    }

    #[test]
    fn chain_length_examples() {
        let s = chain_length(1.0, KappaSource::AnalyticBound).unwrap();
        assert_eq!(s.d, 2);
        assert!(s.eps_d < libm::log(2.0) / 3.0);
        assert_eq!(chain_length(1000.0, KappaSource::AnalyticBound).unwrap().d, 12);
        assert!(matches!(chain_length(0.5, KappaSource::Estimated), Err(Error::KappaBelowOne(_))));
    }

    #[test]
    fn order_check_examples() {
        let id = |v: &[f64]| v.to_vec();
        assert!(approx_order_check(4, id, id, 0.1, 50, 1, false).is_ok());
        let alpha = 0.1;
        let scaled = |v: &[f64]| v.iter().map(|x| libm::exp(2.0 * alpha) * x).collect();
        assert!(approx_order_check(4, id, scaled, alpha, 50, 1, false).is_err());
    }
}

//! Centralized oracles: a dense direct solver and sequential versions of the
//! inverse-chain solvers that the distributed code is checked against.

use alloc::vec::Vec;

use crate::graph::{ground, Grounding, StandardSplitting};
use crate::linalg::{dot, project_out_ones, Cholesky};
use crate::spectral::{validate_sddm, ChainSpec};
use crate::{Error, Result};

/// Factor-once direct solver. SDDM inputs are factored as they are;
/// connected Laplacians are grounded at node 0 and solutions returned with
/// zero mean.
#[derive(Debug, Clone)]
pub struct DirectSolver {
    factor: Cholesky,
    grounding: Option<Grounding>,
}

impl DirectSolver {
    pub fn new(s: &StandardSplitting) -> Result<Self> {
        let report = validate_sddm(s);
        if report.is_sddm() {
            Ok(Self { factor: s.to_dense().cholesky()?, grounding: None })
        } else if report.is_connected_laplacian() {
            let (reduced, map) = ground(s, 0)?;
            Ok(Self { factor: reduced.to_dense().cholesky()?, grounding: Some(map) })
        } else {
            Err(Error::NotSddm)
        }
    }

    pub fn is_singular(&self) -> bool {
        self.grounding.is_some()
    }

    /// Solves `M x = b`. Laplacian systems need `b ⊥ 1`.
    pub fn try_solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        match self.grounding {
            None => Ok(self.factor.solve(b)),
            Some(map) => {
                let sum: f64 = b.iter().sum();
                let scale: f64 = b.iter().map(|x| x.abs()).sum();
                if sum.abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
                    return Err(Error::NotInOnesComplement(sum));
                }
                let mut x = map.lift(&self.factor.solve(&map.restrict(b)));
                project_out_ones(&mut x);
                Ok(x)
            }
        }
    }

    /// As [`try_solve`](Self::try_solve), projecting `b` onto `1⊥` first for
    /// singular systems.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        if self.is_singular() {
            let mut b = b.to_vec();
            project_out_ones(&mut b);
            self.try_solve(&b).expect("projected right-hand side")
        } else {
            self.factor.solve(b)
        }
    }
}

/// One-shot [`DirectSolver`].
pub fn direct_solve(s: &StandardSplitting, b: &[f64]) -> Result<Vec<f64>> {
    DirectSolver::new(s)?.try_solve(b)
}

/// `√(vᵀ M v)`.
pub fn m_norm(s: &StandardSplitting, v: &[f64]) -> f64 {
    libm::sqrt(dot(v, &s.apply(v)).max(0.0))
}

/// `‖x − x*‖_M / ‖x*‖_M`, or the absolute error when `x* = 0`.
pub fn relative_m_error(s: &StandardSplitting, x: &[f64], x_star: &[f64]) -> f64 {
    let diff: Vec<f64> = x.iter().zip(x_star).map(|(a, b)| a - b).collect();
    let denom = m_norm(s, x_star);
    let num = m_norm(s, &diff);
    if denom == 0.0 { num } else { num / denom }
}

/// Implicit chain `D_k = D₀`, `A_k = D₀(D₀⁻¹A₀)^{2^k}`, `k = 0..d`.
#[derive(Debug, Clone, Copy)]
pub struct InverseChainView<'a> {
    splitting: &'a StandardSplitting,
    d: usize,
}

impl<'a> InverseChainView<'a> {
    pub fn new(splitting: &'a StandardSplitting, d: usize) -> Self {
        Self { splitting, d }
    }

    pub fn from_spec(splitting: &'a StandardSplitting, spec: &ChainSpec) -> Self {
        Self::new(splitting, spec.d)
    }

    pub fn splitting(&self) -> &'a StandardSplitting {
        self.splitting
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `A₀ D₀⁻¹ x`.
    fn apply_ad_inv(&self, x: &[f64]) -> Vec<f64> {
        let scaled: Vec<f64> = x.iter().zip(self.splitting.diag()).map(|(v, d)| v / d).collect();
        self.splitting.off().mul_vec(&scaled)
    }

    /// `D₀⁻¹ A₀ x`.
    fn apply_d_inv_a(&self, x: &[f64]) -> Vec<f64> {
        let mut y = self.splitting.off().mul_vec(x);
        y.iter_mut().zip(self.splitting.diag()).for_each(|(v, d)| *v /= d);
        y
    }
}

/// Crude solve `x₀ = Z₀ b₀` through the chain. Powers are applied as
/// repeated sparse products; nothing is materialized.
pub fn parallel_rsolve(chain: &InverseChainView<'_>, b0: &[f64]) -> Vec<f64> {
    let diag = chain.splitting.diag();
    let d = chain.d;
    let mut b = Vec::with_capacity(d + 1);
    b.push(b0.to_vec());
    for i in 1..=d {
        let prev = &b[i - 1];
        let mut u = prev.clone();
        for _ in 0..1usize << (i - 1) {
            u = chain.apply_ad_inv(&u);
        }
        b.push(prev.iter().zip(&u).map(|(p, q)| p + q).collect());
    }
    let mut x: Vec<f64> = b[d].iter().zip(diag).map(|(v, di)| v / di).collect();
    for i in (0..d).rev() {
        let mut eta = x.clone();
        for _ in 0..1usize << i {
            eta = chain.apply_d_inv_a(&eta);
        }
        x = (0..x.len())
            .map(|k| 0.5 * (b[i][k] / diag[k] + x[k] + eta[k]))
            .collect();
    }
    x
}

/// Fixed Richardson count `q = ⌈ln(1/ε) / ln(1/(2^{1/3} − 1))⌉`, `ε ∈ (0, ½]`.
pub fn richardson_iterations(eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::EpsOutOfRange { eps, bound: 0.5 });
    }
    let rate = libm::log(1.0 / (libm::cbrt(2.0) - 1.0));
    Ok((libm::ceil(libm::log(1.0 / eps) / rate) as usize).max(1))
}

/// Preconditioned Richardson with [`parallel_rsolve`] as the preconditioner.
pub fn parallel_esolve(chain: &InverseChainView<'_>, b0: &[f64], eps: f64) -> Result<Vec<f64>> {
    parallel_esolve_observed(chain, b0, eps, |_, _| {})
}

/// [`parallel_esolve`] reporting every iterate as `(t, y_t)`.
pub fn parallel_esolve_observed(
    chain: &InverseChainView<'_>,
    b0: &[f64],
    eps: f64,
    mut observe: impl FnMut(usize, &[f64]),
) -> Result<Vec<f64>> {
    let q = richardson_iterations(eps)?;
    let chi = parallel_rsolve(chain, b0);
    let mut y = alloc::vec![0.0; b0.len()];
    for t in 1..=q {
        let u1 = chain.splitting.apply(&y);
        let u2 = parallel_rsolve(chain, &u1);
        for k in 0..y.len() {
            y[k] = y[k] - u2[k] + chi[k];
        }
        observe(t, &y);
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, laplacian, GraphKind};
    use crate::linalg::CsrMatrix;
    use alloc::vec;

    fn grounded_path(n: usize) -> StandardSplitting {
        let g = generate(&GraphKind::Path { n }, 0).unwrap();
        ground(&laplacian(&g).unwrap(), n - 1).unwrap().0
    }

    #[test]
    fn direct_solve_examples() {
        let two_i = StandardSplitting::new(vec![2.0, 2.0], CsrMatrix::zeros(2)).unwrap();
        let x = direct_solve(&two_i, &[4.0, 6.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-14 && (x[1] - 3.0).abs() < 1e-14, "{x:?}");

        // P3 grounded at node 2: [[1, −1], [−1, 2]] x = [1, 0] by elimination.
        let x = direct_solve(&grounded_path(3), &[1.0, 0.0]).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14, "{x:?}");

        let p2 = laplacian(&generate(&GraphKind::Path { n: 2 }, 0).unwrap()).unwrap();
        assert!(matches!(direct_solve(&p2, &[1.0, 1.0]), Err(Error::NotInOnesComplement(_))));
        let x = direct_solve(&p2, &[1.0, -1.0]).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-14 && (x[1] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn diagonal_chain_collapses() {
        let s = StandardSplitting::new(vec![2.0, 4.0, 8.0], CsrMatrix::zeros(3)).unwrap();
        for d in 0..5 {
            let x = parallel_rsolve(&InverseChainView::new(&s, d), &[2.0, 2.0, 2.0]);
            assert_eq!(x, vec![1.0, 0.5, 0.25]);
        }
        let x = parallel_esolve(&InverseChainView::new(&s, 3), &[2.0, 2.0, 2.0], 1e-6).unwrap();
        assert_eq!(x, vec![1.0, 0.5, 0.25]);
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let s = grounded_path(5);
        assert_eq!(parallel_rsolve(&InverseChainView::new(&s, 6), &[0.0; 4]), vec![0.0; 4]);
    }

    #[test]
    fn richardson_count_formula() {
        assert_eq!(richardson_iterations(0.5).unwrap(), 1);
        assert_eq!(richardson_iterations(0.05).unwrap(), 3);
        assert_eq!(richardson_iterations(1e-4).unwrap(), 7);
        assert!(richardson_iterations(0.6).is_err());
        assert!(richardson_iterations(0.0).is_err());
    }
}

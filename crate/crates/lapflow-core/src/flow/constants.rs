use super::FlowProblem;
use crate::{Error, Result};

/// Default flow box `[−x̄, x̄]` over which curvature bounds are taken.
pub const DEFAULT_FLOW_BOX: f64 = 5.0;

/// Constants of the three-phase convergence analysis.
///
/// Curvature bounds are relative to the flow box: costs with unbounded
/// curvature only satisfy the upper bound inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceConstants {
    pub gamma: f64,
    pub big_gamma: f64,
    pub delta: f64,
    /// Lipschitz constant of the dual Hessian in the Laplacian norm.
    pub b: f64,
    pub mu2: f64,
    pub mun: f64,
    pub eps: f64,
    pub flow_box: f64,
    pub alpha_star: f64,
    pub xi: f64,
    pub zeta: f64,
    pub eta0: f64,
    pub eta1: f64,
}

impl ConvergenceConstants {
    pub fn compute(problem: &FlowProblem, eps: f64, flow_box: f64) -> Result<Self> {
        let mut gamma = f64::INFINITY;
        let mut big_gamma: f64 = 0.0;
        let mut delta: f64 = 0.0;
        for cost in problem.costs() {
            let (lo, hi) = cost.curvature_bounds(flow_box);
            gamma = gamma.min(lo);
            big_gamma = big_gamma.max(hi);
            delta = delta.max(cost.delta());
        }
        let eig = problem.unweighted_laplacian().to_dense().symmetric_eigenvalues();
        let mu2 = eig[1];
        let mun = eig[eig.len() - 1];
        Self::from_parts(gamma, big_gamma, delta, mu2, mun, eps, flow_box)
    }

    pub fn from_parts(gamma: f64, big_gamma: f64, delta: f64, mu2: f64, mun: f64, eps: f64, flow_box: f64) -> Result<Self> {
        if !(gamma > 0.0 && big_gamma >= gamma && mu2 > 0.0 && mun >= mu2) {
            return Err(Error::InvalidParameter(alloc::format!(
                "need 0 < γ ≤ Γ and 0 < μ₂ ≤ μₙ, got γ={gamma}, Γ={big_gamma}, μ₂={mu2}, μₙ={mun}"
            )));
        }
        let alpha = alpha_star(gamma, big_gamma, mu2, mun, eps)?;
        let b = mun * delta / (gamma * libm::sqrt(mu2));
        let xi = libm::sqrt(1.0 - alpha + alpha * eps * (mun / mu2) * libm::sqrt(big_gamma / gamma));
        let zeta = b * (alpha * big_gamma * (1.0 + eps)) * (alpha * big_gamma * (1.0 + eps)) / (2.0 * mu2 * mu2);
        let (eta0, eta1) = if zeta > 0.0 {
            (xi * (1.0 - xi) / zeta, (1.0 - xi) / zeta)
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        Ok(Self { gamma, big_gamma, delta, b, mu2, mun, eps, flow_box, alpha_star: alpha, xi, zeta, eta0, eta1 })
    }

    /// Guaranteed dual decrease per strict-phase step.
    pub fn strict_decrement(&self) -> f64 {
        let e = self.eps;
        0.5 * libm::exp(-2.0 * e * e) / ((1.0 + e) * (1.0 + e))
            * cube(self.gamma)
            / (self.big_gamma * self.big_gamma)
            * (self.mu2 * self.mu2)
            / (cube(self.mun) * self.mun)
            * self.eta1
            * self.eta1
    }

    /// `1 − ε(μₙ/μ₂)√(Γ/γ)`.
    fn slack(&self) -> f64 {
        1.0 - self.eps * (self.mun / self.mu2) * libm::sqrt(self.big_gamma / self.gamma)
    }

    /// Per-step dual decrease used by the strict-phase iteration bound.
    pub fn strict_phase_rate(&self) -> f64 {
        let s = self.slack();
        1.0 / (2.0 * self.xi * self.xi * (1.0 + self.eps) * (1.0 + self.eps))
            * (self.gamma / (self.big_gamma * self.big_gamma))
            * (cube(self.mu2) / (self.mun * self.mun))
            * s
            * s
    }

    /// Radius of the terminal-phase neighbourhood in the Laplacian norm.
    pub fn terminal_radius(&self) -> f64 {
        2.0 * self.slack() * self.mun * libm::sqrt(self.mu2)
            / (libm::exp(-self.eps * self.eps) * self.gamma * self.xi)
    }
}

fn cube(x: f64) -> f64 {
    x * x * x
}

/// `e^{−ε²}/(1+ε)² · ((γ/Γ)(μ₂/μₙ))²`, clipped to `(0, 1]`.
pub fn alpha_star(gamma: f64, big_gamma: f64, mu2: f64, mun: f64, eps: f64) -> Result<f64> {
    let bound = (mu2 / mun) * libm::sqrt(gamma / big_gamma);
    if !(eps >= 0.0 && eps < bound) {
        return Err(Error::EpsTooLarge { eps, bound });
    }
    let ratio = (gamma / big_gamma) * (mu2 / mun);
    let a = libm::exp(-eps * eps) / ((1.0 + eps) * (1.0 + eps)) * ratio * ratio;
    Ok(a.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_star_examples() {
        assert_eq!(alpha_star(1.0, 1.0, 3.0, 3.0, 0.0).unwrap(), 1.0);
        assert!((alpha_star(1.0, 2.0, 1.0, 2.0, 0.0).unwrap() - 1.0 / 16.0).abs() < 1e-15);
        assert!(matches!(alpha_star(1.0, 2.0, 1.0, 2.0, 0.4), Err(Error::EpsTooLarge { .. })));
    }

    #[test]
    fn eta_ordering() {
        let c = ConvergenceConstants::from_parts(2.0, 2.0 * libm::cosh(1.0), 0.25, 1.0, 4.0, 1e-3, 1.0).unwrap();
        assert!(0.0 < c.eta0 && c.eta0 < c.eta1);
        assert!(c.xi > 0.0 && c.xi < 1.0);
    }

    #[test]
    fn quadratic_costs_have_unbounded_band() {
        let c = ConvergenceConstants::from_parts(1.0, 1.0, 0.0, 1.0, 3.0, 0.0, 5.0).unwrap();
        assert_eq!(c.b, 0.0);
        assert!(c.eta1.is_infinite());
    }
}

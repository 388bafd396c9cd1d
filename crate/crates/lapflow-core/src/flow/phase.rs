use alloc::vec::Vec;
use core::fmt;

use super::{ConvergenceConstants, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `‖g‖_𝓛 > η₁`.
    Strict,
    /// `η₀ ≤ ‖g‖_𝓛 ≤ η₁`.
    Quadratic,
    /// `‖g‖_𝓛 < η₀`.
    Terminal,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Strict => "strict",
            Phase::Quadratic => "quadratic",
            Phase::Terminal => "terminal",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn phase_of(grad_lnorm: f64, consts: &ConvergenceConstants) -> Phase {
    if grad_lnorm > consts.eta1 {
        Phase::Strict
    } else if grad_lnorm >= consts.eta0 {
        Phase::Quadratic
    } else {
        Phase::Terminal
    }
}

/// Observed phases next to the iteration bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseReport {
    pub labels: Vec<Phase>,
    pub strict_count: usize,
    pub quadratic_count: usize,
    pub terminal_count: usize,
    /// Bound on strict-phase iterations.
    pub n1_bound: f64,
    /// Bound on quadratic-phase iterations, when the trace enters the band.
    pub n2_bound: Option<f64>,
    pub terminal_radius: f64,
}

/// Labels every trace row. `q_star` is the optimal dual value, or the best
/// available estimate of it.
pub fn classify_phase(trace: &Trace, consts: &ConvergenceConstants, q_star: f64) -> PhaseReport {
    let labels: Vec<Phase> = trace.rows.iter().map(|r| phase_of(r.grad_lnorm, consts)).collect();
    let count = |p: Phase| labels.iter().filter(|l| **l == p).count();
    let q0 = trace.rows.first().map_or(q_star, |r| r.dual_value);
    let n1_bound = ((q0 - q_star) / consts.strict_phase_rate()).max(0.0);
    let n2_bound = trace
        .rows
        .iter()
        .zip(&labels)
        .find(|(_, l)| **l == Phase::Quadratic)
        .map(|(r, _)| libm::log2(libm::log2(consts.xi) / libm::log2(r.grad_lnorm / consts.eta1)));
    PhaseReport {
        strict_count: count(Phase::Strict),
        quadratic_count: count(Phase::Quadratic),
        terminal_count: count(Phase::Terminal),
        labels,
        n1_bound,
        n2_bound,
        terminal_radius: consts.terminal_radius(),
    }
}

/// Indices `k` inside the quadratic band with `‖g_{k+1}‖_𝓛 > ‖g_k‖²_𝓛/η₁`.
pub fn quadratic_phase_violations(trace: &Trace, consts: &ConvergenceConstants) -> Vec<usize> {
    trace
        .rows
        .windows(2)
        .filter(|w| phase_of(w[0].grad_lnorm, consts) == Phase::Quadratic)
        .filter(|w| w[1].grad_lnorm > w[0].grad_lnorm * w[0].grad_lnorm / consts.eta1)
        .map(|w| w[0].iter)
        .collect()
}

/// Indices `k` in the strict phase whose dual decrease falls short of the
/// guaranteed decrement.
pub fn strict_phase_violations(trace: &Trace, consts: &ConvergenceConstants) -> Vec<usize> {
    let required = consts.strict_decrement();
    trace
        .rows
        .windows(2)
        .filter(|w| phase_of(w[0].grad_lnorm, consts) == Phase::Strict)
        .filter(|w| w[1].dual_value - w[0].dual_value > -required)
        .map(|w| w[0].iter)
        .collect()
}

/// Number of maximal runs of equal labels.
pub fn block_count(labels: &[Phase]) -> usize {
    labels.windows(2).filter(|w| w[0] != w[1]).count() + usize::from(!labels.is_empty())
}

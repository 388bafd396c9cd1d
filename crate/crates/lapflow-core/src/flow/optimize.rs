use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{
    dual_value, laplacian_norm, neumann_direction, newton_direction, phase_of, primal_objective, ConvergenceConstants,
    DualState, FlowProblem, NewtonSettings, Phase, SolverMode,
};
use crate::linalg::dot;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    SddmNewton(NewtonSettings),
    ExactNewton,
    /// Gradient steps `λ ← λ − α g` with a fixed `α`.
    Subgradient { step: f64 },
    /// Newton-like steps along a truncated Neumann series with `terms` powers.
    AddNeumann { terms: usize },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::SddmNewton(_) => "sddm-newton",
            Method::ExactNewton => "exact-newton",
            Method::Subgradient { .. } => "subgradient",
            Method::AddNeumann { .. } => "add",
        }
    }
}

/// `γ/μₙ(𝓛)`, the reciprocal of the dual gradient's Lipschitz constant.
pub fn default_subgradient_step(problem: &FlowProblem) -> f64 {
    let eig = problem.unweighted_laplacian().to_dense().symmetric_eigenvalues();
    problem.gamma() / eig[eig.len() - 1]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepPolicy {
    Fixed(f64),
    AlphaStar,
    /// Armijo backtracking on the dual objective from a unit step.
    Backtracking,
}

const ARMIJO_C: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeConfig {
    pub step: StepPolicy,
    pub max_iters: usize,
    pub feasibility_threshold: f64,
    /// Needed by [`StepPolicy::AlphaStar`]; also enables phase labels.
    pub constants: Option<ConvergenceConstants>,
    pub initial_lambda: Option<Vec<f64>>,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            step: StepPolicy::Backtracking,
            max_iters: 100,
            feasibility_threshold: 1e-5,
            constants: None,
            initial_lambda: None,
        }
    }
}

/// One row per iterate; row 0 is the starting point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    /// Primal cost `Σ_e Φ_e(x_e(λ))`.
    pub objective: f64,
    pub dual_value: f64,
    /// `‖A x(λ) − b‖₂`.
    pub feasibility: f64,
    pub grad_lnorm: f64,
    pub step: f64,
    pub phase: Option<Phase>,
    /// `max_e |x_e(λ)|`.
    pub max_flow: f64,
    /// Messages spent producing this iterate.
    pub messages: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub method: String,
    pub rows: Vec<TraceRow>,
    pub converged: bool,
    pub lambda: Vec<f64>,
}

impl Trace {
    pub fn iterations(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// First iteration whose feasibility is at most `threshold`.
    pub fn iterations_to(&self, threshold: f64) -> Option<usize> {
        self.rows.iter().find(|r| r.feasibility <= threshold).map(|r| r.iter)
    }

    pub fn total_messages(&self) -> u64 {
        self.rows.iter().map(|r| r.messages).sum()
    }
}

/// A failed run with everything recorded before the failure.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowFailure {
    pub error: Error,
    pub trace: Trace,
}

impl fmt::Display for FlowFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} after {} iterations", self.error, self.trace.iterations())
    }
}

impl core::error::Error for FlowFailure {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        Some(&self.error)
    }
}

pub fn optimize(problem: &FlowProblem, method: &Method, config: &OptimizeConfig) -> core::result::Result<Trace, FlowFailure> {
    let mut trace = Trace { method: method.name().into(), rows: Vec::new(), converged: false, lambda: Vec::new() };
    match run(problem, method, config, &mut trace) {
        Ok(()) => Ok(trace),
        Err(error) => Err(FlowFailure { error, trace }),
    }
}

fn run(problem: &FlowProblem, method: &Method, config: &OptimizeConfig, trace: &mut Trace) -> Result<()> {
    let lambda0 = config.initial_lambda.clone().unwrap_or_else(|| vec![0.0; problem.n()]);
    if lambda0.len() != problem.n() {
        return Err(Error::Dimension { expected: problem.n(), got: lambda0.len() });
    }
    if config.step == StepPolicy::AlphaStar && config.constants.is_none() {
        return Err(Error::InvalidParameter("the alpha-star step needs convergence constants".into()));
    }
    let exchange = 2 * problem.edge_count() as u64;
    let mut state = DualState::at(problem, lambda0, 0)?;
    trace.lambda = state.lambda.clone();
    record(problem, config, &state, 0.0, 0, trace)?;
    if state.feasibility() <= config.feasibility_threshold {
        trace.converged = true;
        return Ok(());
    }
    for k in 0..config.max_iters {
        let (direction, messages) = match method {
            Method::SddmNewton(settings) => {
                let dir = newton_direction(&state, problem, settings)?;
                (dir.d, exchange + dir.messages)
            }
            Method::ExactNewton => {
                let settings = NewtonSettings { mode: SolverMode::ExactOracle, ..NewtonSettings::default() };
                (newton_direction(&state, problem, &settings)?.d, exchange)
            }
            Method::Subgradient { .. } => (state.g.iter().map(|v| -v).collect(), exchange),
            Method::AddNeumann { terms } => {
                (neumann_direction(&state, problem, *terms)?, exchange * (*terms as u64 + 1))
            }
        };
        let step = match (method, config.step) {
            (Method::Subgradient { step }, _) => *step,
            (_, StepPolicy::Fixed(a)) => a,
            (_, StepPolicy::AlphaStar) => config.constants.as_ref().map(|c| c.alpha_star).unwrap_or(1.0),
            (_, StepPolicy::Backtracking) => armijo(problem, &state, &direction, k)?,
        };
        let lambda: Vec<f64> = state.lambda.iter().zip(&direction).map(|(l, d)| l + step * d).collect();
        state = DualState::at(problem, lambda, k + 1)?;
        trace.lambda = state.lambda.clone();
        record(problem, config, &state, step, messages, trace)?;
        if state.feasibility() <= config.feasibility_threshold {
            trace.converged = true;
            return Ok(());
        }
    }
    log::debug!("{} stopped at {} iterations without reaching feasibility", method.name(), config.max_iters);
    Ok(())
}

fn record(
    problem: &FlowProblem,
    config: &OptimizeConfig,
    state: &DualState,
    step: f64,
    messages: u64,
    trace: &mut Trace,
) -> Result<()> {
    let grad_lnorm = laplacian_norm(problem, &state.g);
    let row = TraceRow {
        iter: state.k,
        objective: primal_objective(problem, &state.x_of_lambda),
        dual_value: dual_value(problem, &state.lambda),
        feasibility: state.feasibility(),
        grad_lnorm,
        step,
        phase: config.constants.as_ref().map(|c| phase_of(grad_lnorm, c)),
        max_flow: state.x_of_lambda.iter().fold(0.0, |m, x| m.max(x.abs())),
        messages,
    };
    trace.rows.push(row);
    if !(row.objective.is_finite() && row.dual_value.is_finite() && row.feasibility.is_finite()) {
        return Err(Error::Divergence(state.k));
    }
    Ok(())
}

/// Largest `2^{−j}` with `q(λ + t d) ≤ q(λ) + c·t·gᵀd`.
fn armijo(problem: &FlowProblem, state: &DualState, direction: &[f64], k: usize) -> Result<f64> {
    let slope = dot(&state.g, direction);
    if !(slope < 0.0) {
        return Err(Error::NotDescent(k));
    }
    let q0 = dual_value(problem, &state.lambda);
    // Rounding in q dominates once the predicted decrease is this small.
    let noise = 4.0 * f64::EPSILON * q0.abs().max(1.0);
    let mut t = 1.0;
    let mut trial = vec![0.0; direction.len()];
    for _ in 0..MAX_HALVINGS {
        trial.iter_mut().zip(&state.lambda).zip(direction).for_each(|((x, l), d)| *x = l + t * d);
        let q = dual_value(problem, &trial);
        if q.is_finite() && q <= q0 + ARMIJO_C * t * slope + noise {
            return Ok(t);
        }
        t *= 0.5;
    }
    Err(Error::NotDescent(k))
}

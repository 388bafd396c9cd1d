use alloc::vec;
use alloc::vec::Vec;

use super::{dual_hessian, DualState, FlowProblem};
use crate::distributed::{Communication, DistributedSolver};
use crate::graph::{ground, StandardSplitting};
use crate::linalg::project_out_ones;
use crate::reference::direct_solve;
use crate::spectral::{ChainSpec, KappaSource};
use crate::Result;

/// Which solver produces the Newton direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    ExactOracle,
    FullDistributed,
    RHopDistributed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    pub eps: f64,
    pub mode: SolverMode,
    pub kappa: KappaSource,
    pub ref_node: usize,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self { eps: 1e-4, mode: SolverMode::RHopDistributed(1), kappa: KappaSource::Estimated, ref_node: 0 }
    }
}

/// Approximate Newton direction with its communication cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    pub d: Vec<f64>,
    pub messages: u64,
    pub rounds: u64,
    /// Chain length used, `None` for the exact oracle.
    pub chain_length: Option<usize>,
}

/// Solves `H v = r` for `r ⊥ 1` by grounding `ref_node`, solving the SDDM
/// subsystem, reinserting zero and shifting to mean zero.
pub fn grounded_solve(h: &StandardSplitting, r: &[f64], settings: &NewtonSettings) -> Result<Direction> {
    let (reduced, map) = ground(h, settings.ref_node)?;
    let rhs = map.restrict(r);
    let (v, messages, rounds, chain_length) = match settings.mode {
        SolverMode::ExactOracle => (direct_solve(&reduced, &rhs)?, 0, 0, None),
        SolverMode::FullDistributed | SolverMode::RHopDistributed(_) => {
            let spec = match settings.kappa {
                KappaSource::AnalyticBound => ChainSpec::from_bound(&h.support_graph(), true)?,
                KappaSource::Estimated => ChainSpec::from_estimate(&reduced)?,
            };
            let comm = match settings.mode {
                SolverMode::RHopDistributed(r) => Communication::RHop(r),
                _ => Communication::Full,
            };
            let mut solver = DistributedSolver::new(&reduced, spec.d, comm)?;
            let v = solver.solve(&rhs, settings.eps)?;
            let t = solver.transcript();
            (v, t.messages_total, t.rounds, Some(spec.d))
        }
    };
    let mut d = map.lift(&v);
    project_out_ones(&mut d);
    Ok(Direction { d, messages, rounds, chain_length })
}

/// `d̃ ≈ −H(λ)⁺ g` at the given state.
pub fn newton_direction(state: &DualState, problem: &FlowProblem, settings: &NewtonSettings) -> Result<Direction> {
    if state.g.iter().all(|v| *v == 0.0) {
        return Ok(Direction { d: vec![0.0; problem.n()], messages: 0, rounds: 0, chain_length: None });
    }
    let h = dual_hessian(problem, &state.x_of_lambda)?;
    let neg_g: Vec<f64> = state.g.iter().map(|v| -v).collect();
    grounded_solve(&h, &neg_g, settings)
}

/// Truncated Neumann direction `−Σ_{i=0}^{N} (D⁻¹A)^i D⁻¹ g` on the Hessian
/// splitting.
pub fn neumann_direction(state: &DualState, problem: &FlowProblem, terms: usize) -> Result<Vec<f64>> {
    let h = dual_hessian(problem, &state.x_of_lambda)?;
    let diag = h.diag();
    let mut term: Vec<f64> = state.g.iter().zip(diag).map(|(g, d)| -g / d).collect();
    let mut sum = term.clone();
    for _ in 0..terms {
        term = h.off().mul_vec(&term);
        term.iter_mut().zip(diag).for_each(|(t, d)| *t /= d);
        sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
    }
    Ok(sum)
}

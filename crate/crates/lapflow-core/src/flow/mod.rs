//! Minimum-cost network flow by descent on the dual.
//!
//! The dual Hessian at any `λ` is a weighted Laplacian of the flow graph, so
//! Newton directions reduce to Laplacian solves that the distributed SDDM
//! solvers handle after grounding one node.

mod constants;
mod cost;
mod newton;
mod optimize;
mod phase;
mod problem;

pub use constants::{alpha_star, ConvergenceConstants, DEFAULT_FLOW_BOX};
pub use cost::EdgeCost;
pub use newton::{grounded_solve, neumann_direction, newton_direction, Direction, NewtonSettings, SolverMode};
pub use optimize::{
    default_subgradient_step, optimize, FlowFailure, Method, OptimizeConfig, StepPolicy, Trace, TraceRow,
};
pub use phase::{
    block_count, classify_phase, phase_of, quadratic_phase_violations, strict_phase_violations, Phase, PhaseReport,
};
pub use problem::{
    dual_gradient, dual_hessian, dual_value, laplacian_norm, potential_differences, primal_objective,
    primal_recovery, DualState, FlowProblem,
};

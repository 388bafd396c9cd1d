use alloc::string::String;

use thiserror::Error;

use crate::netsim::SimError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not positive definite (pivot {pivot} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("right-hand side is not orthogonal to the ones vector (sum {0:e})")]
    NotInOnesComplement(f64),
    #[error("matrix is neither SDDM nor a connected Laplacian")]
    NotSddm,
    #[error(
        "condition estimate did not converge in {iters} iterations \
         (last lambda_max {lambda_max:e}, last lambda_min {lambda_min:e})"
    )]
    NoConvergence {
        iters: usize,
        lambda_max: f64,
        lambda_min: f64,
    },
    #[error("condition number must be at least 1, got {0}")]
    KappaBelowOne(f64),
    #[error("hop radius {0} is not a power of two")]
    RadiusNotPowerOfTwo(usize),
    #[error("eps {eps} outside the admissible interval (0, {bound}]")]
    EpsOutOfRange { eps: f64, bound: f64 },
    #[error(
        "eps {eps} is not below {bound:e}, the largest value for which the step-size \
         theory applies; use a smaller eps"
    )]
    EpsTooLarge { eps: f64, bound: f64 },
    #[error("inverse derivative undefined on edge {edge} at {arg}")]
    CostDomain { edge: usize, arg: f64 },
    #[error("hessian weight underflow on edge {edge} (curvature {curvature:e})")]
    WeightUnderflow { edge: usize, curvature: f64 },
    #[error("non-finite objective at iteration {0}")]
    Divergence(usize),
    #[error("search direction is not a descent direction at iteration {0}")]
    NotDescent(usize),
    #[error(transparent)]
    Sim(#[from] SimError),
}

pub type Result<T> = core::result::Result<T, Error>;

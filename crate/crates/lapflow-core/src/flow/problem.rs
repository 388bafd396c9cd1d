use alloc::vec;
use alloc::vec::Vec;

use super::EdgeCost;
use crate::graph::{diameter_endpoints, DirectedFlowGraph, StandardSplitting, WeightedGraph};
use crate::linalg::{dot, CsrMatrix};
use crate::{Error, Result};

/// `min Σ_e Φ_e(x_e)` subject to `A x = b` on a directed graph.
#[derive(Debug, Clone)]
pub struct FlowProblem {
    graph: DirectedFlowGraph,
    b: Vec<f64>,
    costs: Vec<EdgeCost>,
    unweighted: StandardSplitting,
}

impl FlowProblem {
    pub fn new(graph: DirectedFlowGraph, b: Vec<f64>, costs: Vec<EdgeCost>) -> Result<Self> {
        if b.len() != graph.n() {
            return Err(Error::Dimension { expected: graph.n(), got: b.len() });
        }
        if costs.len() != graph.edge_count() {
            return Err(Error::Dimension { expected: graph.edge_count(), got: costs.len() });
        }
        let sum: f64 = b.iter().sum();
        let scale: f64 = b.iter().map(|v| v.abs()).sum();
        if sum.abs() > 1e-10 * scale.max(1.0) {
            return Err(Error::NotInOnesComplement(sum));
        }
        let unweighted = unit_laplacian(&graph)?;
        Ok(Self { graph, b, costs, unweighted })
    }

    pub fn uniform(graph: DirectedFlowGraph, b: Vec<f64>, cost: EdgeCost) -> Result<Self> {
        let m = graph.edge_count();
        Self::new(graph, b, vec![cost; m])
    }

    /// Unit source and sink placed a diameter apart, scaled by `magnitude`.
    pub fn diametral(graph: DirectedFlowGraph, magnitude: f64, cost: EdgeCost) -> Result<Self> {
        let (s, t) = diameter_endpoints(&undirected(&graph)?)?;
        let mut b = vec![0.0; graph.n()];
        b[s] = magnitude;
        b[t] = -magnitude;
        Self::uniform(graph, b, cost)
    }

    pub fn graph(&self) -> &DirectedFlowGraph {
        &self.graph
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn costs(&self) -> &[EdgeCost] {
        &self.costs
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Unweighted Laplacian `A Aᵀ` of the underlying graph.
    pub fn unweighted_laplacian(&self) -> &StandardSplitting {
        &self.unweighted
    }

    /// Smallest curvature lower bound across edges.
    pub fn gamma(&self) -> f64 {
        self.costs.iter().map(|c| c.curvature_bounds(0.0).0).fold(f64::INFINITY, f64::min)
    }
}

/// Undirected support with unit weights. Antiparallel arcs merge.
fn undirected(graph: &DirectedFlowGraph) -> Result<WeightedGraph> {
    let mut pairs: Vec<(usize, usize)> =
        graph.arcs().iter().map(|&(t, h)| if t < h { (t, h) } else { (h, t) }).collect();
    pairs.sort_unstable();
    pairs.dedup();
    WeightedGraph::new(graph.n(), pairs.into_iter().map(|(i, j)| (i, j, 1.0)).collect())
}

/// `A Aᵀ`, counting parallel arcs with multiplicity.
fn unit_laplacian(graph: &DirectedFlowGraph) -> Result<StandardSplitting> {
    let ones = vec![1.0; graph.edge_count()];
    let s = arc_laplacian(graph, &ones)?;
    if !undirected(graph)?.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(s)
}

/// `A diag(w) Aᵀ` as a standard splitting.
fn arc_laplacian(graph: &DirectedFlowGraph, weights: &[f64]) -> Result<StandardSplitting> {
    let n = graph.n();
    let mut triplets = Vec::with_capacity(2 * weights.len());
    for (&(t, h), &w) in graph.arcs().iter().zip(weights) {
        triplets.push((t, h, w));
        triplets.push((h, t, w));
    }
    if n == 1 {
        return Err(Error::InvalidGraph("flow problems need at least two nodes".into()));
    }
    let off = CsrMatrix::from_triplets(n, triplets);
    let diag = (0..n).map(|k| off.row_sum(k)).collect();
    StandardSplitting::new(diag, off)
}

/// `λ_tail − λ_head` per arc.
pub fn potential_differences(problem: &FlowProblem, lambda: &[f64]) -> Vec<f64> {
    problem.graph.arcs().iter().map(|&(t, h)| lambda[t] - lambda[h]).collect()
}

/// Flows minimizing the Lagrangian at `λ`; each uses only its endpoints' duals.
pub fn primal_recovery(problem: &FlowProblem, lambda: &[f64]) -> Result<Vec<f64>> {
    if lambda.len() != problem.n() {
        return Err(Error::Dimension { expected: problem.n(), got: lambda.len() });
    }
    potential_differences(problem, lambda)
        .into_iter()
        .zip(&problem.costs)
        .enumerate()
        .map(|(e, (y, cost))| {
            let x = cost.inverse_derivative(y);
            if x.is_finite() { Ok(x) } else { Err(Error::CostDomain { edge: e, arg: y }) }
        })
        .collect()
}

/// `A x − b`.
pub fn dual_gradient(problem: &FlowProblem, x: &[f64]) -> Vec<f64> {
    let mut g = problem.graph.apply_incidence(x);
    g.iter_mut().zip(&problem.b).for_each(|(gi, bi)| *gi -= bi);
    g
}

/// `A diag(1/Φ̈(x)) Aᵀ`.
pub fn dual_hessian(problem: &FlowProblem, x: &[f64]) -> Result<StandardSplitting> {
    let weights: Vec<f64> = x
        .iter()
        .zip(&problem.costs)
        .enumerate()
        .map(|(e, (&xe, cost))| {
            let curvature = cost.curvature(xe);
            let w = 1.0 / curvature;
            if w.is_finite() && w > 0.0 { Ok(w) } else { Err(Error::WeightUnderflow { edge: e, curvature }) }
        })
        .collect::<Result<_>>()?;
    arc_laplacian(&problem.graph, &weights)
}

/// Dual objective `Σ_e Φ*_e(λ_t − λ_h) − λᵀb`, minimized over `λ`.
pub fn dual_value(problem: &FlowProblem, lambda: &[f64]) -> f64 {
    let conj: f64 = potential_differences(problem, lambda)
        .iter()
        .zip(&problem.costs)
        .map(|(&y, c)| c.conjugate(y))
        .sum();
    conj - dot(lambda, &problem.b)
}

pub fn primal_objective(problem: &FlowProblem, x: &[f64]) -> f64 {
    x.iter().zip(&problem.costs).map(|(&xe, c)| c.value(xe)).sum()
}

/// `√(vᵀ𝓛v)` with `𝓛` the unweighted Laplacian.
pub fn laplacian_norm(problem: &FlowProblem, v: &[f64]) -> f64 {
    libm::sqrt(dot(v, &problem.unweighted.apply(v)).max(0.0))
}

/// Dual iterate with its primal flows and gradient.
#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    pub lambda: Vec<f64>,
    pub x_of_lambda: Vec<f64>,
    pub g: Vec<f64>,
    pub k: usize,
}

impl DualState {
    pub fn at(problem: &FlowProblem, lambda: Vec<f64>, k: usize) -> Result<Self> {
        let x_of_lambda = primal_recovery(problem, &lambda)?;
        let g = dual_gradient(problem, &x_of_lambda);
        Ok(Self { lambda, x_of_lambda, g, k })
    }

    pub fn feasibility(&self) -> f64 {
        crate::linalg::norm2(&self.g)
    }
}

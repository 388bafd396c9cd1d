//! Weighted graphs, flow graphs and the standard splitting `M = D − A`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{CsrMatrix, DenseMatrix};
use crate::{Error, Result};

mod generate;

pub use generate::{generate, generate_flow, with_random_weights, GraphKind};

/// Marker returned by [`hop_distances`] for nodes in another component.
pub const UNREACHABLE: usize = usize::MAX;

/// Undirected graph with strictly positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Rejects self-loops, repeated pairs, out-of-range ids and
    /// non-positive weights. Connectivity is not required here.
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j, w) in &edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) outside 0..{n}")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) has weight {w}")));
            }
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for (i, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_by_key(|&(j, _)| j);
            if nbrs.windows(2).any(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidGraph(format!("repeated edge at node {i}")));
            }
        }
        Ok(Self { n, edges, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    /// Neighbors of `k` sorted by id, with edge weights.
    pub fn neighbors(&self, k: usize) -> &[(usize, f64)] {
        &self.adjacency[k]
    }

    pub fn degree(&self, k: usize) -> usize {
        self.adjacency[k].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `(W_min, W_max)`; `(1, 1)` for an edgeless graph.
    pub fn weight_range(&self) -> (f64, f64) {
        if self.edges.is_empty() {
            return (1.0, 1.0);
        }
        self.edges.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(_, _, w)| {
            (lo.min(w), hi.max(w))
        })
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || hop_distances(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest hop distance between two nodes; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for k in 0..self.n {
            for d in hop_distances(self, k) {
                if d == UNREACHABLE {
                    return None;
                }
                diam = diam.max(d);
            }
        }
        Some(diam)
    }

    /// Replaces every weight through `f(i, j, w)`.
    pub fn map_weights(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        Self::new(self.n, self.edges.iter().map(|&(i, j, w)| (i, j, f(i, j, w))).collect())
    }

    /// Orients every edge from the lower to the higher node id.
    pub fn orient(&self) -> DirectedFlowGraph {
        DirectedFlowGraph {
            n: self.n,
            arcs: self.edges.iter().map(|&(i, j, _)| (i.min(j), i.max(j))).collect(),
        }
    }
}

/// Breadth-first hop counts from `k`; [`UNREACHABLE`] marks other components.
pub fn hop_distances(g: &WeightedGraph, k: usize) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[k] = 0;
    let mut queue = VecDeque::from([k]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Endpoints of a longest shortest path, the smallest such pair in id order.
pub fn diameter_endpoints(g: &WeightedGraph) -> Result<(usize, usize)> {
    let mut best = (0, 0, 0);
    for s in 0..g.n() {
        for (t, d) in hop_distances(g, s).into_iter().enumerate() {
            if d == UNREACHABLE {
                return Err(Error::Disconnected);
            }
            if d > best.2 {
                best = (s, t, d);
            }
        }
    }
    Ok((best.0, best.1))
}

/// Directed graph for flow problems; arc `e` leaves `arcs[e].0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedFlowGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DirectedFlowGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(t, h) in &arcs {
            if t >= n || h >= n || t == h {
                return Err(Error::InvalidGraph(format!("arc ({t}, {h}) invalid for n = {n}")));
            }
        }
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Node-arc incidence: `+1` at the tail, `−1` at the head.
    pub fn incidence(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n, self.arcs.len());
        for (e, &(t, h)) in self.arcs.iter().enumerate() {
            a[(t, e)] = 1.0;
            a[(h, e)] = -1.0;
        }
        a
    }

    /// `A x` without forming the incidence matrix.
    pub fn apply_incidence(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (&(t, h), &xe) in self.arcs.iter().zip(x) {
            out[t] += xe;
            out[h] -= xe;
        }
        out
    }

    /// Undirected support with unit weights. Antiparallel arcs collapse.
    pub fn underlying(&self) -> Result<WeightedGraph> {
        let mut pairs: Vec<(usize, usize)> =
            self.arcs.iter().map(|&(t, h)| (t.min(h), t.max(h))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        WeightedGraph::new(self.n, pairs.into_iter().map(|(i, j)| (i, j, 1.0)).collect())
    }
}

/// `M = D − A` with `D` a positive diagonal and `A` symmetric, nonnegative,
/// zero on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardSplitting {
    diag: Vec<f64>,
    off: CsrMatrix,
}

impl StandardSplitting {
    pub fn new(diag: Vec<f64>, off: CsrMatrix) -> Result<Self> {
        if off.n() != diag.len() {
            return Err(Error::Dimension { expected: diag.len(), got: off.n() });
        }
        if let Some(i) = diag.iter().position(|&d| !(d > 0.0) || !d.is_finite()) {
            return Err(Error::InvalidParameter(format!("D[{i}] = {} is not positive", diag[i])));
        }
        for (i, j, a) in off.triplets() {
            if i == j || a < 0.0 || !a.is_finite() {
                return Err(Error::InvalidParameter(format!("A[{i}][{j}] = {a} not allowed")));
            }
        }
        if !off.is_symmetric(1e-14) {
            return Err(Error::InvalidParameter("A is not symmetric".into()));
        }
        Ok(Self { diag, off })
    }

    /// Splits a dense symmetric matrix into diagonal and negated off-diagonal
    /// parts. Positive off-diagonal entries are rejected.
    pub fn from_dense(m: &DenseMatrix) -> Result<Self> {
        let n = m.rows();
        let diag = (0..n).map(|i| m[(i, i)]).collect();
        let off = CsrMatrix::from_triplets(
            n,
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j, -m[(i, j)]))),
        );
        Self::new(diag, off)
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &CsrMatrix {
        &self.off
    }

    /// `M x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = self.off.mul_vec(x);
        for ((yi, &d), &xi) in y.iter_mut().zip(&self.diag).zip(x) {
            *yi = d * xi - *yi;
        }
        y
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = self.off.to_dense();
        for i in 0..self.n() {
            for j in 0..self.n() {
                m[(i, j)] = -m[(i, j)];
            }
            m[(i, i)] = self.diag[i];
        }
        m
    }

    /// `D[i] − Σ_j A[i][j]` for every row.
    pub fn dominance_slack(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.diag[i] - self.off.row_sum(i)).collect()
    }

    /// Graph on the nonzero pattern of `A`, weighted by `A`. This is the
    /// communication graph the distributed solvers run on.
    pub fn support_graph(&self) -> WeightedGraph {
        let edges = self.off.triplets().filter(|&(i, j, _)| i < j).collect();
        WeightedGraph::new(self.n(), edges).expect("A is symmetric with positive entries")
    }
}

/// Weighted Laplacian of a connected graph as `D − W`.
pub fn laplacian(g: &WeightedGraph) -> Result<StandardSplitting> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() == 1 {
        return Err(Error::InvalidGraph("a single node has no Laplacian splitting".into()));
    }
    let off = CsrMatrix::from_triplets(
        g.n(),
        g.edges().iter().flat_map(|&(i, j, w)| [(i, j, w), (j, i, w)]),
    );
    // Summing in the order `apply` uses makes `M·1 = 0` hold exactly.
    let diag = (0..g.n()).map(|k| off.row_sum(k)).collect();
    StandardSplitting::new(diag, off)
}

/// Index bookkeeping for a grounded system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grounding {
    pub ref_node: usize,
    pub n: usize,
}

impl Grounding {
    /// Drops the reference component.
    pub fn restrict(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .enumerate()
            .filter(|&(i, _)| i != self.ref_node)
            .map(|(_, &x)| x)
            .collect()
    }

    /// Re-inserts `0` at the reference node.
    pub fn lift(&self, v: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n);
        out.extend_from_slice(&v[..self.ref_node]);
        out.push(0.0);
        out.extend_from_slice(&v[self.ref_node..]);
        out
    }

    /// Index in the grounded system of original node `i`.
    pub fn reduced_index(&self, i: usize) -> Option<usize> {
        match i.cmp(&self.ref_node) {
            core::cmp::Ordering::Less => Some(i),
            core::cmp::Ordering::Equal => None,
            core::cmp::Ordering::Greater => Some(i - 1),
        }
    }
}

/// Deletes row and column `ref_node`. `D` is kept, so rows adjacent to the
/// reference node become strictly dominant.
pub fn ground(s: &StandardSplitting, ref_node: usize) -> Result<(StandardSplitting, Grounding)> {
    let n = s.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cannot ground a system of size {n}")));
    }
    if ref_node >= n {
        return Err(Error::InvalidParameter(format!("reference node {ref_node} outside 0..{n}")));
    }
    let map = Grounding { ref_node, n };
    let diag = map.restrict(s.diag());
    let off = CsrMatrix::from_triplets(
        n - 1,
        s.off().triplets().filter_map(|(i, j, a)| Some((map.reduced_index(i)?, map.reduced_index(j)?, a))),
    );
    Ok((StandardSplitting::new(diag, off)?, map))
}

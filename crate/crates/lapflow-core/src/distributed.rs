//! Node-local inverse-chain solvers running on [`netsim`](crate::netsim).
//!
//! Two communication regimes share one driver:
//!
//! * [`Communication::Full`]: every node builds its rows of
//!   `(A₀D₀⁻¹)^{2^m}` and `(D₀⁻¹A₀)^{2^m}` by repeated squaring, fetching the
//!   half-power rows of all nodes within `2^m` hops.
//! * [`Communication::RHop`]: every node builds its rows of `(A₀D₀⁻¹)^R` and
//!   `(D₀⁻¹A₀)^R` in `R − 1` one-hop rounds, then applies powers `e ≤ R` as
//!   `e` one-hop products and larger powers as `e/R` products with the
//!   cached `R`-th power.
//!
//! Columns are never requested: the symmetry of `D⁻¹(A D⁻¹)^p` gives
//! `[(AD⁻¹)^p]_{rj} = (D_r/D_j)·[(AD⁻¹)^p]_{jr}` and
//! `[(D⁻¹A)^p]_{rj} = (D_j/D_r)·[(D⁻¹A)^p]_{jr}`, so rows suffice.
//!
//! Row powers depend only on `M`, so they are built once per solver and
//! reused by every subsequent solve.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::StandardSplitting;
use crate::netsim::{Field, Network, NodeCtx, SimConfig, SimError, SimTranscript};
use crate::reference::richardson_iterations;
use crate::spectral::MAX_CHAIN_LENGTH;
use crate::{Error, Result};

/// Sparse row as `(column, value)` sorted by column.
pub type SparseRow = Vec<(usize, f64)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Communication {
    Full,
    /// Hop radius, a power of two.
    RHop(usize),
}

/// Rows of both power families for one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct RowPower {
    pub power: usize,
    /// Row `k` of `(A₀D₀⁻¹)^power`.
    pub ad_inv: SparseRow,
    /// Row `k` of `(D₀⁻¹A₀)^power`.
    pub d_inv_a: SparseRow,
}

/// Everything node `k` holds.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSolverState {
    pub k: usize,
    pub diag: f64,
    /// Off-diagonal part of row `k` of `M₀`, as the nonnegative `A₀[k][j]`.
    pub row_m: SparseRow,
    pub row_powers: Vec<RowPower>,
    /// `[b_i]_k` for `i = 0..=d` from the latest crude solve.
    pub b_components: Vec<f64>,
    /// `[x_i]_k` for `i = d..=0` from the latest crude solve.
    pub x_components: Vec<f64>,
}

impl NodeSolverState {
    pub fn row_power(&self, power: usize) -> Option<&RowPower> {
        self.row_powers.iter().find(|r| r.power == power)
    }
}

#[derive(Debug, Clone, Copy)]
enum Family {
    AdInv,
    DInvA,
}

impl Family {
    fn index(self) -> usize {
        match self {
            Family::AdInv => 0,
            Family::DInvA => 1,
        }
    }
}

/// Row coefficients laid out in gather order so products need no lookups.
#[derive(Debug, Clone)]
struct AlignedRow {
    power: usize,
    own: [f64; 2],
    coeffs: [Vec<f64>; 2],
}

/// Result of a one-shot distributed solve.
#[derive(Debug, Clone, PartialEq)]
pub struct Solved {
    pub x: Vec<f64>,
    pub transcript: SimTranscript,
}

/// Row packet exchanged while building powers.
#[derive(Debug, Clone)]
struct Packet {
    node: usize,
    diag: f64,
    ad_inv: SparseRow,
    d_inv_a: SparseRow,
}

/// A network of nodes that jointly solve `M₀ x = b`.
#[derive(Debug, Clone)]
pub struct DistributedSolver {
    net: Network,
    nodes: Vec<NodeSolverState>,
    d: usize,
    comm: Communication,
    prepared: bool,
    aligned: Vec<Vec<AlignedRow>>,
}

impl DistributedSolver {
    pub fn new(s: &StandardSplitting, d: usize, comm: Communication) -> Result<Self> {
        if d > MAX_CHAIN_LENGTH {
            return Err(Error::InvalidParameter(alloc::format!("chain length {d} too large")));
        }
        let graph = s.support_graph();
        let config = match comm {
            Communication::Full => SimConfig::full_communication(graph),
            Communication::RHop(r) => {
                if !r.is_power_of_two() {
                    return Err(Error::RadiusNotPowerOfTwo(r));
                }
                SimConfig::restricted(graph, r)
            }
        };
        let nodes = (0..s.n())
            .map(|k| NodeSolverState {
                k,
                diag: s.diag()[k],
                row_m: s.off().row_iter(k).collect(),
                row_powers: Vec::new(),
                b_components: Vec::new(),
                x_components: Vec::new(),
            })
            .collect();
        Ok(Self { net: Network::new(config)?, nodes, d, comm, prepared: false, aligned: Vec::new() })
    }

    pub fn full(s: &StandardSplitting, d: usize) -> Result<Self> {
        Self::new(s, d, Communication::Full)
    }

    pub fn rhop(s: &StandardSplitting, d: usize, radius: usize) -> Result<Self> {
        Self::new(s, d, Communication::RHop(radius))
    }

    pub fn nodes(&self) -> &[NodeSolverState] {
        &self.nodes
    }

    pub fn transcript(&self) -> &SimTranscript {
        self.net.transcript()
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn chain_length(&self) -> usize {
        self.d
    }

    pub fn communication(&self) -> Communication {
        self.comm
    }

    /// Builds the row powers if that has not happened yet.
    pub fn prepare(&mut self) -> Result<()> {
        if self.prepared {
            return Ok(());
        }
        self.exchange_diagonals()?;
        match self.comm {
            Communication::Full => self.square_rows()?,
            Communication::RHop(r) => self.extend_rows(r)?,
        }
        self.align_rows();
        self.prepared = true;
        Ok(())
    }

    /// Crude solve `x₀ = Z′₀ b₀`.
    pub fn crude_solve(&mut self, b0: &[f64]) -> Result<Vec<f64>> {
        if b0.len() != self.nodes.len() {
            return Err(Error::Dimension { expected: self.nodes.len(), got: b0.len() });
        }
        self.prepare()?;
        let d = self.d;
        for (node, &b) in self.nodes.iter_mut().zip(b0) {
            node.b_components.clear();
            node.b_components.push(b);
            node.x_components.clear();
        }
        let mut current = self.net.publish(b0.to_vec());
        for i in 1..=d {
            let u = self.apply_power(&current, Family::AdInv, 1usize << (i - 1))?;
            let next: Vec<f64> = self
                .nodes
                .iter_mut()
                .zip(u.values())
                .map(|(node, &uk)| {
                    let b = node.b_components[i - 1] + uk;
                    node.b_components.push(b);
                    b
                })
                .collect();
            current = self.net.publish(next);
        }
        let x_d: Vec<f64> = self
            .nodes
            .iter_mut()
            .map(|node| {
                let x = node.b_components[d] / node.diag;
                node.x_components.push(x);
                x
            })
            .collect();
        let mut x_field = self.net.publish(x_d);
        for i in (0..d).rev() {
            let eta = self.apply_power(&x_field, Family::DInvA, 1usize << i)?;
            let x_next: Vec<f64> = self
                .nodes
                .iter_mut()
                .zip(x_field.values())
                .zip(eta.values())
                .map(|((node, &x_prev), &eta_k)| {
                    let x = 0.5 * (node.b_components[i] / node.diag + x_prev + eta_k);
                    node.x_components.push(x);
                    x
                })
                .collect();
            x_field = self.net.publish(x_next);
        }
        Ok(x_field.into_values())
    }

    /// ε-approximate solve by Richardson iteration around the crude solver.
    pub fn solve(&mut self, b0: &[f64], eps: f64) -> Result<Vec<f64>> {
        self.solve_observed(b0, eps, |_, _| {})
    }

    /// [`solve`](Self::solve) reporting each iterate as `(t, y_t)`.
    pub fn solve_observed(
        &mut self,
        b0: &[f64],
        eps: f64,
        mut observe: impl FnMut(usize, &[f64]),
    ) -> Result<Vec<f64>> {
        let q = richardson_iterations(eps)?;
        let chi = self.crude_solve(b0)?;
        let mut y = vec![0.0; b0.len()];
        for t in 1..=q {
            let y_field = self.net.publish(y.clone());
            let nodes = &self.nodes;
            let u1 = self.net.run_round(|ctx| {
                let node = &nodes[ctx.node()];
                let mut acc = node.diag * ctx.own(&y_field)?;
                for (j, &yj) in ctx.gather(&y_field, 1)? {
                    acc -= lookup(&node.row_m, j) * yj;
                }
                Ok(acc)
            })?;
            let u2 = self.crude_solve(u1.values())?;
            for k in 0..y.len() {
                y[k] = y[k] - u2[k] + chi[k];
            }
            observe(t, &y);
        }
        Ok(y)
    }

    /// Multiplies the published vector by the `e`-th power of a family.
    fn apply_power(&mut self, input: &Field<f64>, family: Family, e: usize) -> Result<Field<f64>> {
        match self.comm {
            Communication::Full => self.multiply_round(input, family, e, e),
            Communication::RHop(r) if e <= r => {
                let mut out = self.multiply_round(input, family, 1, 1)?;
                for _ in 1..e {
                    out = self.multiply_round(&out, family, 1, 1)?;
                }
                Ok(out)
            }
            Communication::RHop(r) => {
                let mut out = self.multiply_round(input, family, r, r)?;
                for _ in 1..e / r {
                    out = self.multiply_round(&out, family, r, r)?;
                }
                Ok(out)
            }
        }
    }

    /// One round: node `k` gathers within `radius` hops and returns its row
    /// of the given power times the gathered vector.
    fn multiply_round(&mut self, input: &Field<f64>, family: Family, power: usize, radius: usize) -> Result<Field<f64>> {
        let aligned = &self.aligned;
        let f = family.index();
        Ok(self.net.run_round(|ctx| {
            let row = aligned[ctx.node()].iter().find(|a| a.power == power).expect("row power prepared");
            let mut acc = row.own[f] * ctx.own(input)?;
            for ((_, &v), &c) in ctx.gather(input, radius)?.zip(&row.coeffs[f]) {
                acc += c * v;
            }
            Ok(acc)
        })?)
    }

    /// Lays every cached row out in the order its gathers deliver values.
    fn align_rows(&mut self) {
        let comm = self.comm;
        let net = &self.net;
        self.aligned = self
            .nodes
            .iter()
            .map(|node| {
                node.row_powers
                    .iter()
                    .map(|rp| {
                        let radius = match comm {
                            Communication::Full => rp.power,
                            Communication::RHop(r) => rp.power.min(r),
                        };
                        let hood = net.neighborhood(node.k, radius);
                        let layout = |row: &SparseRow| hood.iter().map(|&(j, _)| lookup(row, j)).collect();
                        AlignedRow {
                            power: rp.power,
                            own: [lookup(&rp.ad_inv, node.k), lookup(&rp.d_inv_a, node.k)],
                            coeffs: [layout(&rp.ad_inv), layout(&rp.d_inv_a)],
                        }
                    })
                    .collect()
            })
            .collect();
    }

    /// One-hop exchange of diagonals; yields the first powers locally.
    fn exchange_diagonals(&mut self) -> Result<()> {
        let diag_field = self.net.publish(self.nodes.iter().map(|s| s.diag).collect());
        let nodes = &self.nodes;
        let first = self.net.run_round(|ctx| {
            let node = &nodes[ctx.node()];
            let mut neighbor_diag = BTreeMap::new();
            for (j, &dj) in ctx.gather(&diag_field, 1)? {
                neighbor_diag.insert(j, dj);
            }
            let ad_inv = node.row_m.iter().map(|&(j, a)| (j, a / neighbor_diag[&j])).collect();
            let d_inv_a = node.row_m.iter().map(|&(j, a)| (j, a / node.diag)).collect();
            Ok(RowPower { power: 1, ad_inv, d_inv_a })
        })?;
        for (node, rp) in self.nodes.iter_mut().zip(first.into_values()) {
            node.row_powers = vec![rp];
        }
        Ok(())
    }

    /// Full communication: squares `2^{m−1}` rows into `2^m` rows for
    /// `m = 1..d`, gathering half-power rows within `2^m` hops.
    fn square_rows(&mut self) -> Result<()> {
        let n = self.nodes.len();
        for m in 1..self.d {
            let half = 1usize << (m - 1);
            let packets = self.net.publish(self.nodes.iter().map(|s| packet(s, half)).collect::<Vec<_>>());
            let nodes = &self.nodes;
            let squared = self.net.run_round(|ctx| {
                let own = ctx.own(&packets)?;
                let others: Vec<&Packet> = ctx.gather(&packets, 2 * half)?.map(|(_, p)| p).collect();
                Ok(compose_rows(n, nodes[ctx.node()].k, own, &others, &others, 2 * half))
            })?;
            for (node, rp) in self.nodes.iter_mut().zip(squared.into_values()) {
                node.row_powers.push(rp);
            }
        }
        Ok(())
    }

    /// R-hop: `R − 1` one-hop rounds extend `p → p + 1`. One-step rows are
    /// flooded one hop per round, so at round `l` a node holds the
    /// one-step rows of its `(l+1)`-hop neighborhood.
    fn extend_rows(&mut self, radius: usize) -> Result<()> {
        if radius == 1 {
            return Ok(());
        }
        let n = self.nodes.len();
        let mut known: Vec<BTreeMap<usize, Packet>> =
            self.nodes.iter().map(|s| BTreeMap::from([(s.k, packet(s, 1))])).collect();
        let mut frontier = self.net.publish(self.nodes.iter().map(|s| vec![packet(s, 1)]).collect::<Vec<_>>());
        let learn = |ctx: &mut NodeCtx<'_>, frontier: &Field<Vec<Packet>>, known: &BTreeMap<usize, Packet>| {
            let mut fresh: BTreeMap<usize, Packet> = BTreeMap::new();
            for (_, batch) in ctx.gather(frontier, 1)? {
                for p in batch {
                    if !known.contains_key(&p.node) {
                        fresh.entry(p.node).or_insert_with(|| p.clone());
                    }
                }
            }
            Ok::<_, SimError>(fresh.into_values().collect::<Vec<_>>())
        };

        // Learn the one-hop rows before the first extension.
        let known_ref = &known;
        let fresh = self.net.run_round(|ctx| learn(ctx, &frontier, &known_ref[ctx.node()]))?;
        absorb(&mut known, fresh.values());
        frontier = fresh;

        for l in 1..radius {
            let known_ref = &known;
            let nodes = &self.nodes;
            let step = self.net.run_round(|ctx| {
                let k = ctx.node();
                let fresh = learn(ctx, &frontier, &known_ref[k])?;
                let current = nodes[k].row_power(l).expect("previous power");
                let own = Packet {
                    node: k,
                    diag: nodes[k].diag,
                    ad_inv: current.ad_inv.clone(),
                    d_inv_a: current.d_inv_a.clone(),
                };
                let targets: Vec<&Packet> = known_ref[k]
                    .values()
                    .filter(|p| p.node != k)
                    .chain(fresh.iter())
                    .collect();
                let one_step_own = &known_ref[k][&k];
                let rp = extend_row(n, &own, one_step_own, &targets, known_ref[k].values().chain(fresh.iter()), l + 1);
                Ok((fresh, rp))
            })?;
            let (fresh, rows): (Vec<_>, Vec<_>) = step.into_values().into_iter().unzip();
            absorb(&mut known, &fresh);
            for (node, rp) in self.nodes.iter_mut().zip(rows) {
                node.row_powers.push(rp);
            }
            frontier = self.net.publish(fresh);
        }
        // Keep only the one-step rows and the stride rows.
        for node in &mut self.nodes {
            node.row_powers.retain(|r| r.power == 1 || r.power == radius);
        }
        Ok(())
    }
}

fn absorb(known: &mut [BTreeMap<usize, Packet>], fresh: &[Vec<Packet>]) {
    for (map, batch) in known.iter_mut().zip(fresh) {
        for p in batch {
            map.insert(p.node, p.clone());
        }
    }
}

fn packet(s: &NodeSolverState, power: usize) -> Packet {
    let rp = s.row_power(power).expect("row power present");
    Packet { node: s.k, diag: s.diag, ad_inv: rp.ad_inv.clone(), d_inv_a: rp.d_inv_a.clone() }
}

/// Row `k` of `P^{2h}` and `Q^{2h}` from half-power rows:
/// `[P^{2h}]_{kj} = Σ_r (D_r/D_j)[P^h]_{kr}[P^h]_{jr}` and
/// `[Q^{2h}]_{kj} = Σ_r (D_j/D_r)[Q^h]_{kr}[Q^h]_{jr}`.
fn compose_rows(n: usize, k: usize, own: &Packet, others: &[&Packet], diag_sources: &[&Packet], power: usize) -> RowPower {
    let mut diag = vec![f64::NAN; n];
    diag[k] = own.diag;
    for p in diag_sources {
        diag[p.node] = p.diag;
    }
    let mut wp = vec![0.0; n];
    let mut wq = vec![0.0; n];
    for &(r, v) in &own.ad_inv {
        debug_assert!(!diag[r].is_nan(), "diagonal of node {r} unknown at node {k}");
        wp[r] = v * diag[r];
    }
    for &(r, v) in &own.d_inv_a {
        wq[r] = v / diag[r];
    }
    let mut ad_inv = Vec::new();
    let mut d_inv_a = Vec::new();
    for target in core::iter::once(own).chain(others.iter().copied()) {
        let j = target.node;
        let p: f64 = target.ad_inv.iter().map(|&(r, v)| wp[r] * v).sum::<f64>() / target.diag;
        let q: f64 = target.diag * target.d_inv_a.iter().map(|&(r, v)| wq[r] * v).sum::<f64>();
        if p != 0.0 {
            ad_inv.push((j, p));
        }
        if q != 0.0 {
            d_inv_a.push((j, q));
        }
    }
    ad_inv.sort_unstable_by_key(|e| e.0);
    d_inv_a.sort_unstable_by_key(|e| e.0);
    RowPower { power, ad_inv, d_inv_a }
}

/// Row `k` of `P^{l+1}` and `Q^{l+1}` from row `k` of the `l`-th powers and
/// one-step rows of every target `j`:
/// `[P^{l+1}]_{kj} = Σ_{r ∈ N₁(j)} (D_r/D_j)[P^l]_{kr}[P]_{jr}`,
/// `[Q^{l+1}]_{kj} = Σ_{r ∈ N₁(j)} (D_j/D_r)[Q^l]_{kr}[Q]_{jr}`.
fn extend_row<'a>(
    n: usize,
    current: &Packet,
    one_step_own: &Packet,
    targets: &[&Packet],
    diag_sources: impl Iterator<Item = &'a Packet>,
    power: usize,
) -> RowPower {
    let mut diag = vec![f64::NAN; n];
    for p in diag_sources {
        diag[p.node] = p.diag;
    }
    let mut wp = vec![0.0; n];
    let mut wq = vec![0.0; n];
    for &(r, v) in &current.ad_inv {
        debug_assert!(!diag[r].is_nan(), "diagonal of node {r} unknown at node {}", current.node);
        wp[r] = v * diag[r];
    }
    for &(r, v) in &current.d_inv_a {
        wq[r] = v / diag[r];
    }
    let mut ad_inv = Vec::new();
    let mut d_inv_a = Vec::new();
    for target in core::iter::once(one_step_own).chain(targets.iter().copied()) {
        let j = target.node;
        let p: f64 = target.ad_inv.iter().map(|&(r, v)| wp[r] * v).sum::<f64>() / target.diag;
        let q: f64 = target.diag * target.d_inv_a.iter().map(|&(r, v)| wq[r] * v).sum::<f64>();
        if p != 0.0 {
            ad_inv.push((j, p));
        }
        if q != 0.0 {
            d_inv_a.push((j, q));
        }
    }
    ad_inv.sort_unstable_by_key(|e| e.0);
    d_inv_a.sort_unstable_by_key(|e| e.0);
    RowPower { power, ad_inv, d_inv_a }
}

fn lookup(row: &[(usize, f64)], j: usize) -> f64 {
    match row.binary_search_by_key(&j, |e| e.0) {
        Ok(p) => row[p].1,
        Err(_) => 0.0,
    }
}

/// Full-communication crude solve on a fresh network.
pub fn distr_rsolve(s: &StandardSplitting, b0: &[f64], d: usize) -> Result<Solved> {
    let mut solver = DistributedSolver::full(s, d)?;
    let x = solver.crude_solve(b0)?;
    Ok(Solved { x, transcript: solver.transcript().clone() })
}

/// Full-communication ε-approximate solve on a fresh network.
pub fn distr_esolve(s: &StandardSplitting, b0: &[f64], d: usize, eps: f64) -> Result<Solved> {
    let mut solver = DistributedSolver::full(s, d)?;
    let x = solver.solve(b0, eps)?;
    Ok(Solved { x, transcript: solver.transcript().clone() })
}

/// R-hop crude solve on a fresh network.
pub fn rdist_rsolve(s: &StandardSplitting, b0: &[f64], d: usize, radius: usize) -> Result<Solved> {
    let mut solver = DistributedSolver::rhop(s, d, radius)?;
    let x = solver.crude_solve(b0)?;
    Ok(Solved { x, transcript: solver.transcript().clone() })
}

/// R-hop ε-approximate solve on a fresh network.
pub fn edist_rsolve(s: &StandardSplitting, b0: &[f64], d: usize, radius: usize, eps: f64) -> Result<Solved> {
    let mut solver = DistributedSolver::rhop(s, d, radius)?;
    let x = solver.solve(b0, eps)?;
    Ok(Solved { x, transcript: solver.transcript().clone() })
}

/// Every node's row of `(A₀D₀⁻¹)^R`, built with one-hop exchanges only.
pub fn f0_rows(s: &StandardSplitting, radius: usize) -> Result<(Vec<SparseRow>, SimTranscript)> {
    stride_rows(s, radius, Family::AdInv)
}

/// Every node's row of `(D₀⁻¹A₀)^R`, built with one-hop exchanges only.
pub fn f1_rows(s: &StandardSplitting, radius: usize) -> Result<(Vec<SparseRow>, SimTranscript)> {
    stride_rows(s, radius, Family::DInvA)
}

fn stride_rows(s: &StandardSplitting, radius: usize, family: Family) -> Result<(Vec<SparseRow>, SimTranscript)> {
    let mut solver = DistributedSolver::rhop(s, 0, radius)?;
    solver.prepare()?;
    let rows = solver
        .nodes
        .iter()
        .map(|node| {
            let rp = node.row_power(radius).expect("stride rows built");
            match family {
                Family::AdInv => rp.ad_inv.clone(),
                Family::DInvA => rp.d_inv_a.clone(),
            }
        })
        .collect();
    Ok((rows, solver.transcript().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, ground, laplacian, GraphKind};
    use crate::reference::{parallel_esolve, parallel_rsolve, InverseChainView};

    fn grounded(kind: GraphKind) -> StandardSplitting {
        ground(&laplacian(&generate(&kind, 3).unwrap()).unwrap(), 0).unwrap().0
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * (1.0 + y.abs()))
    }

    #[test]
    fn full_and_rhop_match_sequential() {
        let s = grounded(GraphKind::Barbell { clique: 5, path_len: 5 });
        let b: Vec<f64> = (0..s.n()).map(|i| (i as f64 * 0.7).sin()).collect();
        let d = 7;
        let seq = parallel_rsolve(&InverseChainView::new(&s, d), &b);
        assert!(close(&distr_rsolve(&s, &b, d).unwrap().x, &seq, 1e-9));
        for r in [1, 2, 4] {
            let got = rdist_rsolve(&s, &b, d, r).unwrap();
            assert!(close(&got.x, &seq, 1e-9), "R={r}");
            assert!(got.transcript.max_hop_used <= r);
        }
        let e_seq = parallel_esolve(&InverseChainView::new(&s, d), &b, 1e-3).unwrap();
        assert!(close(&distr_esolve(&s, &b, d, 1e-3).unwrap().x, &e_seq, 1e-8));
        assert!(close(&edist_rsolve(&s, &b, d, 2, 1e-3).unwrap().x, &e_seq, 1e-8));
    }

    #[test]
    fn stride_rows_on_path() {
        let g = generate(&GraphKind::Path { n: 4 }, 0).unwrap();
        let s = laplacian(&g).unwrap();
        let (rows, t) = f0_rows(&s, 2).unwrap();
        // P = A D⁻¹ with D = [1, 2, 2, 1]; P² row 0 = [½, 0, ¼, 0].
        assert_eq!(rows[0].len(), 2);
        assert!((rows[0][0].1 - 0.5).abs() < 1e-12 && (rows[0][1].1 - 0.25).abs() < 1e-12);
        assert_eq!(t.max_hop_used, 1);
    }

    #[test]
    fn rejects_bad_radius() {
        let s = grounded(GraphKind::Path { n: 4 });
        assert!(matches!(DistributedSolver::rhop(&s, 3, 3), Err(Error::RadiusNotPowerOfTwo(3))));
    }
}

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DirectedFlowGraph, WeightedGraph};
use crate::{Error, Result};

/// Topologies used by the experiments. All edges carry unit weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Path { n: usize },
    Grid { rows: usize, cols: usize },
    /// Two cliques joined by a path of `path_len` intermediate nodes.
    Barbell { clique: usize, path_len: usize },
    /// `m` distinct pairs drawn uniformly, redrawn until connected.
    Random { n: usize, m: usize },
    /// Preferential attachment, one edge per new node.
    ScaleFree { n: usize },
    Complete { n: usize },
}

impl GraphKind {
    pub fn node_count(&self) -> usize {
        match *self {
            GraphKind::Path { n }
            | GraphKind::Random { n, .. }
            | GraphKind::ScaleFree { n }
            | GraphKind::Complete { n } => n,
            GraphKind::Grid { rows, cols } => rows * cols,
            GraphKind::Barbell { clique, path_len } => 2 * clique + path_len,
        }
    }
}

const MAX_RANDOM_ATTEMPTS: usize = 10_000;

/// Deterministic in `seed`; only the random families consume it.
pub fn generate(kind: &GraphKind, seed: u64) -> Result<WeightedGraph> {
    let n = kind.node_count();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("{kind:?} has fewer than 2 nodes")));
    }
    let unit = |pairs: Vec<(usize, usize)>| {
        WeightedGraph::new(n, pairs.into_iter().map(|(i, j)| (i, j, 1.0)).collect())
    };
    let g = match *kind {
        GraphKind::Path { n } => unit((0..n - 1).map(|i| (i, i + 1)).collect())?,
        GraphKind::Grid { rows, cols } => {
            let mut pairs = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        pairs.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        pairs.push((v, v + cols));
                    }
                }
            }
            unit(pairs)?
        }
        GraphKind::Barbell { clique, path_len } => {
            if clique < 1 {
                return Err(Error::InvalidParameter("barbell cliques need at least one node".into()));
            }
            let mut pairs = clique_pairs(0, clique);
            pairs.extend(clique_pairs(clique + path_len, clique));
            // Chain from the last node of the first clique through the path
            // to the first node of the second clique.
            pairs.extend((clique - 1..clique + path_len).map(|v| (v, v + 1)));
            unit(pairs)?
        }
        GraphKind::Random { n, m } => random_connected(n, m, seed)?,
        GraphKind::ScaleFree { n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut urn = vec![0usize, 1];
            let mut pairs = vec![(0, 1)];
            for t in 2..n {
                let target = urn[rng.random_range(0..urn.len())];
                pairs.push((target, t));
                urn.push(target);
                urn.push(t);
            }
            unit(pairs)?
        }
        GraphKind::Complete { n } => unit(clique_pairs(0, n))?,
    };
    debug_assert!(g.is_connected());
    Ok(g)
}

/// [`generate`] followed by lower-to-higher orientation.
pub fn generate_flow(kind: &GraphKind, seed: u64) -> Result<DirectedFlowGraph> {
    Ok(generate(kind, seed)?.orient())
}

/// Redraws every weight uniformly from `[lo, hi]`.
pub fn with_random_weights(g: &WeightedGraph, lo: f64, hi: f64, seed: u64) -> Result<WeightedGraph> {
    if !(lo > 0.0 && hi >= lo) {
        return Err(Error::InvalidParameter(format!("weight range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.map_weights(|_, _, _| if hi > lo { rng.random_range(lo..=hi) } else { lo })
}

fn clique_pairs(first: usize, size: usize) -> Vec<(usize, usize)> {
    (first..first + size)
        .flat_map(|i| (i + 1..first + size).map(move |j| (i, j)))
        .collect()
}

fn random_connected(n: usize, m: usize, seed: u64) -> Result<WeightedGraph> {
    let total = n * (n - 1) / 2;
    if m > total {
        return Err(Error::InvalidParameter(format!("{m} edges exceed the {total} pairs on {n} nodes")));
    }
    if m + 1 < n {
        return Err(Error::InvalidParameter(format!("{m} edges cannot connect {n} nodes")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RANDOM_ATTEMPTS {
        let mut picks: Vec<usize> = index::sample(&mut rng, total, m).into_vec();
        picks.sort_unstable();
        let edges = picks.into_iter().map(|p| {
            let (i, j) = pair_at(n, p);
            (i, j, 1.0)
        });
        let g = WeightedGraph::new(n, edges.collect())?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected sample with {m} edges on {n} nodes after {MAX_RANDOM_ATTEMPTS} draws"
    )))
}

/// The `p`-th pair `(i, j)`, `i < j`, in lexicographic order.
fn pair_at(n: usize, mut p: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - 1 - i;
        if p < row {
            return (i, i + 1 + p);
        }
        p -= row;
    }
    unreachable!("pair index out of range")
}

//! Synchronous message-passing simulator.
//!
//! A round runs every node's step function in node-id order. Steps read
//! [`Field`]s published in earlier rounds through [`NodeCtx::gather`] and
//! return the value they publish; those values form a new field that only
//! becomes readable in the next round. Delivering a value across `h` hops
//! is charged `h` messages.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{hop_distances, WeightedGraph, UNREACHABLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("node {node} gathered at radius {requested} in round {round}; the limit is {limit}")]
    HopViolation {
        node: usize,
        round: u64,
        requested: usize,
        limit: usize,
    },
    #[error("node {node} read in round {round} a field that becomes visible in round {visible_from}")]
    UnpublishedRead {
        node: usize,
        round: u64,
        visible_from: u64,
    },
    #[error("invalid simulator configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub graph: WeightedGraph,
    /// Hop radius `R`.
    pub radius: usize,
    pub strict: bool,
}

impl SimConfig {
    /// Gathers beyond `radius` hops are errors.
    pub fn restricted(graph: WeightedGraph, radius: usize) -> Self {
        Self { graph, radius, strict: true }
    }

    /// No hop limit; the radius is recorded as the node count.
    pub fn full_communication(graph: WeightedGraph) -> Self {
        let radius = graph.n().max(1);
        Self { graph, radius, strict: false }
    }
}

/// Per-round traffic record.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimTranscript {
    pub rounds: u64,
    pub messages_total: u64,
    pub messages_per_round: Vec<u64>,
    /// Largest hop distance of any value delivered in each round.
    pub max_hop_per_round: Vec<usize>,
    pub max_hop_used: usize,
}

impl SimTranscript {
    /// `(round, messages, max_hop)` rows, rounds numbered from 1.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u64, usize)> + '_ {
        self.messages_per_round
            .iter()
            .zip(&self.max_hop_per_round)
            .enumerate()
            .map(|(i, (&m, &h))| (i as u64 + 1, m, h))
    }
}

/// Node values published in one round.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    values: Vec<T>,
    visible_from: u64,
}

impl<T> Field<T> {
    /// A field that may not be read before round `visible_from`.
    pub fn scheduled(values: Vec<T>, visible_from: u64) -> Self {
        Self { values, visible_from }
    }

    pub fn visible_from(&self) -> u64 {
        self.visible_from
    }

    /// Global view for assembling results after the simulation; node code
    /// goes through [`NodeCtx`].
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

#[derive(Debug, Clone)]
struct Topology {
    /// Other reachable nodes as `(node, hop)`, ordered by hop then id.
    by_node: Vec<Vec<(usize, usize)>>,
    /// `hop_prefix[k][c]` = hop sum over the first `c` entries.
    hop_prefix: Vec<Vec<u64>>,
}

impl Topology {
    fn new(g: &WeightedGraph) -> Self {
        let mut by_node = Vec::with_capacity(g.n());
        let mut hop_prefix = Vec::with_capacity(g.n());
        for k in 0..g.n() {
            let mut hood: Vec<(usize, usize)> = hop_distances(g, k)
                .into_iter()
                .enumerate()
                .filter(|&(v, h)| v != k && h != UNREACHABLE)
                .collect();
            hood.sort_by_key(|&(v, h)| (h, v));
            let mut prefix = Vec::with_capacity(hood.len() + 1);
            prefix.push(0u64);
            for &(_, h) in &hood {
                prefix.push(prefix.last().unwrap() + h as u64);
            }
            by_node.push(hood);
            hop_prefix.push(prefix);
        }
        Self { by_node, hop_prefix }
    }

    fn count_within(&self, k: usize, r: usize) -> usize {
        self.by_node[k].partition_point(|&(_, h)| h <= r)
    }
}

/// Simulated network with its transcript.
#[derive(Debug, Clone)]
pub struct Network {
    config: SimConfig,
    topo: Topology,
    completed: u64,
    transcript: SimTranscript,
}

impl Network {
    pub fn new(config: SimConfig) -> Result<Self, SimError> {
        if config.radius == 0 {
            return Err(SimError::Config("hop radius must be at least 1".into()));
        }
        let topo = Topology::new(&config.graph);
        Ok(Self { config, topo, completed: 0, transcript: SimTranscript::default() })
    }

    pub fn n(&self) -> usize {
        self.config.graph.n()
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn transcript(&self) -> &SimTranscript {
        &self.transcript
    }

    /// Rounds executed so far.
    pub fn rounds(&self) -> u64 {
        self.completed
    }

    /// Nodes within `r` hops of `k` (excluding `k`) as `(node, hop)`.
    pub fn neighborhood(&self, k: usize, r: usize) -> &[(usize, usize)] {
        &self.topo.by_node[k][..self.topo.count_within(k, r)]
    }

    /// Local inputs held before the next round; readable from that round on.
    pub fn publish<T>(&self, values: Vec<T>) -> Field<T> {
        assert_eq!(values.len(), self.n(), "one value per node");
        Field { values, visible_from: self.completed + 1 }
    }

    /// Runs one synchronous round and returns what the nodes published.
    pub fn run_round<U, F>(&mut self, mut step: F) -> Result<Field<U>, SimError>
    where
        F: FnMut(&mut NodeCtx<'_>) -> Result<U, SimError>,
    {
        let round = self.completed + 1;
        let limit = self.config.strict.then_some(self.config.radius);
        let mut out = Vec::with_capacity(self.n());
        let (mut messages, mut max_hop) = (0u64, 0usize);
        for node in 0..self.n() {
            let mut ctx = NodeCtx { node, round, topo: &self.topo, limit, messages: 0, max_hop: 0 };
            out.push(step(&mut ctx)?);
            messages += ctx.messages;
            max_hop = max_hop.max(ctx.max_hop);
        }
        self.completed = round;
        let t = &mut self.transcript;
        t.rounds = round;
        t.messages_total += messages;
        t.messages_per_round.push(messages);
        t.max_hop_per_round.push(max_hop);
        t.max_hop_used = t.max_hop_used.max(max_hop);
        Ok(Field { values: out, visible_from: round + 1 })
    }
}

/// A node's view during one round.
#[derive(Debug)]
pub struct NodeCtx<'t> {
    node: usize,
    round: u64,
    topo: &'t Topology,
    limit: Option<usize>,
    messages: u64,
    max_hop: usize,
}

impl<'t> NodeCtx<'t> {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    fn check_visible<T>(&self, field: &Field<T>) -> Result<(), SimError> {
        if field.visible_from > self.round {
            return Err(SimError::UnpublishedRead {
                node: self.node,
                round: self.round,
                visible_from: field.visible_from,
            });
        }
        Ok(())
    }

    /// This node's own published value.
    pub fn own<'f, T>(&self, field: &'f Field<T>) -> Result<&'f T, SimError> {
        self.check_visible(field)?;
        Ok(&field.values[self.node])
    }

    /// Values of every other node within `r` hops.
    pub fn gather<'f, T>(&mut self, field: &'f Field<T>, r: usize) -> Result<Gathered<'t, 'f, T>, SimError> {
        self.check_visible(field)?;
        if r == 0 {
            return Err(SimError::Config("gather radius must be at least 1".into()));
        }
        if let Some(limit) = self.limit {
            if r > limit {
                return Err(SimError::HopViolation { node: self.node, round: self.round, requested: r, limit });
            }
        }
        let count = self.topo.count_within(self.node, r);
        let hood = &self.topo.by_node[self.node][..count];
        self.messages += self.topo.hop_prefix[self.node][count];
        if let Some(&(_, h)) = hood.last() {
            self.max_hop = self.max_hop.max(h);
        }
        Ok(Gathered { hood: hood.iter(), values: &field.values })
    }

    /// Values of every reachable node; rejected under a hop limit.
    pub fn gather_all<'f, T>(&mut self, field: &'f Field<T>) -> Result<Gathered<'t, 'f, T>, SimError> {
        self.gather(field, usize::MAX)
    }
}

/// Iterator over `(node, value)` delivered by a gather.
#[derive(Debug, Clone)]
pub struct Gathered<'t, 'f, T> {
    hood: core::slice::Iter<'t, (usize, usize)>,
    values: &'f [T],
}

impl<'f, T> Iterator for Gathered<'_, 'f, T> {
    type Item = (usize, &'f T);

    fn next(&mut self) -> Option<Self::Item> {
        self.hood.next().map(|&(v, _)| (v, &self.values[v]))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.hood.size_hint()
    }
}

impl<T> ExactSizeIterator for Gathered<'_, '_, T> {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::graph::{generate, GraphKind};

    fn net(kind: GraphKind, radius: usize) -> Network {
        Network::new(SimConfig::restricted(generate(&kind, 0).unwrap(), radius)).unwrap()
    }

    #[test]
    fn k3_gather_charges_two_messages() {
        let mut net = net(GraphKind::Complete { n: 3 }, 1);
        let f = net.publish(vec![10, 11, 12]);
        let got = net
            .run_round(|ctx| {
                let seen: Vec<(usize, i32)> = ctx.gather(&f, 1)?.map(|(v, &x)| (v, x)).collect();
                Ok(seen)
            })
            .unwrap();
        assert_eq!(got.values()[0], vec![(1, 11), (2, 12)]);
        assert_eq!(net.transcript().messages_per_round, vec![6]);
    }

    #[test]
    fn p5_radius_two_from_node_zero() {
        let mut net = net(GraphKind::Path { n: 5 }, 2);
        let f = net.publish(vec![0u8; 5]);
        let mut charged = 0;
        net.run_round(|ctx| {
            let before = ctx.messages;
            let ids: Vec<usize> = ctx.gather(&f, 2)?.map(|(v, _)| v).collect();
            if ctx.node() == 0 {
                assert_eq!(ids, vec![1, 2]);
                charged = ctx.messages - before;
            }
            Ok(())
        })
        .unwrap();
        assert_eq!(charged, 3);
        assert_eq!(net.transcript().max_hop_used, 2);
    }

    #[test]
    fn strict_limit_is_enforced() {
        let mut net = net(GraphKind::Path { n: 5 }, 1);
        let f = net.publish(vec![0u8; 5]);
        let err = net.run_round(|ctx| ctx.gather(&f, 2).map(|_| ())).unwrap_err();
        assert_eq!(err, SimError::HopViolation { node: 0, round: 1, requested: 2, limit: 1 });
    }

    #[test]
    fn unpublished_reads_are_rejected() {
        let mut net = net(GraphKind::Path { n: 3 }, 1);
        let early = Field::scheduled(vec![1.0; 3], 5);
        let err = net.run_round(|ctx| ctx.own(&early).map(|_| ())).unwrap_err();
        assert!(matches!(err, SimError::UnpublishedRead { node: 0, round: 1, visible_from: 5 }));
    }

    #[test]
    fn averaging_on_k3() {
        let mut net = net(GraphKind::Complete { n: 3 }, 1);
        let mut f = net.publish(vec![0.0, 1.0, 2.0]);
        f = net
            .run_round(|ctx| {
                let s: f64 = ctx.gather(&f, 1)?.map(|(_, x)| x).sum::<f64>() + ctx.own(&f)?;
                Ok(s / 3.0)
            })
            .unwrap();
        assert_eq!(f.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn full_communication_reaches_everything() {
        let g = generate(&GraphKind::Path { n: 6 }, 0).unwrap();
        let mut net = Network::new(SimConfig::full_communication(g)).unwrap();
        let f = net.publish(vec![1u32; 6]);
        let counts = net.run_round(|ctx| Ok(ctx.gather_all(&f)?.count())).unwrap();
        assert!(counts.values().iter().all(|&c| c == 5));
        assert_eq!(net.transcript().max_hop_used, 5);
    }
}

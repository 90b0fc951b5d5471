//! Chain graphs and (total) chain-connectivity.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::components;
use crate::poset::{chain_word, chains_between, escape, interval_nodes, Chain, LabeledInterval, NodeId};

#[derive(Clone, Debug, Serialize)]
pub struct ChainGraph {
    pub chains: Vec<Chain>,
    /// Pairs of chains differing in exactly one element, as sorted index pairs.
    pub edges: Vec<(usize, usize)>,
}

impl ChainGraph {
    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.chains.len(), &self.edges)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn to_dot(&self, l: &LabeledInterval) -> String {
        let mut s = String::from("graph chains {\n  node [shape=plaintext];\n");
        for (i, c) in self.chains.iter().enumerate() {
            let label = match chain_word(l, c) {
                Ok(w) if l.is_labeled() => l.format_word(&w),
                _ => l.format_chain(c),
            };
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", escape(&label));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  c{a} -- c{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Pairs of chains (of equal length) that differ in exactly one position.
pub(crate) fn one_position_pairs(chains: &[Chain]) -> Vec<(usize, usize)> {
    let len = chains.first().map_or(0, |c| c.0.len());
    let mut edges = Vec::new();
    for pos in 1..len.saturating_sub(1) {
        let mut groups: HashMap<Vec<NodeId>, Vec<usize>> = HashMap::new();
        for (i, c) in chains.iter().enumerate() {
            let mut key = c.0.clone();
            key[pos] = usize::MAX;
            groups.entry(key).or_default().push(i);
        }
        for members in groups.values() {
            for a in 0..members.len() {
                for b in a + 1..members.len() {
                    edges.push((members[a].min(members[b]), members[a].max(members[b])));
                }
            }
        }
    }
    edges.sort();
    edges.dedup();
    edges
}

pub fn chain_graph(l: &LabeledInterval, cap: usize) -> Result<ChainGraph> {
    chain_graph_between(l, l.bottom(), l.top(), cap)
}

pub fn chain_graph_between(l: &LabeledInterval, x: NodeId, y: NodeId, cap: usize) -> Result<ChainGraph> {
    let chains = chains_between(l, x, y, cap)?;
    let edges = one_position_pairs(&chains);
    Ok(ChainGraph { chains, edges })
}

pub fn is_chain_connected(l: &LabeledInterval, cap: usize) -> Result<bool> {
    Ok(chain_graph(l, cap)?.is_connected())
}

/// Connectivity of the Hasse diagram restricted to the open interval `(x, y)`.
pub fn proper_part_connected(l: &LabeledInterval, x: NodeId, y: NodeId) -> bool {
    let inner: Vec<NodeId> = interval_nodes(l, x, y).into_iter().filter(|&z| z != x && z != y).collect();
    if inner.is_empty() {
        return true;
    }
    let idx: HashMap<NodeId, usize> = inner.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let mut edges = Vec::new();
    for (i, &z) in inner.iter().enumerate() {
        for &(t, _) in l.up(z) {
            if let Some(&j) = idx.get(&t) {
                edges.push((i, j));
            }
        }
    }
    components(inner.len(), &edges).len() == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotalConnectivity {
    pub connected: bool,
    /// Lexicographically least `(x, y)` whose interval is not chain-connected.
    pub witness: Option<(NodeId, NodeId)>,
}

/// Tests every interval of rank at least three, by chain graph and by proper-part connectivity.
pub fn is_totally_chain_connected(l: &LabeledInterval, cap: usize) -> Result<TotalConnectivity> {
    let pairs: Vec<(NodeId, NodeId)> = (0..l.node_count())
        .flat_map(|x| {
            l.above(x)
                .ones()
                .filter(move |&y| l.node_rank(y) >= l.node_rank(x) + 3)
                .map(move |y| (x, y))
                .collect::<Vec<_>>()
        })
        .collect();
    let results: Vec<Result<(bool, bool)>> = pairs
        .par_iter()
        .map(|&(x, y)| Ok((chain_graph_between(l, x, y, cap)?.is_connected(), proper_part_connected(l, x, y))))
        .collect();
    let mut witness = None;
    let mut hasse_ok = true;
    for (&p, r) in pairs.iter().zip(results) {
        let (by_chains, by_hasse) = r?;
        hasse_ok &= by_hasse;
        if !by_chains && witness.is_none_or(|w| p < w) {
            witness = Some(p);
        }
    }
    // a chain-connected interval has connected proper part, and the converse holds globally
    if let Some((x, y)) = witness.filter(|_| hasse_ok) {
        return Err(Error::OracleDisagreement(format!(
            "interval [{}, {}] is not chain-connected although every proper part is connected",
            l.node_name(x),
            l.node_name(y)
        )));
    }
    if witness.is_none() && !hasse_ok {
        return Err(Error::OracleDisagreement("chain graphs connected but some proper part is not".into()));
    }
    Ok(TotalConnectivity { connected: witness.is_none(), witness })
}

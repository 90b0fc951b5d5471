//! The Hurwitz action of the braid group on maximal chains.
//!
//! Moves are computed from the labeled diagram alone: replacing `x_i` only needs the
//! rank-2 interval `[x_{i-1}, x_{i+1}]`, so fixtures without a group support the full action.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{chain_word, escape, maximal_chains, Chain, Factorization, LabelId, LabeledInterval, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Applies `σ_i` (forward) or `σ_i⁻¹` (inverse) to a maximal chain, `1 ≤ i ≤ n−1`.
pub fn hurwitz_move(l: &LabeledInterval, c: &Chain, i: usize, dir: Direction) -> Result<Chain> {
    l.require_labels()?;
    let n = c.0.len().saturating_sub(1);
    if i == 0 || i >= n {
        return Err(Error::BadPosition(i));
    }
    let (lo, mid, hi) = (c.0[i - 1], c.0[i], c.0[i + 1]);
    let new_mid = match dir {
        Direction::Forward => {
            let b = l.label(mid, hi).ok_or(Error::Unlabeled)?;
            let z = l
                .out_by_label(lo, b)
                .ok_or_else(|| Error::NoSuchEdge { node: lo, label: l.label_name(b).to_string() })?;
            if !l.covers(z, hi) {
                return Err(Error::NoSuchEdge { node: z, label: "(leaves the interval)".into() });
            }
            z
        }
        Direction::Inverse => {
            let a = l.label(lo, mid).ok_or(Error::Unlabeled)?;
            l.up(lo)
                .iter()
                .map(|&(z, _)| z)
                .find(|&z| l.label(z, hi) == Some(a))
                .ok_or_else(|| Error::NoSuchEdge { node: hi, label: l.label_name(a).to_string() })?
        }
    };
    let mut out = c.clone();
    out.0[i] = new_mid;
    Ok(out)
}

/// The word-level Hurwitz move, computed with group multiplication.
pub fn hurwitz_move_word(l: &LabeledInterval, w: &Factorization, i: usize) -> Result<Factorization> {
    let g = l.group().ok_or_else(|| Error::InvalidInterval("no group semantics".into()))?;
    if i == 0 || i >= w.0.len() {
        return Err(Error::BadPosition(i));
    }
    let o = &g.oracle;
    let (a, b) = (o.generators()[w.0[i - 1]], o.generators()[w.0[i]]);
    let c = o.conjugate(a, b)?;
    let ci = o
        .generators()
        .iter()
        .position(|&x| x == c)
        .ok_or_else(|| Error::InvalidGeneratingSet("conjugate is not a generator".into()))?;
    let mut out = w.clone();
    out.0[i - 1] = w.0[i];
    out.0[i] = ci;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct HurwitzGraph {
    pub chains: Vec<Chain>,
    /// Unordered pairs `{c, σ_i c}` with `c ≠ σ_i c`, as sorted index pairs.
    pub edges: Vec<(usize, usize)>,
    /// `(chain, i)` with `σ_i c = c`.
    pub loops: Vec<(usize, usize)>,
}

impl HurwitzGraph {
    /// Connected components as sorted lists of chain indices, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.chains.len(), &self.edges)
    }

    pub fn to_dot(&self, l: &LabeledInterval) -> String {
        let mut s = String::from("graph hurwitz {\n  node [shape=plaintext];\n");
        for (i, c) in self.chains.iter().enumerate() {
            let label = chain_word(l, c).map(|w| l.format_word(&w)).unwrap_or_default();
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", escape(&label));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  c{a} -- c{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    q.push_back(y);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

pub fn hurwitz_graph(l: &LabeledInterval, cap: usize) -> Result<HurwitzGraph> {
    l.require_labels()?;
    let chains = maximal_chains(l, cap)?;
    let index: HashMap<&Chain, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges = BTreeSet::new();
    let mut loops = Vec::new();
    let n = l.rank();
    for (ci, c) in chains.iter().enumerate() {
        for i in 1..n {
            let d = hurwitz_move(l, c, i, Direction::Forward)?;
            let di = *index.get(&d).ok_or_else(|| Error::InvalidInterval("Hurwitz move left the chain set".into()))?;
            if di == ci {
                loops.push((ci, i));
            } else {
                edges.insert((ci.min(di), ci.max(di)));
            }
        }
    }
    Ok(HurwitzGraph { chains, edges: edges.into_iter().collect(), loops })
}

/// Hurwitz orbits as lists of maximal chains.
pub fn hurwitz_orbits(l: &LabeledInterval, cap: usize) -> Result<Vec<Vec<Chain>>> {
    let g = hurwitz_graph(l, cap)?;
    Ok(g.components().into_iter().map(|comp| comp.into_iter().map(|i| g.chains[i].clone()).collect()).collect())
}

pub fn is_hurwitz_connected(l: &LabeledInterval, cap: usize) -> Result<bool> {
    Ok(hurwitz_graph(l, cap)?.components().len() <= 1)
}

/// The orbit of one chain, found without enumerating all chains.
pub fn hurwitz_orbit_of(l: &LabeledInterval, c: &Chain, cap: usize) -> Result<Vec<Chain>> {
    let mut seen: BTreeSet<Chain> = BTreeSet::from([c.clone()]);
    let mut q = VecDeque::from([c.clone()]);
    while let Some(x) = q.pop_front() {
        for i in 1..l.rank() {
            for dir in [Direction::Forward, Direction::Inverse] {
                let y = hurwitz_move(l, &x, i, dir)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ChainBudgetExceeded { limit: cap });
                    }
                    q.push_back(y);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Hurwitz orbits on the rank-2 interval `[x, g]`, each as a cyclic label sequence
/// `a₁ → a₂ → … → a_k` encoding the words `(a₁,a₂), (a₂,a₃), …, (a_k,a₁)`.
/// Each cycle starts at its least label id; cycles are sorted by first label.
pub fn label_cycles_between(l: &LabeledInterval, x: NodeId, g: NodeId) -> Result<Vec<Vec<LabelId>>> {
    l.require_labels()?;
    if l.node_rank(g) != l.node_rank(x) + 2 || !l.leq(x, g) {
        return Err(Error::RankMismatch { expected: l.node_rank(x) + 2, found: l.node_rank(g) });
    }
    let mut second: HashMap<LabelId, LabelId> = HashMap::new();
    for &(z, p) in l.up(x) {
        if let Some(q) = l.label(z, g) {
            second.insert(p.unwrap(), q);
        }
    }
    let mut firsts: Vec<LabelId> = second.keys().copied().collect();
    firsts.sort();
    let mut done = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &start in &firsts {
        if done.contains(&start) {
            continue;
        }
        let mut cyc = vec![start];
        done.insert(start);
        let mut cur = second[&start];
        while cur != start {
            if !done.insert(cur) || !second.contains_key(&cur) {
                return Err(Error::InvalidInterval(format!(
                    "labels below {} do not form disjoint cycles",
                    l.node_name(g)
                )));
            }
            cyc.push(cur);
            cur = second[&cur];
        }
        out.push(cyc);
    }
    Ok(out)
}

/// Label cycles of the rank-2 interval `[bottom, g]`.
pub fn rank2_label_cycles(l: &LabeledInterval, g: NodeId) -> Result<Vec<Vec<LabelId>>> {
    label_cycles_between(l, l.bottom(), g)
}

/// True iff every rank-2 element has a single Hurwitz orbit; the witness is the first failing one.
pub fn is_locally_hurwitz_connected(l: &LabeledInterval) -> Result<(bool, Option<NodeId>)> {
    l.require_labels()?;
    for g in l.nodes_of_rank(2) {
        if rank2_label_cycles(l, g)?.len() > 1 {
            return Ok((false, Some(g)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_interval;

    fn word(l: &LabeledInterval, names: &[&str]) -> Factorization {
        Factorization(names.iter().map(|n| l.label_by_name(n).unwrap()).collect())
    }

    #[test]
    fn word_move_conjugates_the_left_letter() {
        let l = fixture_interval("sym4_long_cycle").unwrap();
        let w = word(&l, &["(1 2)", "(2 3)", "(3 4)"]);
        let moved = hurwitz_move_word(&l, &w, 1).unwrap();
        assert_eq!(moved, word(&l, &["(2 3)", "(1 3)", "(3 4)"]));
        assert!(hurwitz_move_word(&l, &w, 3).is_err());
    }

    #[test]
    fn chain_moves_match_word_moves_and_invert() {
        let l = fixture_interval("sym4_long_cycle").unwrap();
        for c in maximal_chains(&l, 100).unwrap() {
            let w = chain_word(&l, &c).unwrap();
            for i in 1..l.rank() {
                let f = hurwitz_move(&l, &c, i, Direction::Forward).unwrap();
                assert_eq!(chain_word(&l, &f).unwrap(), hurwitz_move_word(&l, &w, i).unwrap());
                assert_eq!(hurwitz_move(&l, &f, i, Direction::Inverse).unwrap(), c);
            }
        }
    }

    #[test]
    fn three_cycle_has_one_label_cycle() {
        let l = fixture_interval("sym4_long_cycle").unwrap();
        let g = l.node_by_name("(1 2 3)").unwrap();
        let cycles = rank2_label_cycles(&l, g).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 3);
    }

    #[test]
    fn orbit_counts_of_small_fixtures() {
        assert_eq!(hurwitz_orbits(&fixture_interval("sym4_long_cycle").unwrap(), 100).unwrap().len(), 1);
        let d = fixture_interval("dihedral8_rt").unwrap();
        assert_eq!(hurwitz_orbits(&d, 100).unwrap().len(), 2);
        assert!(!is_locally_hurwitz_connected(&d).unwrap().0);
    }
}

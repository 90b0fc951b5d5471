//! Shelling orders of maximal chains: verification, construction from EL-labelings and search.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{one_position_pairs, proper_part_connected};
use crate::error::{Error, Result};
use crate::orders::{is_el_labeling, GeneratorOrder};
use crate::poset::{chain_word, maximal_chains, mobius_invariant, Chain, LabeledInterval, NodeId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingCheck {
    pub is_shelling: bool,
    /// First violating pair `(M, M′)` as positions in the given order.
    pub witness: Option<(usize, usize)>,
}

/// Positions where two chains of equal length differ, as a bit mask.
fn diff_mask(a: &Chain, b: &Chain) -> u128 {
    let mut m = 0u128;
    for (k, (x, y)) in a.0.iter().zip(&b.0).enumerate() {
        if x != y {
            m |= 1 << k;
        }
    }
    m
}

/// Checks the shelling condition: for all `M` before `M′` there are `N` before `M′` and
/// `x ∈ M′` with `M ∩ M′ ⊆ N ∩ M′ = M′ ∖ {x}`.
pub fn is_shelling(l: &LabeledInterval, order: &[Chain]) -> Result<ShellingCheck> {
    let mut all = maximal_chains(l, usize::MAX)?;
    let mut given = order.to_vec();
    all.sort();
    given.sort();
    if all != given {
        return Err(Error::NotAPermutationOfChains);
    }
    if l.rank() >= 128 {
        return Err(Error::SizeCap { what: "rank for shelling checks".into(), limit: 127 });
    }
    for j in 1..order.len() {
        let masks: Vec<u128> = order[..j].iter().map(|m| diff_mask(m, &order[j])).collect();
        // positions x whose removal from M′ is realized by an earlier chain
        let x_mask = masks.iter().filter(|m| m.count_ones() == 1).fold(0u128, |a, &m| a | m);
        if let Some(i) = masks.iter().position(|&m| m & x_mask == 0) {
            return Ok(ShellingCheck { is_shelling: false, witness: Some((i, j)) });
        }
    }
    Ok(ShellingCheck { is_shelling: true, witness: None })
}

/// Sorts the chains by their label words under `ord`; the result is verified to be a shelling.
pub fn shelling_from_el(l: &LabeledInterval, ord: &GeneratorOrder) -> Result<Vec<Chain>> {
    if !is_el_labeling(l, ord)?.holds {
        return Err(Error::NotElLabeling);
    }
    let pos = ord.positions(l)?;
    let mut keyed: Vec<(Vec<usize>, Chain)> = maximal_chains(l, usize::MAX)?
        .into_iter()
        .map(|c| chain_word(l, &c).map(|w| (w.0.iter().map(|&a| pos[a]).collect(), c)))
        .collect::<Result<_>>()?;
    keyed.sort();
    let order: Vec<Chain> = keyed.into_iter().map(|(_, c)| c).collect();
    if !is_shelling(l, &order)?.is_shelling {
        return Err(Error::OracleDisagreement("lexicographic order of an EL-labeling is not a shelling".into()));
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NotShellableReason {
    /// A rank-3 interval with disconnected proper part; intervals of shellable posets are shellable.
    Rank3Interval { x: NodeId, y: NodeId },
    /// The chain graph itself is disconnected.
    ChainGraphDisconnected,
    /// Every shelling prefix was explored.
    ExhaustiveSearch { explored: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ShellingOutcome {
    Shelling(Vec<Chain>),
    NotShellable(NotShellableReason),
    Inconclusive { budget: u64, explored: u64 },
}

impl ShellingOutcome {
    pub fn is_shellable(&self) -> Option<bool> {
        match self {
            ShellingOutcome::Shelling(_) => Some(true),
            ShellingOutcome::NotShellable(_) => Some(false),
            ShellingOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Decides shellability: rank ≤ 2 directly, rank-3 intervals by proper-part connectivity,
/// and otherwise by depth-first search over shelling prefixes with memoized dead ends.
pub fn search_shelling(l: &LabeledInterval, budget: u64, chain_cap: usize) -> Result<ShellingOutcome> {
    let chains = maximal_chains(l, chain_cap)?;
    if l.rank() <= 2 {
        return Ok(ShellingOutcome::Shelling(chains));
    }
    for x in 0..l.node_count() {
        for y in l.above(x).ones() {
            if l.node_rank(y) == l.node_rank(x) + 3 && !proper_part_connected(l, x, y) {
                return Ok(ShellingOutcome::NotShellable(NotShellableReason::Rank3Interval { x, y }));
            }
        }
    }
    if l.rank() >= 128 {
        return Err(Error::SizeCap { what: "rank for shelling search".into(), limit: 127 });
    }
    let adjacency = one_position_pairs(&chains);
    if crate::hurwitz::components(chains.len(), &adjacency).len() > 1 {
        return Ok(ShellingOutcome::NotShellable(NotShellableReason::ChainGraphDisconnected));
    }
    // facets attached along their whole boundary: their number equals |μ| in any shelling
    let spheres = mobius_invariant(l)?.unsigned_abs();
    let search = Search::new(&chains, &adjacency, l.rank(), spheres, budget);
    Ok(search.run())
}

struct Search<'a> {
    chains: &'a [Chain],
    neighbors: Vec<Vec<(usize, u128)>>,
    full: u128,
    spheres: u64,
    budget: u64,
    explored: AtomicU64,
    exhausted: AtomicBool,
    dead: Vec<Mutex<HashSet<FixedBitSet>>>,
    found: Mutex<Option<Vec<usize>>>,
    done: AtomicBool,
}

const SHARDS: usize = 64;

impl<'a> Search<'a> {
    fn new(chains: &'a [Chain], adjacency: &[(usize, usize)], rank: usize, spheres: u64, budget: u64) -> Self {
        let mut neighbors = vec![Vec::new(); chains.len()];
        for &(a, b) in adjacency {
            let m = diff_mask(&chains[a], &chains[b]);
            neighbors[a].push((b, m));
            neighbors[b].push((a, m));
        }
        let full = ((1u128 << rank) - 1) & !1;
        Search {
            chains,
            neighbors,
            full,
            spheres,
            budget,
            explored: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            dead: (0..SHARDS).map(|_| Mutex::new(HashSet::new())).collect(),
            found: Mutex::new(None),
            done: AtomicBool::new(false),
        }
    }

    fn shard(set: &FixedBitSet) -> usize {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        set.hash(&mut h);
        h.finish() as usize % SHARDS
    }

    /// Restriction mask of `c` against the placed set, or `None` if `c` cannot come next.
    fn attach(&self, placed: &FixedBitSet, placed_list: &[usize], c: usize) -> Option<u128> {
        let x_mask = self.neighbors[c].iter().filter(|(n, _)| placed.contains(*n)).fold(0u128, |a, &(_, m)| a | m);
        if x_mask == 0 {
            return None;
        }
        for &m in placed_list {
            if diff_mask(&self.chains[m], &self.chains[c]) & x_mask == 0 {
                return None;
            }
        }
        Some(x_mask)
    }

    fn run(self) -> ShellingOutcome {
        let n = self.chains.len();
        (0..n).into_par_iter().for_each(|first| {
            if self.done.load(Ordering::Relaxed) {
                return;
            }
            let mut placed = FixedBitSet::with_capacity(n);
            placed.insert(first);
            let mut list = vec![first];
            if self.rec(&mut placed, &mut list, 0) {
                let mut f = self.found.lock().unwrap();
                if f.is_none() {
                    *f = Some(list);
                }
                self.done.store(true, Ordering::Relaxed);
            }
        });
        let explored = self.explored.load(Ordering::Relaxed);
        if let Some(list) = self.found.into_inner().unwrap() {
            return ShellingOutcome::Shelling(list.into_iter().map(|i| self.chains[i].clone()).collect());
        }
        if self.exhausted.load(Ordering::Relaxed) {
            return ShellingOutcome::Inconclusive { budget: self.budget, explored };
        }
        ShellingOutcome::NotShellable(NotShellableReason::ExhaustiveSearch { explored })
    }

    fn rec(&self, placed: &mut FixedBitSet, list: &mut Vec<usize>, full_attached: u64) -> bool {
        if list.len() == self.chains.len() {
            return full_attached == self.spheres;
        }
        if self.done.load(Ordering::Relaxed) || self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        if self.explored.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        let shard = Self::shard(placed);
        if self.dead[shard].lock().unwrap().contains(placed) {
            return false;
        }
        let mut cands: Vec<(usize, u128)> = Vec::new();
        let mut frontier: HashMap<usize, ()> = HashMap::new();
        for &p in list.iter() {
            for &(c, _) in &self.neighbors[p] {
                if !placed.contains(c) {
                    frontier.insert(c, ());
                }
            }
        }
        let mut fr: Vec<usize> = frontier.into_keys().collect();
        fr.sort();
        for c in fr {
            if let Some(mask) = self.attach(placed, list, c) {
                cands.push((c, mask));
            }
        }
        for (c, mask) in cands {
            let extra = u64::from(mask == self.full);
            if full_attached + extra > self.spheres {
                continue;
            }
            placed.insert(c);
            list.push(c);
            if self.rec(placed, list, full_attached + extra) {
                return true;
            }
            list.pop();
            placed.set(c, false);
        }
        if !self.exhausted.load(Ordering::Relaxed) && !self.done.load(Ordering::Relaxed) {
            self.dead[shard].lock().unwrap().insert(placed.clone());
        }
        false
    }
}

//! Linear orders on the generator alphabet: rising words, compatibility, F-sets,
//! the well-covered property and EL-labelings.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::{label_cycles_between, rank2_label_cycles};
use crate::poset::{chain_word, chains_between, maximal_chains, Factorization, LabelId, LabeledInterval, NodeId};

/// A linear order on labels, listed from the minimum up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorOrder(pub Vec<LabelId>);

impl GeneratorOrder {
    /// Parses comma-separated label names.
    pub fn parse(l: &LabeledInterval, s: &str) -> Result<Self> {
        let ids = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| l.label_by_name(t).ok_or_else(|| Error::UnknownLabel(t.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorOrder(ids))
    }

    pub fn from_names(l: &LabeledInterval, names: &[&str]) -> Result<Self> {
        Self::parse(l, &names.join(","))
    }

    /// Labels in alphabet order.
    pub fn natural(l: &LabeledInterval) -> Self {
        GeneratorOrder(l.occurring_labels())
    }

    pub fn names(&self, l: &LabeledInterval) -> Vec<String> {
        self.0.iter().map(|&a| l.label_name(a).to_string()).collect()
    }

    pub fn display(&self, l: &LabeledInterval) -> String {
        self.names(l).join(" < ")
    }

    /// The order starting at position `t` and wrapping around.
    pub fn cyclic_shift(&self, t: usize) -> Self {
        let n = self.0.len();
        GeneratorOrder((0..n).map(|i| self.0[(i + t) % n]).collect())
    }

    /// Position table indexed by label id; `usize::MAX` for labels the order omits.
    pub fn positions(&self, l: &LabeledInterval) -> Result<Vec<usize>> {
        let mut pos = vec![usize::MAX; l.alphabet().len()];
        for (i, &a) in self.0.iter().enumerate() {
            if a >= pos.len() {
                return Err(Error::UnknownLabel(a.to_string()));
            }
            if pos[a] != usize::MAX {
                return Err(Error::Parse(format!("label {} listed twice", l.label_name(a))));
            }
            pos[a] = i;
        }
        if let Some(&a) = l.occurring_labels().iter().find(|&&a| pos[a] == usize::MAX) {
            return Err(Error::IncompleteOrder(l.label_name(a).to_string()));
        }
        Ok(pos)
    }
}

fn is_rising(w: &[LabelId], pos: &[usize]) -> bool {
    w.windows(2).all(|p| pos[p[0]] <= pos[p[1]])
}

/// Maximal-chain words that weakly increase under `ord`.
pub fn rising_factorizations(l: &LabeledInterval, ord: &GeneratorOrder, cap: usize) -> Result<Vec<Factorization>> {
    l.require_labels()?;
    let pos = ord.positions(l)?;
    let mut out = Vec::new();
    for c in maximal_chains(l, cap)? {
        let w = chain_word(l, &c)?;
        if is_rising(&w.0, &pos) {
            out.push(w);
        }
    }
    Ok(out)
}

/// `rise(⊤; ≺)` over precomputed words.
pub fn rise_of_words(words: &[Factorization], pos: &[usize]) -> usize {
    words.iter().filter(|w| is_rising(&w.0, pos)).count()
}

/// Length-2 words below each rank-2 node, as `(node, [(a, b)])`.
pub fn rank2_words(l: &LabeledInterval) -> Vec<(NodeId, Vec<(LabelId, LabelId)>)> {
    l.nodes_of_rank(2)
        .into_iter()
        .map(|g| {
            let ws = l.down(g).iter().map(|&(z, q)| (l.label(l.bottom(), z).unwrap(), q.unwrap())).collect();
            (g, ws)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    pub compatible: bool,
    /// First rank-2 node without exactly one rising word, with its rising words.
    pub witness: Option<(NodeId, Vec<Factorization>)>,
}

pub fn is_compatible(l: &LabeledInterval, ord: &GeneratorOrder) -> Result<Compatibility> {
    l.require_labels()?;
    let pos = ord.positions(l)?;
    Ok(compatibility_with(l, &rank2_words(l), &pos))
}

fn compatibility_with(l: &LabeledInterval, r2: &[(NodeId, Vec<(LabelId, LabelId)>)], pos: &[usize]) -> Compatibility {
    let _ = l;
    for (g, ws) in r2 {
        let rising: Vec<Factorization> =
            ws.iter().filter(|&&(a, b)| pos[a] <= pos[b]).map(|&(a, b)| Factorization(vec![a, b])).collect();
        if rising.len() != 1 {
            return Compatibility { compatible: false, witness: Some((*g, rising)) };
        }
    }
    Compatibility { compatible: true, witness: None }
}

/// Every linear order of the occurring labels.
pub fn all_orders(l: &LabeledInterval) -> Vec<GeneratorOrder> {
    let labels = l.occurring_labels();
    let k = labels.len();
    labels.into_iter().permutations(k).map(GeneratorOrder).collect()
}

/// Brute force: test every permutation of the occurring labels.
pub fn compatible_orders_brute_force(l: &LabeledInterval) -> Result<Vec<GeneratorOrder>> {
    l.require_labels()?;
    let labels = l.occurring_labels();
    let r2 = rank2_words(l);
    let k = labels.len();
    if k <= 1 {
        return Ok(vec![GeneratorOrder(labels)]);
    }
    let mut out: Vec<GeneratorOrder> = (0..k)
        .into_par_iter()
        .flat_map_iter(|first| {
            let rest: Vec<LabelId> = labels.iter().copied().filter(|&a| a != labels[first]).collect();
            let r2 = &r2;
            let alpha = l.alphabet().len();
            let head = labels[first];
            rest.into_iter().permutations(k - 1).filter_map(move |p| {
                let mut seq = Vec::with_capacity(k);
                seq.push(head);
                seq.extend(p);
                let mut pos = vec![usize::MAX; alpha];
                for (i, &a) in seq.iter().enumerate() {
                    pos[a] = i;
                }
                compatibility_with(l, r2, &pos).compatible.then_some(GeneratorOrder(seq))
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Constraint search: pick the rising edge of every label cycle, keep the remaining
/// edges `a → b` as `b ≺ a`, and emit all linear extensions of acyclic choices.
pub fn compatible_orders_by_breaks(l: &LabeledInterval, budget: u64) -> Result<Vec<GeneratorOrder>> {
    l.require_labels()?;
    let labels = l.occurring_labels();
    let mut cycles: Vec<Vec<LabelId>> = Vec::new();
    for g in l.nodes_of_rank(2) {
        let cs = rank2_label_cycles(l, g)?;
        if cs.len() > 1 {
            return Ok(Vec::new());
        }
        if cs[0].len() >= 2 {
            cycles.push(cs[0].clone());
        }
    }
    let k = labels.len();
    let local: HashMap<LabelId, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|a| local[a]).collect()).collect();
    let steps = AtomicU64::new(0);
    let mut found = BTreeSet::new();
    let reach = vec![FixedBitSet::with_capacity(k); k];
    search_breaks(&cycles, 0, reach, &steps, budget, &mut found)?;
    let r2 = rank2_words(l);
    let alpha = l.alphabet().len();
    let mut out = Vec::with_capacity(found.len());
    for seq in found {
        let ord = GeneratorOrder(seq.iter().map(|&i| labels[i]).collect());
        let mut pos = vec![usize::MAX; alpha];
        for (i, &a) in ord.0.iter().enumerate() {
            pos[a] = i;
        }
        if !compatibility_with(l, &r2, &pos).compatible {
            return Err(Error::OracleDisagreement(format!(
                "break search produced incompatible order {}",
                ord.display(l)
            )));
        }
        out.push(ord);
    }
    out.sort();
    Ok(out)
}

/// `reach[u]` holds every `v` with `v ≺ u` forced so far.
fn add_greater(reach: &mut [FixedBitSet], u: usize, v: usize) -> bool {
    if u == v || reach[v].contains(u) {
        return false;
    }
    if reach[u].contains(v) {
        return true;
    }
    let mut add = reach[v].clone();
    add.insert(v);
    for w in 0..reach.len() {
        if w == u || reach[w].contains(u) {
            reach[w].union_with(&add);
        }
    }
    true
}

fn search_breaks(
    cycles: &[Vec<usize>],
    i: usize,
    reach: Vec<FixedBitSet>,
    steps: &AtomicU64,
    budget: u64,
    found: &mut BTreeSet<Vec<usize>>,
) -> Result<()> {
    if steps.fetch_add(1, Ordering::Relaxed) > budget {
        return Err(Error::SearchBudgetExceeded { limit: budget });
    }
    if i == cycles.len() {
        let k = reach.len();
        let mut remaining = FixedBitSet::with_capacity(k);
        remaining.insert_range(..);
        let mut seq = Vec::with_capacity(k);
        return linear_extensions(&reach, &mut remaining, &mut seq, steps, budget, found);
    }
    let cyc = &cycles[i];
    let m = cyc.len();
    'choice: for brk in 0..m {
        let mut r = reach.clone();
        for e in 0..m {
            if e == brk {
                continue;
            }
            if !add_greater(&mut r, cyc[e], cyc[(e + 1) % m]) {
                continue 'choice;
            }
        }
        // the rising edge itself must not be forced downward
        if r[cyc[brk]].contains(cyc[(brk + 1) % m]) {
            continue;
        }
        search_breaks(cycles, i + 1, r, steps, budget, found)?;
    }
    Ok(())
}

fn linear_extensions(
    reach: &[FixedBitSet],
    remaining: &mut FixedBitSet,
    seq: &mut Vec<usize>,
    steps: &AtomicU64,
    budget: u64,
    found: &mut BTreeSet<Vec<usize>>,
) -> Result<()> {
    if remaining.count_ones(..) == 0 {
        found.insert(seq.clone());
        return Ok(());
    }
    if steps.fetch_add(1, Ordering::Relaxed) > budget {
        return Err(Error::SearchBudgetExceeded { limit: budget });
    }
    let cands: Vec<usize> = remaining.ones().filter(|&m| reach[m].is_disjoint(remaining)).collect();
    for m in cands {
        remaining.set(m, false);
        seq.push(m);
        linear_extensions(reach, remaining, seq, steps, budget, found)?;
        seq.pop();
        remaining.insert(m);
    }
    Ok(())
}

/// All compatible orders, sorted. Brute force for at most eight labels, constraint search above.
pub fn enumerate_compatible_orders(l: &LabeledInterval, budget: u64) -> Result<Vec<GeneratorOrder>> {
    if l.occurring_labels().len() <= 8 {
        compatible_orders_brute_force(l)
    } else {
        compatible_orders_by_breaks(l, budget)
    }
}

// ---------------------------------------------------------------- F-sets and well-covered

/// Atoms of `[x, y]`.
fn atoms_in(l: &LabeledInterval, x: NodeId, y: NodeId) -> Vec<(NodeId, LabelId)> {
    let below = l.below(y);
    l.up(x).iter().filter(|(z, _)| below.contains(*z)).map(|&(z, a)| (z, a.unwrap())).collect()
}

/// `F(a)` inside `[x, y]`: covers `g ≤ y` of the atom `a` that also cover an atom with a smaller label.
fn f_set_in(l: &LabeledInterval, pos: &[usize], x: NodeId, y: NodeId, a: NodeId) -> Vec<NodeId> {
    let below = l.below(y);
    let la = l.label(x, a).unwrap();
    let mut out: Vec<NodeId> = l
        .up(a)
        .iter()
        .map(|&(g, _)| g)
        .filter(|&g| below.contains(g))
        .filter(|&g| l.down(g).iter().any(|&(b, _)| b != a && l.label(x, b).is_some_and(|lb| pos[lb] < pos[la])))
        .collect();
    out.sort();
    out
}

fn well_covered_in(l: &LabeledInterval, pos: &[usize], x: NodeId, y: NodeId) -> bool {
    let atoms = atoms_in(l, x, y);
    let Some(&(min_atom, _)) = atoms.iter().min_by_key(|(_, lab)| pos[*lab]) else {
        return true;
    };
    atoms.iter().all(|&(a, _)| (a == min_atom) == f_set_in(l, pos, x, y, a).is_empty())
}

/// `F_≺(a; ⊤)`; for compatible orders also cross-checked against the label criterion
/// `λ(a, g) ≺ λ(e, a)`.
pub fn f_set(l: &LabeledInterval, ord: &GeneratorOrder, a: NodeId) -> Result<Vec<NodeId>> {
    l.require_labels()?;
    if !l.covers(l.bottom(), a) {
        return Err(Error::NotAnAtom(a));
    }
    let pos = ord.positions(l)?;
    let f = f_set_in(l, &pos, l.bottom(), l.top(), a);
    if compatibility_with(l, &rank2_words(l), &pos).compatible {
        let la = l.label(l.bottom(), a).unwrap();
        let mut by_label: Vec<NodeId> =
            l.up(a).iter().filter(|&&(_, lg)| pos[lg.unwrap()] < pos[la]).map(|&(g, _)| g).collect();
        by_label.sort();
        if by_label != f {
            return Err(Error::OracleDisagreement(format!(
                "F-set of {} differs from the label criterion",
                l.node_name(a)
            )));
        }
    }
    Ok(f)
}

pub fn is_well_covered(l: &LabeledInterval, ord: &GeneratorOrder) -> Result<bool> {
    l.require_labels()?;
    let pos = ord.positions(l)?;
    Ok(well_covered_in(l, &pos, l.bottom(), l.top()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalVerdict {
    pub holds: bool,
    /// Lexicographically least failing interval `(x, y)`.
    pub witness: Option<(NodeId, NodeId)>,
}

fn comparable_pairs(l: &LabeledInterval, min_gap: usize) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for x in 0..l.node_count() {
        for y in l.above(x).ones() {
            if l.node_rank(y) >= l.node_rank(x) + min_gap {
                out.push((x, y));
            }
        }
    }
    out
}

/// Every interval is well-covered under the restricted order.
pub fn is_totally_well_covered(l: &LabeledInterval, ord: &GeneratorOrder) -> Result<IntervalVerdict> {
    l.require_labels()?;
    let pos = ord.positions(l)?;
    let witness = comparable_pairs(l, 2).into_par_iter().filter(|&(x, y)| !well_covered_in(l, &pos, x, y)).min();
    Ok(IntervalVerdict { holds: witness.is_none(), witness })
}

// ---------------------------------------------------------------- EL-labelings

/// Every interval has exactly one rising maximal chain, and it is lexicographically first.
pub fn is_el_labeling(l: &LabeledInterval, ord: &GeneratorOrder) -> Result<IntervalVerdict> {
    l.require_labels()?;
    let pos = ord.positions(l)?;
    let witness = (0..l.node_count()).into_par_iter().filter_map(|x| el_failure_from(l, &pos, x).map(|y| (x, y))).min();
    Ok(IntervalVerdict { holds: witness.is_none(), witness })
}

/// Least `y > x` whose interval `[x, y]` violates the EL condition.
fn el_failure_from(l: &LabeledInterval, pos: &[usize], x: NodeId) -> Option<NodeId> {
    struct St {
        rising_by_last: Vec<(usize, u64)>,
        lexmin: Vec<usize>,
        lexmin_rising: bool,
    }
    let mut order: Vec<NodeId> = l.above(x).ones().collect();
    order.sort_by_key(|&z| (l.node_rank(z), z));
    let mut st: HashMap<NodeId, St> = HashMap::new();
    let mut bad = None;
    for &y in &order {
        if y == x {
            continue;
        }
        let mut by_last: HashMap<usize, u64> = HashMap::new();
        let mut best: Option<(Vec<usize>, bool)> = None;
        for &(z, lab) in l.down(y) {
            let p = pos[lab.unwrap()];
            let (count, cand, rising) = if z == x {
                (1u64, vec![p], true)
            } else if let Some(s) = st.get(&z) {
                let c =
                    s.rising_by_last.iter().filter(|&&(q, _)| q <= p).map(|&(_, c)| c).fold(0u64, u64::saturating_add);
                let mut w = s.lexmin.clone();
                let r = s.lexmin_rising && *w.last().unwrap() <= p;
                w.push(p);
                (c, w, r)
            } else {
                continue;
            };
            if count > 0 {
                let e = by_last.entry(p).or_insert(0);
                *e = e.saturating_add(count);
            }
            if best.as_ref().is_none_or(|(b, _)| cand < *b) {
                best = Some((cand, rising));
            }
        }
        let (lexmin, lexmin_rising) = best.expect("node above x has a lower cover above x");
        let total = by_last.values().fold(0u64, |a, &b| a.saturating_add(b));
        if (total != 1 || !lexmin_rising) && bad.is_none_or(|b| y < b) {
            bad = Some(y);
        }
        let mut rising_by_last: Vec<(usize, u64)> = by_last.into_iter().collect();
        rising_by_last.sort();
        st.insert(y, St { rising_by_last, lexmin, lexmin_rising });
    }
    bad
}

/// Direct check by enumerating the chains of every interval; used to cross-check [`is_el_labeling`].
pub fn is_el_labeling_brute(l: &LabeledInterval, ord: &GeneratorOrder, cap: usize) -> Result<IntervalVerdict> {
    l.require_labels()?;
    let pos = ord.positions(l)?;
    for (x, y) in comparable_pairs(l, 1) {
        let mut words: Vec<Vec<usize>> = chains_between(l, x, y, cap)?
            .iter()
            .map(|c| chain_word(l, c).map(|w| w.0.iter().map(|&a| pos[a]).collect()))
            .collect::<Result<_>>()?;
        words.sort();
        let rising = words.iter().filter(|w| w.windows(2).all(|p| p[0] <= p[1])).count();
        let first_rising = words[0].windows(2).all(|p| p[0] <= p[1]);
        if rising != 1 || !first_rising {
            return Ok(IntervalVerdict { holds: false, witness: Some((x, y)) });
        }
    }
    Ok(IntervalVerdict { holds: true, witness: None })
}

// ---------------------------------------------------------------- rank 2

/// Minimum of `rise(⊤; ≺)` over all orders of a rank-2 interval, with a minimizing order.
/// The order lists every Hurwitz orbit `a₁ → … → a_p` as `a_p ≺ … ≺ a₁`, so each orbit
/// contributes exactly one rising word. With `with_oracle`, the minimum is confirmed by
/// brute force (alphabets of at most eight labels).
pub fn min_rise_rank2(l2: &LabeledInterval, with_oracle: bool) -> Result<(usize, GeneratorOrder)> {
    l2.require_labels()?;
    if l2.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, found: l2.rank() });
    }
    let cycles = label_cycles_between(l2, l2.bottom(), l2.top())?;
    let mut seq = Vec::new();
    for c in &cycles {
        seq.extend(c.iter().rev());
    }
    let ord = GeneratorOrder(seq);
    let pos = ord.positions(l2)?;
    let words: Vec<Factorization> =
        maximal_chains(l2, usize::MAX)?.iter().map(|c| chain_word(l2, c)).collect::<Result<_>>()?;
    let rise = rise_of_words(&words, &pos);
    if rise != cycles.len() {
        return Err(Error::OracleDisagreement(format!(
            "constructed order has {rise} rising words for {} orbits",
            cycles.len()
        )));
    }
    if with_oracle && l2.occurring_labels().len() <= 8 {
        let best = all_orders(l2).iter().map(|o| rise_of_words(&words, &o.positions(l2).unwrap())).min().unwrap_or(0);
        if best != rise {
            return Err(Error::OracleDisagreement(format!(
                "brute-force minimum rise {best} differs from orbit count {rise}"
            )));
        }
    }
    Ok((rise, ord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_interval;

    #[test]
    fn both_enumerations_agree() {
        for name in ["sym4_long_cycle", "dihedral8_rt", "ex44_rrrt", "thm612_n3", "boolean_3"] {
            let l = fixture_interval(name).unwrap();
            let a = compatible_orders_brute_force(&l).unwrap();
            let mut b = compatible_orders_by_breaks(&l, 1 << 20).unwrap();
            b.sort();
            assert_eq!(a, b, "{name}");
        }
        assert_eq!(compatible_orders_brute_force(&fixture_interval("sym4_long_cycle").unwrap()).unwrap().len(), 48);
    }

    #[test]
    fn boolean_orders_are_all_el() {
        let l = fixture_interval("boolean_3").unwrap();
        for ord in all_orders(&l) {
            assert!(is_compatible(&l, &ord).unwrap().compatible);
            assert!(is_el_labeling(&l, &ord).unwrap().holds);
            assert_eq!(rising_factorizations(&l, &ord, 10).unwrap().len(), 1);
        }
    }

    #[test]
    fn el_check_matches_brute_force() {
        for name in ["sym4_long_cycle", "ex513_rst", "thm612_n3"] {
            let l = fixture_interval(name).unwrap();
            for ord in all_orders(&l).into_iter().take(200) {
                assert_eq!(
                    is_el_labeling(&l, &ord).unwrap().holds,
                    is_el_labeling_brute(&l, &ord, 10_000).unwrap().holds,
                    "{name} {}",
                    ord.display(&l)
                );
            }
        }
    }

    #[test]
    fn order_parsing() {
        let l = fixture_interval("ex44_rrrt").unwrap();
        assert!(GeneratorOrder::parse(&l, "r,t").is_ok());
        assert!(GeneratorOrder::parse(&l, "r,zz").is_err());
    }
}

//! Bounded graded posets with optionally labeled Hasse diagrams.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElementId, GroupOracle};
use crate::report::{Check, ValidationReport};

pub type NodeId = usize;
pub type LabelId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub name: String,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub label: Option<LabelId>,
}

/// A maximal chain, listed from bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Chain(pub Vec<NodeId>);

/// The label word of a maximal chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factorization(pub Vec<LabelId>);

/// Group elements behind the nodes of an interval built from a [`GroupOracle`].
#[derive(Clone, Debug)]
pub struct GroupSemantics {
    pub oracle: Arc<GroupOracle>,
    pub elements: Vec<ElementId>,
    node_of: HashMap<ElementId, NodeId>,
}

impl GroupSemantics {
    pub fn new(oracle: Arc<GroupOracle>, elements: Vec<ElementId>) -> Self {
        let node_of = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        GroupSemantics { oracle, elements, node_of }
    }

    pub fn node_of(&self, x: ElementId) -> Option<NodeId> {
        self.node_of.get(&x).copied()
    }
}

type Adj = Vec<Vec<(NodeId, Option<LabelId>)>>;

#[derive(Clone, Debug)]
pub struct LabeledInterval {
    name: Option<String>,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    bottom: NodeId,
    top: NodeId,
    alphabet: Vec<String>,
    up: Adj,
    down: Adj,
    out_label: HashMap<(NodeId, LabelId), NodeId>,
    group: Option<GroupSemantics>,
    below: OnceLock<Vec<FixedBitSet>>,
    above: OnceLock<Vec<FixedBitSet>>,
}

impl LabeledInterval {
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>, bottom: NodeId, top: NodeId, alphabet: Vec<String>) -> Result<Self> {
        let n = nodes.len();
        if bottom >= n || top >= n {
            return Err(Error::InvalidInterval("bottom or top out of range".into()));
        }
        let mut up: Adj = vec![Vec::new(); n];
        let mut down: Adj = vec![Vec::new(); n];
        let mut out_label = HashMap::new();
        for e in &edges {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidInterval(format!("edge {}->{} out of range", e.from, e.to)));
            }
            if let Some(l) = e.label {
                if l >= alphabet.len() {
                    return Err(Error::InvalidInterval(format!("label {l} not in alphabet")));
                }
                out_label.entry((e.from, l)).or_insert(e.to);
            }
            up[e.from].push((e.to, e.label));
            down[e.to].push((e.from, e.label));
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort();
        }
        Ok(LabeledInterval {
            name: None,
            nodes,
            edges,
            bottom,
            top,
            alphabet,
            up,
            down,
            out_label,
            group: None,
            below: OnceLock::new(),
            above: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub(crate) fn attach_group(&mut self, g: GroupSemantics) {
        self.group = Some(g);
    }

    pub fn group(&self) -> Option<&GroupSemantics> {
        self.group.as_ref()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_name(&self, x: NodeId) -> &str {
        &self.nodes[x].name
    }

    pub fn node_rank(&self, x: NodeId) -> usize {
        self.nodes[x].rank
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name)
    }

    /// Rank of the top element.
    pub fn rank(&self) -> usize {
        self.nodes[self.top].rank
    }

    pub fn bottom(&self) -> NodeId {
        self.bottom
    }

    pub fn top(&self) -> NodeId {
        self.top
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.alphabet[l]
    }

    pub fn label_by_name(&self, name: &str) -> Option<LabelId> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Upper covers of `x`, sorted by node id.
    pub fn up(&self, x: NodeId) -> &[(NodeId, Option<LabelId>)] {
        &self.up[x]
    }

    /// Lower covers of `x`, sorted by node id.
    pub fn down(&self, x: NodeId) -> &[(NodeId, Option<LabelId>)] {
        &self.down[x]
    }

    /// True when every Hasse edge carries a label.
    pub fn is_labeled(&self) -> bool {
        self.edges.iter().all(|e| e.label.is_some())
    }

    pub fn require_labels(&self) -> Result<()> {
        if self.is_labeled() {
            Ok(())
        } else {
            Err(Error::Unlabeled)
        }
    }

    pub fn label(&self, x: NodeId, y: NodeId) -> Option<LabelId> {
        self.up[x].iter().find(|(t, _)| *t == y).and_then(|(_, l)| *l)
    }

    pub fn covers(&self, x: NodeId, y: NodeId) -> bool {
        self.up[x].iter().any(|(t, _)| *t == y)
    }

    /// The upper cover of `x` reached along label `l`.
    pub fn out_by_label(&self, x: NodeId, l: LabelId) -> Option<NodeId> {
        self.out_label.get(&(x, l)).copied()
    }

    pub fn nodes_of_rank(&self, k: usize) -> Vec<NodeId> {
        (0..self.nodes.len()).filter(|&x| self.nodes[x].rank == k).collect()
    }

    pub fn atoms(&self) -> Vec<NodeId> {
        self.up[self.bottom].iter().map(|(t, _)| *t).collect()
    }

    /// Node ids sorted by rank, ties by id.
    pub fn rank_order(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = (0..self.nodes.len()).collect();
        ids.sort_by_key(|&x| (self.nodes[x].rank, x));
        ids
    }

    /// `below(y)` holds every `z ≤ y`.
    pub fn below(&self, y: NodeId) -> &FixedBitSet {
        &self.below.get_or_init(|| {
            let n = self.nodes.len();
            let mut sets = vec![FixedBitSet::with_capacity(n); n];
            for x in self.rank_order() {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                for &(z, _) in &self.down[x] {
                    if self.nodes[z].rank < self.nodes[x].rank {
                        s.union_with(&sets[z]);
                    }
                }
                sets[x] = s;
            }
            sets
        })[y]
    }

    /// `above(x)` holds every `z ≥ x`.
    pub fn above(&self, x: NodeId) -> &FixedBitSet {
        &self.above.get_or_init(|| {
            let n = self.nodes.len();
            let mut sets = vec![FixedBitSet::with_capacity(n); n];
            for y in self.rank_order().into_iter().rev() {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(y);
                for &(z, _) in &self.up[y] {
                    if self.nodes[z].rank > self.nodes[y].rank {
                        s.union_with(&sets[z]);
                    }
                }
                sets[y] = s;
            }
            sets
        })[x]
    }

    pub fn leq(&self, x: NodeId, y: NodeId) -> bool {
        self.below(y).contains(x)
    }

    /// Labels that occur on some Hasse edge, in alphabet order.
    pub fn occurring_labels(&self) -> Vec<LabelId> {
        let mut seen = vec![false; self.alphabet.len()];
        for e in &self.edges {
            if let Some(l) = e.label {
                seen[l] = true;
            }
        }
        (0..self.alphabet.len()).filter(|&l| seen[l]).collect()
    }

    /// Renders a word compactly: letters are concatenated when every label name has length 1.
    pub fn format_word(&self, w: &Factorization) -> String {
        let names: Vec<&str> = w.0.iter().map(|&l| self.label_name(l)).collect();
        if names.iter().all(|s| s.chars().count() == 1) {
            names.concat()
        } else {
            format!("({})", names.join(", "))
        }
    }

    pub fn format_chain(&self, c: &Chain) -> String {
        c.0.iter().map(|&x| self.node_name(x)).collect::<Vec<_>>().join(" < ")
    }
}

// ---------------------------------------------------------------- JSON

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub name: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// On-disk format of a [`LabeledInterval`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntervalJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    pub bottom: usize,
    pub top: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
}

impl LabeledInterval {
    pub fn from_json(j: &IntervalJson) -> Result<Self> {
        let n = j.nodes.len();
        let mut nodes: Vec<Option<Node>> = vec![None; n];
        for nd in &j.nodes {
            if nd.id >= n || nodes[nd.id].is_some() {
                return Err(Error::InvalidInterval(format!("node ids must be 0..{n} without repeats")));
            }
            nodes[nd.id] = Some(Node { name: nd.name.clone(), rank: nd.rank });
        }
        let nodes: Vec<Node> = nodes.into_iter().map(Option::unwrap).collect();
        let mut alphabet = j.alphabet.clone().unwrap_or_default();
        let mut edges = Vec::new();
        for e in &j.edges {
            let label = match &e.label {
                None => None,
                Some(s) => Some(match alphabet.iter().position(|a| a == s) {
                    Some(i) => i,
                    None if j.alphabet.is_none() => {
                        alphabet.push(s.clone());
                        alphabet.len() - 1
                    }
                    None => return Err(Error::UnknownLabel(s.clone())),
                }),
            };
            edges.push(Edge { from: e.from, to: e.to, label });
        }
        let mut li = LabeledInterval::new(nodes, edges, j.bottom, j.top, alphabet)?;
        li.name = j.name.clone();
        Ok(li)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> IntervalJson {
        IntervalJson {
            name: self.name.clone(),
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeJson { id, name: n.name.clone(), rank: n.rank })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { from: e.from, to: e.to, label: e.label.map(|l| self.alphabet[l].clone()) })
                .collect(),
            bottom: self.bottom,
            top: self.top,
            alphabet: Some(self.alphabet.clone()),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("interval serializes")
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", escape(&n.name));
        }
        for e in &self.edges {
            match e.label {
                Some(l) => {
                    let _ = writeln!(
                        s,
                        "  n{} -> n{} [arrowhead=none, label=\"{}\"];",
                        e.from,
                        e.to,
                        escape(&self.alphabet[l])
                    );
                }
                None => {
                    let _ = writeln!(s, "  n{} -> n{} [arrowhead=none];", e.from, e.to);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

// ---------------------------------------------------------------- validation

/// Checks boundedness, gradedness and, for labeled inputs, local cycle consistency.
pub fn validate_interval(l: &LabeledInterval) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = l.node_count();

    let graded = match l.edges.iter().find(|e| l.nodes[e.to].rank != l.nodes[e.from].rank + 1) {
        None => Check::pass("graded"),
        Some(e) => Check::fail(
            "graded",
            vec![e.from, e.to],
            format!("edge {} -> {} does not raise rank by one", l.node_name(e.from), l.node_name(e.to)),
        ),
    };
    let graded_ok = graded.passed;
    report.checks.push(graded);

    let bounded = (|| {
        if l.nodes[l.bottom].rank != 0 {
            return Check::fail("bounded", vec![l.bottom], "bottom does not have rank 0".into());
        }
        if let Some(x) = (0..n).find(|&x| x != l.bottom && l.nodes[x].rank == 0) {
            return Check::fail("bounded", vec![x], format!("second rank-0 node {}", l.node_name(x)));
        }
        let r = l.rank();
        if let Some(x) = (0..n).find(|&x| x != l.top && l.nodes[x].rank >= r) {
            return Check::fail("bounded", vec![x], format!("node {} is not below the top", l.node_name(x)));
        }
        if !graded_ok {
            return Check::fail("bounded", vec![], "reachability undefined without grading".into());
        }
        let above = l.above(l.bottom);
        let below = l.below(l.top);
        if let Some(x) = (0..n).find(|&x| !above.contains(x) || !below.contains(x)) {
            return Check::fail("bounded", vec![x], format!("node {} is not between bottom and top", l.node_name(x)));
        }
        Check::pass("bounded")
    })();
    report.checks.push(bounded);

    let mut seen = std::collections::HashSet::new();
    let simple = match l.edges.iter().find(|e| !seen.insert((e.from, e.to))) {
        None => Check::pass("simple edges"),
        Some(e) => Check::fail("simple edges", vec![e.from, e.to], "repeated Hasse edge".into()),
    };
    report.checks.push(simple);

    let labeled = l.edges.iter().filter(|e| e.label.is_some()).count();
    if labeled != 0 && labeled != l.edges.len() {
        let e = l.edges.iter().find(|e| e.label.is_none()).unwrap();
        report.checks.push(Check::fail(
            "labels present",
            vec![e.from, e.to],
            "some edges are labeled and some are not".into(),
        ));
        return report;
    }
    if labeled == 0 && !l.edges.is_empty() {
        return report;
    }
    report.checks.push(Check::pass("labels present"));

    let mut out_dup = Check::pass("distinct out-labels");
    'outer: for x in 0..n {
        let mut labels: Vec<LabelId> = l.up[x].iter().filter_map(|(_, lb)| *lb).collect();
        labels.sort();
        for w in labels.windows(2) {
            if w[0] == w[1] {
                out_dup = Check::fail(
                    "distinct out-labels",
                    vec![x],
                    format!("node {} has two out-edges labeled {}", l.node_name(x), l.label_name(w[0])),
                );
                break 'outer;
            }
        }
    }
    let out_ok = out_dup.passed;
    report.checks.push(out_dup);
    if !graded_ok || !out_ok {
        return report;
    }
    report.checks.push(rank2_consistency(l));
    report
}

fn rank2_consistency(l: &LabeledInterval) -> Check {
    for x in 0..l.node_count() {
        let mut words: HashMap<NodeId, Vec<(LabelId, LabelId)>> = HashMap::new();
        for &(z, p) in &l.up[x] {
            for &(g, q) in &l.up[z] {
                words.entry(g).or_default().push((p.unwrap(), q.unwrap()));
            }
        }
        let mut gs: Vec<_> = words.keys().copied().collect();
        gs.sort();
        for g in gs {
            let ws = &words[&g];
            let firsts: std::collections::HashSet<LabelId> = ws.iter().map(|w| w.0).collect();
            let mut seconds = std::collections::HashSet::new();
            for &(p, q) in ws {
                let bad = |why: &str| {
                    Check::fail(
                        "rank-2 cycle consistency",
                        vec![x, g],
                        format!(
                            "interval [{}, {}], word ({}, {}): {why}",
                            l.node_name(x),
                            l.node_name(g),
                            l.label_name(p),
                            l.label_name(q)
                        ),
                    )
                };
                let Some(w) = l.out_by_label(x, q) else {
                    return bad("no out-edge of the bottom carries the second letter");
                };
                if !l.covers(w, g) {
                    return bad("the second letter leaves the interval");
                }
                if !firsts.contains(&q) || !seconds.insert(q) {
                    return bad("label pairs do not close into disjoint cycles");
                }
            }
        }
    }
    Check::pass("rank-2 cycle consistency")
}

// ---------------------------------------------------------------- chains

/// Number of maximal chains from `x` to `y`, saturating at `u128::MAX`.
pub fn count_chains_between(l: &LabeledInterval, x: NodeId, y: NodeId) -> u128 {
    let below = l.below(y);
    let mut count: HashMap<NodeId, u128> = HashMap::new();
    count.insert(x, 1);
    let mut order: Vec<NodeId> = l.above(x).ones().filter(|&z| below.contains(z)).collect();
    order.sort_by_key(|&z| (l.node_rank(z), z));
    for z in order {
        let c = match count.get(&z) {
            Some(&c) => c,
            None => continue,
        };
        for &(t, _) in l.up(z) {
            if below.contains(t) {
                let e = count.entry(t).or_insert(0);
                *e = e.saturating_add(c);
            }
        }
    }
    count.get(&y).copied().unwrap_or(0)
}

pub fn count_chains(l: &LabeledInterval) -> u128 {
    count_chains_between(l, l.bottom, l.top)
}

/// Maximal chains of `[x, y]` in lexicographic node-id order.
pub fn chains_between(l: &LabeledInterval, x: NodeId, y: NodeId, cap: usize) -> Result<Vec<Chain>> {
    if !l.leq(x, y) {
        return Err(Error::NotComparable { x, y });
    }
    if count_chains_between(l, x, y) > cap as u128 {
        return Err(Error::ChainBudgetExceeded { limit: cap });
    }
    let below = l.below(y);
    let mut out = Vec::new();
    let mut path = vec![x];
    fn rec(l: &LabeledInterval, y: NodeId, below: &FixedBitSet, path: &mut Vec<NodeId>, out: &mut Vec<Chain>) {
        let z = *path.last().unwrap();
        if z == y {
            out.push(Chain(path.clone()));
            return;
        }
        for &(t, _) in l.up(z) {
            if below.contains(t) {
                path.push(t);
                rec(l, y, below, path, out);
                path.pop();
            }
        }
    }
    rec(l, y, below, &mut path, &mut out);
    Ok(out)
}

/// All maximal chains, in lexicographic node-id order.
pub fn maximal_chains(l: &LabeledInterval, cap: usize) -> Result<Vec<Chain>> {
    chains_between(l, l.bottom, l.top, cap)
}

pub fn chain_word(l: &LabeledInterval, c: &Chain) -> Result<Factorization> {
    c.0.windows(2).map(|w| l.label(w[0], w[1]).ok_or(Error::Unlabeled)).collect::<Result<Vec<_>>>().map(Factorization)
}

/// Follows a word upward from the bottom.
pub fn word_chain(l: &LabeledInterval, w: &Factorization) -> Result<Chain> {
    if w.0.len() != l.rank() {
        return Err(Error::RankMismatch { expected: l.rank(), found: w.0.len() });
    }
    let mut x = l.bottom;
    let mut out = vec![x];
    for &a in &w.0 {
        x = l.out_by_label(x, a).ok_or_else(|| Error::NoSuchEdge {
            node: x,
            label: l.alphabet.get(a).cloned().unwrap_or_else(|| a.to_string()),
        })?;
        out.push(x);
    }
    if x != l.top {
        return Err(Error::NoSuchEdge { node: x, label: "(does not end at top)".into() });
    }
    Ok(Chain(out))
}

/// Parses a word of label names: single-letter names concatenated, or names separated by
/// commas or whitespace.
pub fn parse_word(l: &LabeledInterval, s: &str) -> Result<Factorization> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let toks: Vec<String> = if s.contains(',') || s.contains(char::is_whitespace) {
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::to_string).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    };
    toks.iter()
        .map(|t| l.label_by_name(t).ok_or_else(|| Error::UnknownLabel(t.clone())))
        .collect::<Result<Vec<_>>>()
        .map(Factorization)
}

// ---------------------------------------------------------------- sub-intervals

/// Nodes of `[x, y]` in id order.
pub fn interval_nodes(l: &LabeledInterval, x: NodeId, y: NodeId) -> Vec<NodeId> {
    let b = l.below(y);
    l.above(x).ones().filter(|&z| b.contains(z)).collect()
}

/// The induced labeled poset on `[x, y]`, with ranks shifted so that `x` has rank 0.
pub fn subinterval(l: &LabeledInterval, x: NodeId, y: NodeId) -> Result<LabeledInterval> {
    if !l.leq(x, y) {
        return Err(Error::NotComparable { x, y });
    }
    let members = interval_nodes(l, x, y);
    let idx: HashMap<NodeId, NodeId> = members.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let base = l.node_rank(x);
    let nodes = members.iter().map(|&z| Node { name: l.nodes[z].name.clone(), rank: l.nodes[z].rank - base }).collect();
    let edges = l
        .edges
        .iter()
        .filter(|e| idx.contains_key(&e.from) && idx.contains_key(&e.to))
        .map(|e| Edge { from: idx[&e.from], to: idx[&e.to], label: e.label })
        .collect();
    let mut sub = LabeledInterval::new(nodes, edges, idx[&x], idx[&y], l.alphabet.clone())?;
    if let Some(g) = &l.group {
        let elements = members.iter().map(|&z| g.elements[z]).collect();
        sub.group = Some(GroupSemantics::new(g.oracle.clone(), elements));
    }
    if let Some(n) = &l.name {
        sub.name = Some(format!("{n}[{},{}]", l.node_name(x), l.node_name(y)));
    }
    Ok(sub)
}

// ---------------------------------------------------------------- duality

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DualityMethod {
    Group,
    Abstract,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DualityWitness {
    /// `K(node)` is not an element of the interval.
    NotInInterval { node: NodeId },
    /// `K` maps two nodes to the same node.
    Collision { a: NodeId, b: NodeId },
    /// The cover `from ⋖ to` is not reversed by `K`.
    Edge { from: NodeId, to: NodeId },
    /// Rank sizes are not symmetric at this rank.
    RankProfile { rank: usize },
    /// Exhaustive search found no order-reversing bijection.
    NoBijection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Duality {
    pub self_dual: bool,
    pub method: DualityMethod,
    pub witness: Option<DualityWitness>,
}

/// Tests whether `y ↦ bottom·y⁻¹·top` reverses the order, or, without group semantics,
/// searches for any order-reversing bijection.
pub fn duality_check(l: &LabeledInterval, budget: u64) -> Result<Duality> {
    match &l.group {
        Some(g) => Ok(group_duality(l, g)),
        None => abstract_duality(l, budget),
    }
}

fn group_duality(l: &LabeledInterval, g: &GroupSemantics) -> Duality {
    let o = &g.oracle;
    let b = g.elements[l.bottom];
    let t = g.elements[l.top];
    let fail = |w| Duality { self_dual: false, method: DualityMethod::Group, witness: Some(w) };
    let mut image = vec![0; l.node_count()];
    let mut hit: HashMap<NodeId, NodeId> = HashMap::new();
    for y in 0..l.node_count() {
        let Some(yi) = o.inv(g.elements[y]) else {
            return fail(DualityWitness::NotInInterval { node: y });
        };
        let k = o.mul(o.mul(b, yi), t);
        let Some(z) = g.node_of(k) else {
            return fail(DualityWitness::NotInInterval { node: y });
        };
        if let Some(&a) = hit.get(&z) {
            return fail(DualityWitness::Collision { a, b: y });
        }
        hit.insert(z, y);
        image[y] = z;
    }
    for e in &l.edges {
        if !l.covers(image[e.to], image[e.from]) {
            return fail(DualityWitness::Edge { from: e.from, to: e.to });
        }
    }
    Duality { self_dual: true, method: DualityMethod::Group, witness: None }
}

fn abstract_duality(l: &LabeledInterval, budget: u64) -> Result<Duality> {
    let r = l.rank();
    let n = l.node_count();
    let fail = |w| Duality { self_dual: false, method: DualityMethod::Abstract, witness: Some(w) };
    for k in 0..=r {
        if l.nodes_of_rank(k).len() != l.nodes_of_rank(r - k).len() {
            return Ok(fail(DualityWitness::RankProfile { rank: k }));
        }
    }
    let order = l.rank_order();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut steps = 0u64;

    fn rec(
        l: &LabeledInterval,
        order: &[NodeId],
        i: usize,
        phi: &mut [usize],
        used: &mut [bool],
        steps: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if i == order.len() {
            return Ok(true);
        }
        *steps += 1;
        if *steps > budget {
            return Err(Error::SearchBudgetExceeded { limit: budget });
        }
        let x = order[i];
        let target_rank = l.rank() - l.node_rank(x);
        for cand in 0..l.node_count() {
            if used[cand]
                || l.node_rank(cand) != target_rank
                || l.up(x).len() != l.down(cand).len()
                || l.down(x).len() != l.up(cand).len()
            {
                continue;
            }
            if !l.down(x).iter().all(|&(w, _)| l.covers(cand, phi[w])) {
                continue;
            }
            phi[x] = cand;
            used[cand] = true;
            if rec(l, order, i + 1, phi, used, steps, budget)? {
                return Ok(true);
            }
            used[cand] = false;
            phi[x] = usize::MAX;
        }
        Ok(false)
    }

    if rec(l, &order, 0, &mut phi, &mut used, &mut steps, budget)? {
        Ok(Duality { self_dual: true, method: DualityMethod::Abstract, witness: None })
    } else {
        Ok(fail(DualityWitness::NoBijection))
    }
}

// ---------------------------------------------------------------- Möbius

/// `μ(bottom, top)` by the defining recursion.
pub fn mobius_recursive(l: &LabeledInterval) -> i64 {
    let mut mu = vec![0i64; l.node_count()];
    let from_bottom = l.above(l.bottom);
    for y in l.rank_order() {
        if !from_bottom.contains(y) {
            continue;
        }
        if y == l.bottom {
            mu[y] = 1;
            continue;
        }
        let s: i64 = l.below(y).ones().filter(|&z| z != y && from_bottom.contains(z)).map(|z| mu[z]).sum();
        mu[y] = -s;
    }
    mu[l.top]
}

/// `μ(bottom, top)` as the alternating count of strict chains `bottom < … < top`.
pub fn mobius_hall(l: &LabeledInterval) -> i64 {
    let r = l.rank();
    if l.bottom == l.top {
        return 1;
    }
    // chains[y][k] = number of strict chains bottom = z0 < z1 < … < zk = y
    let n = l.node_count();
    let mut chains = vec![vec![0i64; r + 1]; n];
    chains[l.bottom][0] = 1;
    let order = l.rank_order();
    for &y in &order {
        if y == l.bottom || !l.leq(l.bottom, y) {
            continue;
        }
        for z in l.below(y).ones() {
            if z == y {
                continue;
            }
            for k in 1..=r {
                chains[y][k] += chains[z][k - 1];
            }
        }
    }
    (1..=r).map(|k| if k % 2 == 0 { chains[l.top][k] } else { -chains[l.top][k] }).sum()
}

/// The Möbius invariant, computed two ways; an error means the two disagree.
pub fn mobius_invariant(l: &LabeledInterval) -> Result<i64> {
    let a = mobius_recursive(l);
    let b = mobius_hall(l);
    if a != b {
        return Err(Error::OracleDisagreement(format!("Möbius recursion {a} vs chain count {b}")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture_interval;

    #[test]
    fn boolean_intervals() {
        let b1 = fixture_interval("boolean_1").unwrap();
        assert_eq!(b1.node_count(), 2);
        assert_eq!(count_chains(&b1), 1);
        let b3 = fixture_interval("boolean_3").unwrap();
        assert_eq!(count_chains(&b3), 6);
        assert_eq!(maximal_chains(&b3, 10).unwrap().len(), 6);
        assert!(maximal_chains(&b3, 5).is_err());
    }

    #[test]
    fn mobius_values() {
        for (name, mu) in [("boolean_1", -1), ("boolean_4", 1), ("sym4_long_cycle", -5), ("sym_long_cycle_5", 14)] {
            let l = fixture_interval(name).unwrap();
            assert_eq!(mobius_recursive(&l), mu, "{name}");
            assert_eq!(mobius_hall(&l), mu, "{name}");
        }
    }

    #[test]
    fn interval_json_round_trips() {
        let l = fixture_interval("ex46_rrt").unwrap();
        let back = LabeledInterval::from_json_str(&l.to_json_string()).unwrap();
        assert_eq!(back.node_count(), l.node_count());
        assert_eq!(back.edges().len(), l.edges().len());
        assert_eq!(count_chains(&back), count_chains(&l));
    }

    #[test]
    fn words_and_chains_correspond() {
        let l = fixture_interval("boolean_3").unwrap();
        let w = parse_word(&l, "tsr").unwrap();
        let c = word_chain(&l, &w).unwrap();
        assert_eq!(chain_word(&l, &c).unwrap(), w);
        assert!(parse_word(&l, "rrx").is_err());
    }

    #[test]
    fn subintervals_shift_ranks() {
        let l = fixture_interval("boolean_3").unwrap();
        let x = l.node_by_name("r").unwrap();
        let sub = subinterval(&l, x, l.top()).unwrap();
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.node_count(), 4);
        assert!(subinterval(&l, l.top(), x).is_err());
    }

    #[test]
    fn duality_by_group_and_by_search() {
        let g = fixture_interval("sym4_long_cycle").unwrap();
        let d = duality_check(&g, 1 << 16).unwrap();
        assert!(d.self_dual);
        assert_eq!(d.method, DualityMethod::Group);
        let a = duality_check(&fixture_interval("boolean_3").unwrap(), 1 << 16).unwrap();
        assert!(a.self_dual);
    }
}

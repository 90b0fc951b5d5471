//! Finite group oracles, generator lengths and the prefix-order interval.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Edge, GroupSemantics, LabeledInterval, Node};
use crate::report::{Check, ValidationReport};
use crate::Limits;

pub type ElementId = usize;

/// A permutation of the points `1..=degree`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        if point == 0 || point > self.0.len() {
            return point;
        }
        self.0[point - 1] as usize + 1
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Self> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cyc in cycles {
            for (i, &p) in cyc.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::Parse(format!("point {p} outside 1..{degree}")));
                }
                if seen[p - 1] {
                    return Err(Error::Parse(format!("point {p} repeated in cycle notation")));
                }
                seen[p - 1] = true;
                let q = cyc[(i + 1) % cyc.len()];
                img[p - 1] = (q - 1) as u32;
            }
        }
        Ok(Permutation(img))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `()`, `e` and `id` denote the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Self> {
        Self::from_cycles(&parse_cycles(s)?, degree)
    }

    /// Product `self * other`, acting right to left: `(xy)(p) = x(y(p))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&p| self.0[p as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p + 1);
                p = self.0[p] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cyc in cycles {
            let parts: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses cycle notation into 1-based cycles without fixing a degree.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let t = s.trim();
    if t.is_empty() || t == "e" || t == "id" || t == "()" {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let open = rest.find('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        if !rest[..open].trim().is_empty() {
            return Err(Error::Parse(format!("unexpected text before '(' in {s:?}")));
        }
        let close =
            rest[open..].find(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))? + open;
        let body = &rest[open + 1..close];
        let pts = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {x:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if pts.len() > 1 {
            cycles.push(pts);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn max_point(cycles: &[Vec<usize>]) -> usize {
    cycles.iter().flatten().copied().max().unwrap_or(0)
}

/// Where the elements of an oracle come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    Permutations { degree: usize },
    Table,
}

#[derive(Clone, Debug)]
enum Repr {
    Table(Vec<u32>),
    Perms { perms: Vec<Permutation>, index: HashMap<Permutation, ElementId>, table: Option<Vec<u32>> },
}

/// A finite group with a distinguished generating set `A`.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    order: usize,
    identity: ElementId,
    inv: Vec<Option<ElementId>>,
    generators: Vec<ElementId>,
    generator_names: Vec<String>,
    element_names: Option<Vec<String>>,
    repr: Repr,
}

/// Multiplication-table input format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A parsed permutation-group text file.
#[derive(Clone, Debug)]
pub struct PermutationInput {
    pub degree: usize,
    /// Extra elements generating the ambient group together with the generators.
    pub universe: Vec<Permutation>,
    pub generators: Vec<(String, Permutation)>,
}

impl PermutationInput {
    /// Parses one generator per line in cycle notation, optionally prefixed by `name =`.
    /// A line `universe: <perm>, <perm>, ...` adds ambient group generators that are not in `A`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw_universe = Vec::new();
        let mut raw_gens: Vec<(Option<String>, Vec<Vec<usize>>)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("universe:") {
                for part in split_top_level(rest) {
                    raw_universe.push(parse_cycles(&part)?);
                }
                continue;
            }
            let (name, body) = match line.split_once('=') {
                Some((n, b)) => (Some(n.trim().to_string()), b.trim()),
                None => (None, line),
            };
            if let Some(n) = &name {
                if n.is_empty() || n.contains(char::is_whitespace) {
                    return Err(Error::Parse(format!("bad generator name {n:?}")));
                }
            }
            raw_gens.push((name, parse_cycles(body)?));
        }
        let degree = raw_gens
            .iter()
            .map(|(_, c)| max_point(c))
            .chain(raw_universe.iter().map(|c| max_point(c)))
            .max()
            .unwrap_or(0)
            .max(1);
        let universe = raw_universe.iter().map(|c| Permutation::from_cycles(c, degree)).collect::<Result<Vec<_>>>()?;
        let mut generators = Vec::new();
        for (name, cycles) in raw_gens {
            let p = Permutation::from_cycles(&cycles, degree)?;
            let name = name.unwrap_or_else(|| p.to_string());
            generators.push((name, p));
        }
        Ok(PermutationInput { degree, universe, generators })
    }
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (c == ',' || c == ';') && depth == 0 {
            if !cur.trim().is_empty() {
                out.push(cur.trim().to_string());
            }
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

impl GroupOracle {
    pub fn from_permutation_input(input: &PermutationInput, limits: &Limits) -> Result<Self> {
        Self::from_permutations(&input.universe, input.generators.clone(), limits)
    }

    /// Closes `universe` together with the generators under multiplication.
    /// Element ids follow breadth-first order from the identity.
    pub fn from_permutations(
        universe: &[Permutation],
        generators: Vec<(String, Permutation)>,
        limits: &Limits,
    ) -> Result<Self> {
        let degree =
            generators.iter().map(|(_, p)| p.degree()).chain(universe.iter().map(|p| p.degree())).max().unwrap_or(1);
        if generators.iter().any(|(_, p)| p.degree() != degree) || universe.iter().any(|p| p.degree() != degree) {
            return Err(Error::MalformedOracle("permutations of different degrees".into()));
        }
        let mut names = std::collections::HashSet::new();
        for (n, _) in &generators {
            if !names.insert(n.clone()) {
                return Err(Error::MalformedOracle(format!("duplicate generator name {n}")));
            }
        }
        let mut closing: Vec<Permutation> = generators.iter().map(|(_, p)| p.clone()).collect();
        closing.extend(universe.iter().cloned());
        let id = Permutation::identity(degree);
        let mut perms = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut head = 0;
        while head < perms.len() {
            let x = perms[head].clone();
            head += 1;
            for g in &closing {
                let y = x.compose(g);
                if !index.contains_key(&y) {
                    if perms.len() >= limits.max_elements {
                        return Err(Error::SizeCap { what: "group order".into(), limit: limits.max_elements });
                    }
                    index.insert(y.clone(), perms.len());
                    perms.push(y);
                }
            }
        }
        let order = perms.len();
        let mut gen_ids = Vec::new();
        for (_, p) in &generators {
            let gid = index[p];
            if gen_ids.contains(&gid) {
                return Err(Error::MalformedOracle(format!("generator {p} listed twice")));
            }
            gen_ids.push(gid);
        }
        let inv = perms.iter().map(|p| Some(index[&p.inverse()])).collect();
        let table = if order <= limits.table_threshold {
            let mut t = vec![0u32; order * order];
            for (i, x) in perms.iter().enumerate() {
                for (j, y) in perms.iter().enumerate() {
                    t[i * order + j] = index[&x.compose(y)] as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(GroupOracle {
            order,
            identity: 0,
            inv,
            generators: gen_ids,
            generator_names: generators.into_iter().map(|(n, _)| n).collect(),
            element_names: None,
            repr: Repr::Perms { perms, index, table },
        })
    }

    /// Builds an oracle from an explicit multiplication table.
    pub fn from_table(t: &TableJson) -> Result<Self> {
        let n = t.order;
        if n == 0 {
            return Err(Error::MalformedOracle("order must be positive".into()));
        }
        if t.mul.len() != n || t.mul.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedOracle(format!("mul must be a {n}x{n} array")));
        }
        if t.identity >= n {
            return Err(Error::MalformedOracle("identity out of range".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &t.mul {
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedOracle(format!("table entry {v} out of range")));
                }
                flat.push(v as u32);
            }
        }
        let mut gens = Vec::new();
        for &g in &t.generators {
            if g >= n {
                return Err(Error::MalformedOracle(format!("generator {g} out of range")));
            }
            if gens.contains(&g) {
                return Err(Error::MalformedOracle(format!("generator {g} listed twice")));
            }
            gens.push(g);
        }
        if let Some(names) = &t.names {
            if names.len() != n {
                return Err(Error::MalformedOracle("names must list every element".into()));
            }
        }
        let e = t.identity;
        let inv =
            (0..n).map(|x| (0..n).find(|&y| flat[x * n + y] as usize == e && flat[y * n + x] as usize == e)).collect();
        let element_names = t.names.clone();
        let generator_names = gens
            .iter()
            .map(|&g| match &element_names {
                Some(ns) => ns[g].clone(),
                None => format!("g{g}"),
            })
            .collect();
        Ok(GroupOracle {
            order: n,
            identity: e,
            inv,
            generators: gens,
            generator_names,
            element_names,
            repr: Repr::Table(flat),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn source(&self) -> Source {
        match &self.repr {
            Repr::Table(_) => Source::Table,
            Repr::Perms { perms, .. } => Source::Permutations { degree: perms[0].degree() },
        }
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        match &self.repr {
            Repr::Table(t) => t[x * self.order + y] as usize,
            Repr::Perms { perms, index, table } => match table {
                Some(t) => t[x * self.order + y] as usize,
                None => index[&perms[x].compose(&perms[y])],
            },
        }
    }

    pub fn inv(&self, x: ElementId) -> Option<ElementId> {
        self.inv[x]
    }

    fn inv_or_err(&self, x: ElementId) -> Result<ElementId> {
        self.inv[x].ok_or_else(|| Error::MalformedOracle(format!("element {x} has no inverse")))
    }

    /// `g⁻¹ a g`.
    pub fn conjugate(&self, a: ElementId, g: ElementId) -> Result<ElementId> {
        Ok(self.mul(self.mul(self.inv_or_err(g)?, a), g))
    }

    pub fn permutation(&self, x: ElementId) -> Option<&Permutation> {
        match &self.repr {
            Repr::Perms { perms, .. } => perms.get(x),
            Repr::Table(_) => None,
        }
    }

    /// Looks up a permutation, if this oracle is permutation-backed and contains it.
    pub fn element_of(&self, p: &Permutation) -> Option<ElementId> {
        match &self.repr {
            Repr::Perms { index, .. } => index.get(p).copied(),
            Repr::Table(_) => None,
        }
    }

    pub fn element_name(&self, x: ElementId) -> String {
        if x == self.identity {
            return "e".to_string();
        }
        match (&self.repr, &self.element_names) {
            (_, Some(ns)) => ns[x].clone(),
            (Repr::Perms { perms, .. }, None) => perms[x].to_string(),
            (Repr::Table(_), None) => format!("g{x}"),
        }
    }

    /// Parses an element: cycle notation, a product of generator names separated by
    /// whitespace or `*`, or (for tables) a numeric id.
    pub fn parse_element(&self, s: &str) -> Result<ElementId> {
        let t = s.trim();
        if let Repr::Perms { perms, index, .. } = &self.repr {
            if t.starts_with('(') || t == "e" || t == "id" {
                let cycles = parse_cycles(t)?;
                let degree = perms[0].degree();
                if max_point(&cycles) > degree {
                    return Err(Error::Parse(format!("{t} moves points beyond {degree}")));
                }
                let p = Permutation::from_cycles(&cycles, degree)?;
                return index.get(&p).copied().ok_or_else(|| Error::Parse(format!("{t} is not in the group")));
            }
        } else if let Ok(id) = t.parse::<usize>() {
            if id < self.order {
                return Ok(id);
            }
            return Err(Error::Parse(format!("element id {id} out of range")));
        }
        let mut x = self.identity;
        for tok in t.split(|c: char| c.is_whitespace() || c == '*').filter(|x| !x.is_empty()) {
            let gi = self
                .generator_names
                .iter()
                .position(|n| n == tok)
                .ok_or_else(|| Error::Parse(format!("unknown generator {tok:?}")))?;
            x = self.mul(x, self.generators[gi]);
        }
        Ok(x)
    }
}

/// Checks the four structural requirements on a generated group.
pub fn validate_generating_set(oracle: &GroupOracle) -> ValidationReport {
    let n = oracle.order;
    let mut report = ValidationReport::default();

    let assoc = {
        let check = |x: usize, y: usize, z: usize| oracle.mul(oracle.mul(x, y), z) == oracle.mul(x, oracle.mul(y, z));
        let mut failure = None;
        if n <= 512 {
            'outer: for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check(x, y, z) {
                            failure = Some((x, y, z));
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(x, y, z) {
                    failure = Some((x, y, z));
                    break;
                }
            }
        }
        match failure {
            None => Check::pass("associativity"),
            Some((x, y, z)) => {
                Check::fail("associativity", vec![x, y, z], format!("(xy)z != x(yz) for x={x}, y={y}, z={z}"))
            }
        }
    };
    report.checks.push(assoc);

    let inverses = match (0..n).find(|&x| oracle.inv[x].is_none()) {
        None => Check::pass("inverses"),
        Some(x) => Check::fail("inverses", vec![x], format!("element {x} has no inverse")),
    };
    report.checks.push(inverses);

    let mut seen = vec![false; n];
    seen[oracle.identity] = true;
    let mut queue = VecDeque::from([oracle.identity]);
    while let Some(x) = queue.pop_front() {
        for &a in &oracle.generators {
            let y = oracle.mul(x, a);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    let generation = match (0..n).find(|&x| !seen[x]) {
        None => Check::pass("monoid generation"),
        Some(x) => Check::fail(
            "monoid generation",
            vec![x],
            format!("{} is not a product of generators", oracle.element_name(x)),
        ),
    };
    report.checks.push(generation);

    let gens: std::collections::HashSet<_> = oracle.generators.iter().copied().collect();
    let mut conj = Check::pass("conjugation closure");
    'conj: for &a in &oracle.generators {
        for g in 0..n {
            let Some(gi) = oracle.inv[g] else { continue };
            let c = oracle.mul(oracle.mul(gi, a), g);
            if !gens.contains(&c) {
                conj = Check::fail(
                    "conjugation closure",
                    vec![a, g, c],
                    format!(
                        "{}^-1 {} {} = {} is not a generator",
                        oracle.element_name(g),
                        oracle.element_name(a),
                        oracle.element_name(g),
                        oracle.element_name(c)
                    ),
                );
                break 'conj;
            }
        }
    }
    report.checks.push(conj);
    report
}

/// Generator lengths of all elements up to the length of the target.
#[derive(Clone, Debug)]
pub struct LengthTable {
    pub target: ElementId,
    pub top_length: usize,
    length: Vec<Option<u32>>,
}

impl LengthTable {
    pub fn length(&self, x: ElementId) -> Option<usize> {
        self.length.get(x).copied().flatten().map(|l| l as usize)
    }

    /// Elements with a stored length.
    pub fn stored(&self) -> impl Iterator<Item = (ElementId, usize)> + '_ {
        self.length.iter().enumerate().filter_map(|(x, l)| l.map(|l| (x, l as usize)))
    }
}

/// Breadth-first search in the right Cayley graph up to the level of `target`.
pub fn length_bfs(oracle: &GroupOracle, target: ElementId) -> Result<LengthTable> {
    if target >= oracle.order {
        return Err(Error::MalformedOracle(format!("target {target} out of range")));
    }
    let mut length = vec![None; oracle.order];
    length[oracle.identity] = Some(0u32);
    let mut frontier = vec![oracle.identity];
    let mut depth = 0u32;
    while length[target].is_none() {
        if frontier.is_empty() {
            return Err(Error::TargetUnreachable);
        }
        depth += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &a in &oracle.generators {
                let y = oracle.mul(x, a);
                if length[y].is_none() {
                    length[y] = Some(depth);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(LengthTable { target, top_length: length[target].unwrap() as usize, length })
}

/// Builds the interval `[e, target]` in the prefix order.
pub fn build_labeled_interval(oracle: &Arc<GroupOracle>, target: ElementId) -> Result<LabeledInterval> {
    let lt = length_bfs(oracle, target)?;
    let n = lt.top_length;
    let mut members: Vec<(usize, ElementId)> = Vec::new();
    for (x, lx) in lt.stored() {
        let rest = oracle.mul(oracle.inv_or_err(x)?, target);
        if let Some(lr) = lt.length(rest) {
            if lx + lr == n {
                members.push((lx, x));
            }
        }
    }
    members.sort();
    let node_of: HashMap<ElementId, usize> = members.iter().enumerate().map(|(i, &(_, x))| (x, i)).collect();
    let nodes: Vec<Node> = members.iter().map(|&(r, x)| Node { name: oracle.element_name(x), rank: r }).collect();
    let mut edges = Vec::new();
    for (i, &(r, x)) in members.iter().enumerate() {
        for (gi, &a) in oracle.generators.iter().enumerate() {
            if a == oracle.identity {
                continue;
            }
            let y = oracle.mul(x, a);
            if let Some(&j) = node_of.get(&y) {
                if members[j].0 == r + 1 {
                    edges.push(Edge { from: i, to: j, label: Some(gi) });
                }
            }
        }
    }
    let bottom = node_of[&oracle.identity];
    let top = node_of[&target];
    let elements = members.iter().map(|&(_, x)| x).collect();
    let mut li = LabeledInterval::new(nodes, edges, bottom, top, oracle.generator_names.to_vec())?;
    li.attach_group(GroupSemantics::new(oracle.clone(), elements));
    Ok(li)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture_interval, generate_family, Family, Instance};

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, 5).unwrap()
    }

    #[test]
    fn cycle_notation_round_trips() {
        assert_eq!(p("(1 3 2)(4 5)").to_string(), "(1 3 2)(4 5)");
        assert_eq!(p("(3 1 2)").to_string(), "(1 2 3)");
        assert_eq!(p("()").to_string(), "e");
        assert!(p("id").is_identity());
    }

    #[test]
    fn malformed_cycles_are_rejected() {
        for bad in ["(1 1)", "(1 2", "x", "(1 9)", "(1 2) junk"] {
            assert!(Permutation::parse(bad, 5).is_err(), "{bad}");
        }
    }

    #[test]
    fn composition_acts_right_to_left() {
        assert_eq!(p("(1 2)").compose(&p("(2 3)")), p("(1 2 3)"));
        let x = p("(1 2 4)(3 5)");
        assert!(x.compose(&x.inverse()).is_identity());
    }

    #[test]
    fn conjugation_of_transpositions() {
        let Instance::Group { oracle, .. } = generate_family(Family::SymLongCycle, 3).unwrap() else {
            panic!("group instance")
        };
        let a = oracle.parse_element("(1 2)").unwrap();
        let g = oracle.parse_element("(1 3)").unwrap();
        let c = oracle.conjugate(a, g).unwrap();
        assert_eq!(oracle.element_name(c), "(2 3)");
    }

    #[test]
    fn lengths_in_small_groups() {
        let Instance::Group { oracle, target } = generate_family(Family::SymLongCycle, 4).unwrap() else {
            panic!("group instance")
        };
        assert_eq!(oracle.order(), 24);
        assert!(validate_generating_set(&oracle).passed());
        assert_eq!(length_bfs(&oracle, target).unwrap().length(target), Some(3));
        assert_eq!(fixture_interval("dihedral8_rt").unwrap().rank(), 2);
    }

    #[test]
    fn noncrossing_partition_lattice_size() {
        let l = fixture_interval("sym4_long_cycle").unwrap();
        assert_eq!(l.node_count(), 14);
        assert_eq!(l.rank(), 3);
    }
}

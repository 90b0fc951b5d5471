//! Built-in instances: transcribed intervals, small permutation groups and generated families.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{build_labeled_interval, ElementId, GroupOracle, Permutation};
use crate::poset::{Edge, LabeledInterval, Node};
use crate::Limits;

/// A group with a target element, or a transcribed interval.
#[derive(Clone, Debug)]
pub enum Instance {
    Group { oracle: Arc<GroupOracle>, target: ElementId },
    Interval(LabeledInterval),
}

impl Instance {
    pub fn interval(&self) -> Result<LabeledInterval> {
        match self {
            Instance::Group { oracle, target } => build_labeled_interval(oracle, *target),
            Instance::Interval(l) => Ok(l.clone()),
        }
    }
}

const DATA: &[(&str, &str)] = &[
    ("ex44_rrrt", include_str!("../data/ex44_rrrt.json")),
    ("ex46_rrt", include_str!("../data/ex46_rrt.json")),
    ("ex513_rst", include_str!("../data/ex513_rst.json")),
    ("ex611_abb", include_str!("../data/ex611_abb.json")),
    ("thm612_n3", include_str!("../data/thm612_n3.json")),
    ("thm612_n4", include_str!("../data/thm612_n4.json")),
    ("dunce_hat", include_str!("../data/dunce_hat.json")),
];

/// Names accepted by [`load_fixture`]; `boolean_<n>` and `sym_long_cycle_<n>` take a size.
pub fn fixture_names() -> Vec<String> {
    let mut v = vec!["sym4_long_cycle".to_string(), "dihedral8_rt".to_string()];
    v.extend(DATA.iter().map(|(n, _)| n.to_string()));
    v.push("boolean_<n>".to_string());
    v.push("sym_long_cycle_<n>".to_string());
    v
}

pub fn load_fixture(name: &str) -> Result<Instance> {
    if let Some((_, text)) = DATA.iter().find(|(n, _)| *n == name) {
        let l = LabeledInterval::from_json_str(text)?;
        return Ok(Instance::Interval(l.with_name(name)));
    }
    match name {
        "sym4_long_cycle" => return generate_family(Family::SymLongCycle, 4),
        "dihedral8_rt" => return dihedral8_rt(),
        _ => {}
    }
    for (prefix, fam) in [("boolean_", Family::Boolean), ("sym_long_cycle_", Family::SymLongCycle)] {
        if let Some(n) = name.strip_prefix(prefix).and_then(|s| s.parse().ok()) {
            return generate_family(fam, n);
        }
    }
    Err(Error::UnknownFixture(name.to_string()))
}

/// Convenience: load a fixture and build its interval.
pub fn fixture_interval(name: &str) -> Result<LabeledInterval> {
    let l = load_fixture(name)?.interval()?;
    Ok(match l.name() {
        Some(_) => l,
        None => l.with_name(name),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    SymLongCycle,
    Boolean,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" | "sym_long_cycle" => Ok(Family::SymLongCycle),
            "boolean" | "bool" => Ok(Family::Boolean),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// All transpositions of `S_n`, in lexicographic order.
pub fn transpositions(n: usize) -> Vec<(String, Permutation)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let p = Permutation::from_cycles(&[vec![i, j]], n).unwrap();
            out.push((p.to_string(), p));
        }
    }
    out
}

/// Letters used for the boolean family: r, s, t, … wrapping to a.
fn boolean_letter(i: usize) -> String {
    (((b'r' - b'a') as usize + i) % 26 + b'a' as usize).try_into().map(|b: u8| (b as char).to_string()).unwrap()
}

/// `S_n` with all transpositions and `⊤ = (1 2 … n)`, or the rank-`n` boolean interval.
pub fn generate_family(family: Family, n: usize) -> Result<Instance> {
    match family {
        Family::SymLongCycle => {
            if !(1..=7).contains(&n) {
                return Err(Error::SizeCap { what: format!("sym_long_cycle({n})"), limit: 7 });
            }
            let gens = transpositions(n);
            let oracle = if n == 1 {
                GroupOracle::from_permutations(&[Permutation::identity(1)], vec![], &Limits::default())?
            } else {
                GroupOracle::from_permutations(&[], gens, &Limits::default())?
            };
            let cycle = Permutation::from_cycles(&[(1..=n).collect()], n)?;
            let target = oracle.element_of(&cycle).expect("long cycle is in S_n");
            Ok(Instance::Group { oracle: Arc::new(oracle), target })
        }
        Family::Boolean => {
            if n > 10 {
                return Err(Error::SizeCap { what: format!("boolean({n})"), limit: 10 });
            }
            let letters: Vec<String> = (0..n).map(boolean_letter).collect();
            let mut subsets: Vec<u32> = (0..1u32 << n).collect();
            subsets.sort_by_key(|&s| (s.count_ones(), s.reverse_bits()));
            let id_of: std::collections::HashMap<u32, usize> =
                subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let nodes = subsets
                .iter()
                .map(|&s| {
                    let name: String = (0..n).filter(|&i| s & (1 << i) != 0).map(|i| letters[i].clone()).collect();
                    Node { name: if name.is_empty() { "e".into() } else { name }, rank: s.count_ones() as usize }
                })
                .collect();
            let mut edges = Vec::new();
            for &s in &subsets {
                for i in 0..n {
                    if s & (1 << i) == 0 {
                        edges.push(Edge { from: id_of[&s], to: id_of[&(s | 1 << i)], label: Some(i) });
                    }
                }
            }
            let top = id_of[&((1u32 << n) - 1)];
            let l = LabeledInterval::new(nodes, edges, 0, top, letters)?.with_name(format!("boolean_{n}"));
            Ok(Instance::Interval(l))
        }
    }
}

/// Reflections of a square on the points 1..4: `r, t` the diagonals, `s, u` the edge
/// reflections; the target is the half-turn `rt = su`.
pub fn dihedral8_rt() -> Result<Instance> {
    let g = |s: &str| Permutation::parse(s, 4);
    let gens = vec![
        ("r".to_string(), g("(1 3)")?),
        ("s".to_string(), g("(1 2)(3 4)")?),
        ("t".to_string(), g("(2 4)")?),
        ("u".to_string(), g("(1 4)(2 3)")?),
    ];
    let oracle = GroupOracle::from_permutations(&[], gens, &Limits::default())?;
    let target = oracle.element_of(&g("(1 3)(2 4)")?).unwrap();
    Ok(Instance::Group { oracle: Arc::new(oracle), target })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_named_fixture_loads_and_validates() {
        for name in fixture_names().iter().filter(|n| !n.contains('<')) {
            let l = fixture_interval(name).unwrap();
            assert!(crate::poset::validate_interval(&l).passed(), "{name}");
        }
    }

    #[test]
    fn family_names_and_caps() {
        assert_eq!("bool".parse::<Family>().unwrap(), Family::Boolean);
        assert!("cyclic".parse::<Family>().is_err());
        assert!(matches!(generate_family(Family::SymLongCycle, 8), Err(Error::SizeCap { .. })));
        assert!(matches!(generate_family(Family::Boolean, 11), Err(Error::SizeCap { .. })));
        assert!(matches!(load_fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn dihedral_target_has_two_orbit_factorizations() {
        let l = fixture_interval("dihedral8_rt").unwrap();
        assert_eq!(l.occurring_labels().len(), 4);
        assert_eq!(crate::poset::count_chains(&l), 4);
    }
}

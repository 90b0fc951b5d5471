//! Counterexample search: analyze many instances, assert the proved implications and flag
//! instances that violate a conjectured one.

use std::collections::VecDeque;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{run_analysis, AnalysisOptions, AnalysisReport};
use crate::error::{Error, Result};
use crate::fixtures::{generate_family, Family};
use crate::group::{build_labeled_interval, validate_generating_set, ElementId, GroupOracle, Permutation};
use crate::poset::LabeledInterval;
use crate::Limits;

/// Where the scanned instances come from.
#[derive(Clone, Debug)]
pub enum ScanSource {
    /// Built-in families with their sizes.
    Families(Vec<(Family, usize)>),
    /// The group generated by `ambient`; every union of non-trivial conjugacy classes that
    /// generates it, with every target (up to conjugacy) whose length is listed.
    ConjugationClosedSubsets {
        ambient: Vec<Permutation>,
        target_lengths: Vec<usize>,
        /// Largest number of conjugacy classes combined.
        max_classes: usize,
    },
    /// Every `*.json` interval file of a directory, in name order.
    Directory(PathBuf),
    Intervals(Vec<LabeledInterval>),
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub source: ScanSource,
    pub options: AnalysisOptions,
    /// Directory for replay files of counterexample candidates.
    pub replay_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceFinding {
    pub name: String,
    pub nodes: usize,
    pub rank: usize,
    pub chain_connected: Option<bool>,
    pub totally_chain_connected: Option<bool>,
    pub locally_hurwitz_connected: Option<bool>,
    pub hurwitz_connected: Option<bool>,
    pub compatible_order_exists: Option<bool>,
    /// For each compatible order tried: totally well-covered.
    pub totally_well_covered: Vec<bool>,
    /// For each order tried: EL-labeling.
    pub el: Vec<bool>,
    /// `shellable`, `not_shellable`, `inconclusive` or absent.
    pub shelling: Option<String>,
    pub rise: Vec<usize>,
    pub chain_components: Option<usize>,
    pub hurwitz_orbits: Option<usize>,
    /// Ids of violated conjectures and open questions.
    pub candidates: Vec<String>,
    pub replay_file: Option<String>,
    /// Set when a budget ran out before the analysis completed.
    pub budget_exhausted: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Findings {
    pub instances: Vec<InstanceFinding>,
    pub candidate_count: usize,
    pub budget_exhausted_count: usize,
}

/// A named instance to analyze.
pub struct ScanInstance {
    pub name: String,
    pub interval: LabeledInterval,
}

pub fn collect_instances(source: &ScanSource, limits: &Limits) -> Result<Vec<ScanInstance>> {
    match source {
        ScanSource::Families(fams) => fams
            .iter()
            .map(|&(f, n)| {
                let l = generate_family(f, n)?.interval()?;
                let name = match f {
                    Family::SymLongCycle => format!("sym_long_cycle_{n}"),
                    Family::Boolean => format!("boolean_{n}"),
                };
                Ok(ScanInstance { name, interval: l })
            })
            .collect(),
        ScanSource::ConjugationClosedSubsets { ambient, target_lengths, max_classes } => {
            conjugation_closed_instances(ambient, target_lengths, *max_classes, limits)
        }
        ScanSource::Directory(dir) => {
            let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            paths
                .iter()
                .map(|p| {
                    let l = LabeledInterval::from_json_str(&std::fs::read_to_string(p)?)?;
                    let name = p.file_stem().unwrap().to_string_lossy().to_string();
                    Ok(ScanInstance { name, interval: l })
                })
                .collect()
        }
        ScanSource::Intervals(ls) => Ok(ls
            .iter()
            .enumerate()
            .map(|(i, l)| ScanInstance {
                name: l.name().map(str::to_string).unwrap_or_else(|| format!("interval_{i}")),
                interval: l.clone(),
            })
            .collect()),
    }
}

/// Conjugacy classes of the non-identity elements, each sorted, classes sorted by least element.
pub fn conjugacy_classes(g: &GroupOracle) -> Vec<Vec<ElementId>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    for x in 0..n {
        if x == g.identity() || class_of[x] != usize::MAX {
            continue;
        }
        let mut cls: Vec<ElementId> = (0..n).map(|h| g.conjugate(x, h).unwrap()).collect();
        cls.sort_unstable();
        cls.dedup();
        for &y in &cls {
            class_of[y] = classes.len();
        }
        classes.push(cls);
    }
    classes
}

fn all_lengths(g: &GroupOracle) -> Vec<Option<usize>> {
    let mut len = vec![None; g.order()];
    len[g.identity()] = Some(0);
    let mut q = VecDeque::from([g.identity()]);
    while let Some(x) = q.pop_front() {
        for &a in g.generators() {
            let y = g.mul(x, a);
            if len[y].is_none() {
                len[y] = Some(len[x].unwrap() + 1);
                q.push_back(y);
            }
        }
    }
    len
}

fn conjugation_closed_instances(
    ambient: &[Permutation],
    target_lengths: &[usize],
    max_classes: usize,
    limits: &Limits,
) -> Result<Vec<ScanInstance>> {
    if ambient.is_empty() {
        return Ok(Vec::new());
    }
    let named: Vec<(String, Permutation)> = ambient.iter().map(|p| (p.to_string(), p.clone())).collect();
    let g = GroupOracle::from_permutations(&[], named, limits)?;
    let classes = conjugacy_classes(&g);
    if classes.len() > max_classes.min(20) {
        return Err(Error::SizeCap {
            what: format!("{} conjugacy classes", classes.len()),
            limit: max_classes.min(20),
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << classes.len()) {
        let mut gens: Vec<ElementId> =
            (0..classes.len()).filter(|i| mask & (1 << i) != 0).flat_map(|i| classes[i].iter().copied()).collect();
        gens.sort_unstable();
        let named: Vec<(String, Permutation)> = gens
            .iter()
            .map(|&x| {
                let p = g.permutation(x).unwrap().clone();
                (p.to_string(), p)
            })
            .collect();
        let oracle = GroupOracle::from_permutations(ambient, named, limits)?;
        if !validate_generating_set(&oracle).passed() {
            continue;
        }
        let oracle = Arc::new(oracle);
        let lengths = all_lengths(&oracle);
        let mut seen_class = vec![false; classes.len() + 1];
        for x in 0..oracle.order() {
            let Some(lx) = lengths[x] else { continue };
            if !target_lengths.contains(&lx) {
                continue;
            }
            // one target per conjugacy class: conjugate targets give isomorphic intervals
            let p = oracle.permutation(x).unwrap();
            let gx = g.element_of(p).unwrap();
            let ci = classes.iter().position(|c| c.binary_search(&gx).is_ok()).unwrap_or(classes.len());
            if seen_class[ci] {
                continue;
            }
            seen_class[ci] = true;
            let l = build_labeled_interval(&oracle, x)?;
            let gens_desc: Vec<String> = oracle.generator_names().to_vec();
            let name = format!("A={{{}}} top={}", gens_desc.join(","), oracle.element_name(x));
            out.push(ScanInstance { name: name.clone(), interval: l.with_name(name) });
        }
    }
    Ok(out)
}

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn finding_from(name: &str, r: &AnalysisReport) -> InstanceFinding {
    let orders = r.orders.as_ref();
    InstanceFinding {
        name: name.to_string(),
        nodes: r.summary.nodes,
        rank: r.summary.rank,
        chain_connected: Some(r.connectivity.chain_connected),
        totally_chain_connected: Some(r.connectivity.totally_chain_connected),
        locally_hurwitz_connected: r.hurwitz.as_ref().map(|h| h.locally_connected),
        hurwitz_connected: r.hurwitz.as_ref().map(|h| h.connected),
        compatible_order_exists: orders.and_then(|o| o.compatible_count).map(|c| c > 0),
        totally_well_covered: orders
            .map(|o| o.tried.iter().filter(|t| t.compatible).map(|t| t.totally_well_covered).collect())
            .unwrap_or_default(),
        el: orders.map(|o| o.tried.iter().map(|t| t.el_labeling).collect()).unwrap_or_default(),
        shelling: r.shelling.as_ref().map(|s| s.status.clone()),
        rise: orders.map(|o| o.tried.iter().map(|t| t.rise).collect()).unwrap_or_default(),
        chain_components: Some(r.connectivity.chain_components),
        hurwitz_orbits: r.hurwitz.as_ref().map(|h| h.orbits),
        candidates: r.conjecture_candidates().iter().map(|c| c.id.clone()).collect(),
        replay_file: None,
        budget_exhausted: None,
    }
}

fn exhausted(name: &str, l: &LabeledInterval, e: &Error) -> InstanceFinding {
    InstanceFinding {
        name: name.to_string(),
        nodes: l.node_count(),
        rank: l.rank(),
        chain_connected: None,
        totally_chain_connected: None,
        locally_hurwitz_connected: None,
        hurwitz_connected: None,
        compatible_order_exists: None,
        totally_well_covered: Vec::new(),
        el: Vec::new(),
        shelling: None,
        rise: Vec::new(),
        chain_components: None,
        hurwitz_orbits: None,
        candidates: Vec::new(),
        replay_file: None,
        budget_exhausted: Some(e.to_string()),
    }
}

fn write_replay(dir: &Path, name: &str, l: &LabeledInterval) -> Result<String> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.json", sanitize(name)));
    std::fs::write(&path, l.to_json_string())?;
    Ok(path.to_string_lossy().to_string())
}

/// Analyzes every instance in parallel. A violated proved implication aborts the scan with a
/// [`Error::TheoremViolation`] naming the instance (its replay file is written first).
pub fn scan(config: &ScanConfig) -> Result<Findings> {
    let instances = collect_instances(&config.source, &config.options.limits)?;
    let results: Vec<Result<InstanceFinding>> = instances
        .par_iter()
        .map(|inst| {
            let r = match run_analysis(&inst.interval, &config.options) {
                Ok(r) => r,
                Err(e) if e.is_budget() => return Ok(exhausted(&inst.name, &inst.interval, &e)),
                Err(e) => return Err(e),
            };
            if let Err(e) = r.assert_consistent() {
                let replay = match &config.replay_dir {
                    Some(d) => format!(", replay file {}", write_replay(d, &inst.name, &inst.interval)?),
                    None => String::new(),
                };
                return Err(Error::TheoremViolation(format!("instance {}: {e}{replay}", inst.name)));
            }
            let mut f = finding_from(&inst.name, &r);
            if !f.candidates.is_empty() {
                if let Some(d) = &config.replay_dir {
                    f.replay_file = Some(write_replay(d, &inst.name, &inst.interval)?);
                }
            }
            Ok(f)
        })
        .collect();
    let mut findings = Findings::default();
    for r in results {
        let f = r?;
        findings.candidate_count += usize::from(!f.candidates.is_empty());
        findings.budget_exhausted_count += usize::from(f.budget_exhausted.is_some());
        findings.instances.push(f);
    }
    Ok(findings)
}

/// Generators of the dihedral group of order 8 acting on the corners of a square.
pub fn dihedral8_generators() -> Vec<Permutation> {
    vec![Permutation::parse("(1 2 3 4)", 4).unwrap(), Permutation::parse("(1 3)", 4).unwrap()]
}

/// Generators of `S_n`.
pub fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return vec![Permutation::identity(n.max(1))];
    }
    let cycle: Vec<usize> = (1..=n).collect();
    vec![Permutation::from_cycles(&[vec![1, 2]], n).unwrap(), Permutation::from_cycles(&[cycle], n).unwrap()]
}

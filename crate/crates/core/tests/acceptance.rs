//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest harness so the
//! lines always appear in the output.

use std::collections::BTreeSet;
use std::time::Instant;

use facposet::analysis::{run_analysis, AnalysisOptions};
use facposet::connectivity::{chain_graph, is_chain_connected, is_totally_chain_connected};
use facposet::cyclegraph::{analyze_reduced, build_cycle_graph, min_feedback_arc_set, reduced_cycle_graph};
use facposet::fixtures::{fixture_interval, generate_family, Family};
use facposet::hurwitz::{hurwitz_orbits, is_hurwitz_connected, is_locally_hurwitz_connected};
use facposet::orders::{
    all_orders, enumerate_compatible_orders, f_set, is_compatible, is_el_labeling, is_well_covered, min_rise_rank2,
    rank2_words, rising_factorizations, GeneratorOrder,
};
use facposet::poset::{chain_word, count_chains, duality_check, maximal_chains, LabeledInterval};
use facposet::shelling::{is_shelling, search_shelling, shelling_from_el, NotShellableReason, ShellingOutcome};
use facposet::{Limits, Result};

type Outcome = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($msg)+)));
        }
    };
}

fn words(l: &LabeledInterval) -> BTreeSet<String> {
    maximal_chains(l, usize::MAX).unwrap().iter().map(|c| l.format_word(&chain_word(l, c).unwrap())).collect()
}

fn names(l: &LabeledInterval, nodes: &[usize]) -> BTreeSet<String> {
    nodes.iter().map(|&x| l.node_name(x).to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn lift(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(format!("error: {e}")))
}

fn criterion_1() -> Result<Outcome> {
    let l = fixture_interval("sym4_long_cycle")?;
    ensure!(l.node_count() == 14, "{} nodes", l.node_count());
    ensure!(maximal_chains(&l, usize::MAX)?.len() == 16, "chain count");
    ensure!(is_hurwitz_connected(&l, usize::MAX)?, "Hurwitz graph disconnected");
    let lex = GeneratorOrder::natural(&l);
    ensure!(lex.names(&l) == ["(1 2)", "(1 3)", "(1 4)", "(2 3)", "(2 4)", "(3 4)"], "alphabet {:?}", lex.names(&l));
    ensure!(is_compatible(&l, &lex)?.compatible, "lex order not compatible");
    let pos = lex.positions(&l)?;
    let expected_rising = [
        ("(1 2 3)", ("(1 2)", "(2 3)")),
        ("(1 2 4)", ("(1 2)", "(2 4)")),
        ("(1 3 4)", ("(1 3)", "(3 4)")),
        ("(2 3 4)", ("(2 3)", "(3 4)")),
        ("(1 2)(3 4)", ("(1 2)", "(3 4)")),
        ("(1 4)(2 3)", ("(1 4)", "(2 3)")),
    ];
    let r2 = rank2_words(&l);
    ensure!(r2.len() == 6, "|R2| = {}", r2.len());
    for (g, (a, b)) in expected_rising {
        let node = l.node_by_name(g).ok_or(format!("missing {g}")).unwrap();
        let ws = &r2.iter().find(|(n, _)| *n == node).unwrap().1;
        let rising: Vec<(String, String)> = ws
            .iter()
            .filter(|(x, y)| pos[*x] <= pos[*y])
            .map(|&(x, y)| (l.label_name(x).to_string(), l.label_name(y).to_string()))
            .collect();
        ensure!(rising == [(a.to_string(), b.to_string())], "rising words of {g}: {rising:?}");
        let expected_count = if g.contains(")(") { 2 } else { 3 };
        ensure!(ws.len() == expected_count, "{g} has {} words", ws.len());
    }
    let expected_f: [(&str, &[&str]); 6] = [
        ("(1 2)", &[]),
        ("(1 3)", &["(1 2 3)"]),
        ("(1 4)", &["(1 2 4)", "(1 3 4)"]),
        ("(2 3)", &["(1 2 3)", "(1 4)(2 3)"]),
        ("(2 4)", &["(1 2 4)", "(2 3 4)"]),
        ("(3 4)", &["(1 3 4)", "(2 3 4)", "(1 2)(3 4)"]),
    ];
    for (t, f) in expected_f {
        let a = l.node_by_name(t).unwrap();
        let got = names(&l, &f_set(&l, &lex, a)?);
        ensure!(got == set(f), "F({t}) = {got:?}");
    }
    ensure!(is_well_covered(&l, &lex)?, "not well-covered");
    ensure!(is_el_labeling(&l, &lex)?.holds, "lex order is not an EL-labeling");
    let sh = shelling_from_el(&l, &lex)?;
    ensure!(is_shelling(&l, &sh)?.is_shelling, "derived chain order is not a shelling");
    let gamma = build_cycle_graph(&l)?;
    let d = min_feedback_arc_set(&gamma, Limits::default().search_budget)?.size;
    ensure!(d == 6 && r2.len() == 6, "d(Γ) = {d}");
    Ok(Ok(()))
}

fn criterion_2() -> Result<Outcome> {
    let l = fixture_interval("dihedral8_rt")?;
    let w = words(&l);
    ensure!(w == set(&["(r, t)", "(t, r)", "(s, u)", "(u, s)"]) || w == set(&["rt", "tr", "su", "us"]), "words {w:?}");
    let orbits = hurwitz_orbits(&l, usize::MAX)?;
    ensure!(orbits.len() == 2, "{} orbits", orbits.len());
    ensure!(is_chain_connected(&l, usize::MAX)?, "not chain-connected");
    let (m, ord) = min_rise_rank2(&l, true)?;
    ensure!(m == 2, "min rise {m}");
    let certified = rising_factorizations(&l, &ord, usize::MAX)?.len();
    ensure!(certified == 2, "certificate order has rise {certified}");
    Ok(Ok(()))
}

fn criterion_3() -> Result<Outcome> {
    let l = fixture_interval("ex44_rrrt")?;
    ensure!(maximal_chains(&l, usize::MAX)?.len() == 32, "chain count");
    ensure!(is_hurwitz_connected(&l, usize::MAX)?, "not Hurwitz-connected");
    let (e, rrr) = (l.node_by_name("e").unwrap(), l.node_by_name("rrr").unwrap());
    let cg = facposet::connectivity::chain_graph_between(&l, e, rrr, usize::MAX)?;
    ensure!(!cg.is_connected(), "[e, rrr] is chain-connected");
    match search_shelling(&l, 1 << 20, usize::MAX)? {
        ShellingOutcome::NotShellable(NotShellableReason::Rank3Interval { .. }) => {}
        other => return Ok(Err(format!("shelling search: {other:?}"))),
    }
    ensure!(enumerate_compatible_orders(&l, 1 << 24)?.is_empty(), "compatible order found");
    let orders = all_orders(&l);
    ensure!(orders.len() == 120, "{} orders", orders.len());
    let rises: Vec<usize> =
        orders.iter().map(|o| rising_factorizations(&l, o, usize::MAX).map(|v| v.len())).collect::<Result<_>>()?;
    let (lo, hi) = (*rises.iter().min().unwrap(), *rises.iter().max().unwrap());
    ensure!((lo, hi) == (2, 6), "rise range [{lo}, {hi}]");
    Ok(Ok(()))
}

fn criterion_4() -> Result<Outcome> {
    let l = fixture_interval("ex46_rrt")?;
    ensure!(is_hurwitz_connected(&l, usize::MAX)?, "not Hurwitz-connected");
    let (local, w) = is_locally_hurwitz_connected(&l)?;
    ensure!(!local, "locally Hurwitz-connected");
    let w = w.map(|g| l.node_name(g).to_string());
    ensure!(w.as_deref() == Some("rr"), "witness {w:?}");
    Ok(Ok(()))
}

fn criterion_5() -> Result<Outcome> {
    let l = fixture_interval("ex513_rst")?;
    let cg = chain_graph(&l, usize::MAX)?;
    let comps = cg.components();
    ensure!(comps.len() == 2 && comps.iter().all(|c| c.len() == 6), "components {:?}", comps);
    for comp in &comps {
        // a 6-cycle: every vertex has degree two and the component is connected
        for &v in comp {
            let deg = cg.edges.iter().filter(|&&(a, b)| a == v || b == v).count();
            ensure!(deg == 2, "chain {v} has degree {deg}");
        }
    }
    ensure!(cg.edges.len() == 12, "{} chain-graph edges", cg.edges.len());
    let orders = all_orders(&l);
    ensure!(orders.len() == 720, "{} orders", orders.len());
    for o in &orders {
        let name = o.names(&l).join(",");
        ensure!(is_compatible(&l, o)?.compatible, "{name} not compatible");
        ensure!(rising_factorizations(&l, o, usize::MAX)?.len() == 2, "{name}: rise ≠ 2");
        ensure!(!is_well_covered(&l, o)?, "{name} well-covered");
        ensure!(!is_el_labeling(&l, o)?.holds, "{name} EL");
    }
    Ok(Ok(()))
}

fn cyclic_shifts(l: &LabeledInterval, base: &[&str]) -> Result<BTreeSet<GeneratorOrder>> {
    let o = GeneratorOrder::from_names(l, base)?;
    Ok((0..base.len()).map(|t| o.cyclic_shift(t)).collect())
}

fn criterion_6() -> Result<Outcome> {
    let l = fixture_interval("ex44_rrrt")?;
    let gamma = build_cycle_graph(&l)?;
    let labels: BTreeSet<_> = gamma.edges.iter().map(|e| e.label).collect();
    let d = min_feedback_arc_set(&gamma, 1 << 24)?.size;
    ensure!(labels.len() == 6 && d == 9, "labels {}, d(Γ) = {d}", labels.len());
    for (name, base) in [("thm612_n3", vec!["a", "c", "d", "b"]), ("thm612_n4", vec!["a", "c", "f", "d", "e", "b"])] {
        let l = fixture_interval(name)?;
        let got: BTreeSet<GeneratorOrder> = enumerate_compatible_orders(&l, 1 << 24)?.into_iter().collect();
        let want = cyclic_shifts(&l, &base)?;
        ensure!(got == want, "{name}: {} compatible orders", got.len());
        for o in &got {
            let ra = analyze_reduced(&reduced_cycle_graph(&l, o)?, 5040)?;
            ensure!(ra.induced_order_is_linear, "{name}: {} not linear", o.display(&l));
        }
    }
    let l = fixture_interval("ex611_abb")?;
    ensure!(enumerate_compatible_orders(&l, 1 << 24)?.is_empty(), "ex611: compatible order found");
    ensure!(is_hurwitz_connected(&l, usize::MAX)?, "ex611: not Hurwitz-connected");
    ensure!(is_locally_hurwitz_connected(&l)?.0, "ex611: not locally Hurwitz-connected");
    Ok(Ok(()))
}

/// Deterministic sweep of the property suites over every shipped instance; the randomized
/// versions live in the `properties` test target.
fn criterion_7() -> Result<Outcome> {
    let mut instances: Vec<LabeledInterval> = Vec::new();
    for name in
        ["sym4_long_cycle", "dihedral8_rt", "ex44_rrrt", "ex46_rrt", "ex513_rst", "ex611_abb", "thm612_n3", "thm612_n4"]
    {
        instances.push(fixture_interval(name)?);
    }
    for n in 3..=4 {
        instances.push(generate_family(Family::SymLongCycle, n)?.interval()?);
    }
    for n in 1..=5 {
        instances.push(generate_family(Family::Boolean, n)?.interval()?);
    }
    let opts = AnalysisOptions {
        limits: Limits { search_budget: 1 << 18, ..Limits::default() },
        ..AnalysisOptions::default()
    };
    for l in &instances {
        let r = run_analysis(l, &opts)?;
        if let Err(e) = r.assert_consistent() {
            return Ok(Err(format!("{}: {e}", l.name().unwrap_or("?"))));
        }
        let conj: Vec<String> = r
            .conjecture_candidates()
            .iter()
            .filter(|c| c.kind == facposet::analysis::CheckKind::Conjecture)
            .map(|c| c.id.clone())
            .collect();
        ensure!(conj.is_empty(), "{}: conjecture candidates {conj:?}", l.name().unwrap_or("?"));
        if l.group().is_some() {
            ensure!(duality_check(l, 1 << 20)?.self_dual, "{}: not self-dual", l.name().unwrap_or("?"));
        }
    }
    Ok(Ok(()))
}

fn criterion_8() -> Result<Outcome> {
    for (n, want) in [(3usize, 3u128), (4, 16), (5, 125)] {
        let l = generate_family(Family::SymLongCycle, n)?.interval()?;
        ensure!(count_chains(&l) == want, "sym({n}): {} chains", count_chains(&l));
    }
    let start = Instant::now();
    let l = generate_family(Family::SymLongCycle, 5)?.interval()?;
    let r = run_analysis(&l, &AnalysisOptions::default())?;
    let secs = start.elapsed().as_secs_f64();
    ensure!(r.summary.maximal_chains == 125, "chains {}", r.summary.maximal_chains);
    ensure!(r.hurwitz.as_ref().is_some_and(|h| h.connected), "sym(5) not Hurwitz-connected");
    ensure!(r.orders.as_ref().is_some_and(|o| o.tried.iter().any(|t| t.el_labeling)), "no EL order");
    ensure!(r.cycle_graph.as_ref().is_some_and(|c| c.min_feedback_arc_set == Some(c.rank2_elements)), "d(Γ) ≠ |R2|");
    r.assert_consistent()?;
    ensure!(secs < 60.0, "analysis took {secs:.1} s");
    println!("    sym_long_cycle(5) analysis: {secs:.2} s");
    Ok(Ok(()))
}

fn criterion_9() -> Result<Outcome> {
    let l = fixture_interval("dunce_hat")?;
    ensure!(is_totally_chain_connected(&l, usize::MAX)?.connected, "not totally chain-connected");
    ensure!(!duality_check(&l, 1 << 24)?.self_dual, "self-dual");
    let budget = Limits::default().search_budget;
    match search_shelling(&l, budget, usize::MAX)? {
        ShellingOutcome::NotShellable(r) => println!("    dunce hat: not shellable ({r:?})"),
        ShellingOutcome::Inconclusive { budget, explored } => {
            println!("    dunce hat: inconclusive at budget {budget} ({explored} prefixes); rerun with a larger --budget-search")
        }
        ShellingOutcome::Shelling(_) => return Ok(Err("a shelling was found".into())),
    }
    Ok(Ok(()))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("S4 long cycle", criterion_1),
        ("dihedral group of order 8", criterion_2),
        ("rrrt interval", criterion_3),
        ("rrt interval", criterion_4),
        ("rst = uvw interval", criterion_5),
        ("cycle graphs", criterion_6),
        ("property sweep", criterion_7),
        ("scale", criterion_8),
        ("dunce hat", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = lift(f());
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS ({name}, {t:.2} s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facposet::analysis::{run_analysis, AnalysisOptions, AnalysisReport};
use facposet::connectivity::chain_graph;
use facposet::cyclegraph::{
    analyze_reduced, build_cycle_graph, min_feedback_arc_set, reduced_cycle_graph, FeedbackArcSet,
};
use facposet::fixtures::{fixture_names, generate_family, load_fixture, Family};
use facposet::group::{validate_generating_set, PermutationInput, TableJson};
use facposet::hurwitz::{hurwitz_graph, is_locally_hurwitz_connected};
use facposet::orders::{
    enumerate_compatible_orders, is_compatible, is_el_labeling, is_totally_well_covered, is_well_covered,
    rising_factorizations,
};
use facposet::poset::{chain_word, validate_interval};
use facposet::scan::{scan, ScanConfig, ScanSource};
use facposet::shelling::{search_shelling, shelling_from_el, ShellingOutcome};
use facposet::{build_labeled_interval, Error, GeneratorOrder, GroupOracle, LabeledInterval, Limits, Permutation};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "facposet", version, about = "Factorization posets of generated groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the machine-readable result to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Largest number of maximal chains to enumerate.
    #[arg(long, global = true, value_name = "N")]
    budget_chains: Option<usize>,
    /// Node budget for the shelling search and exact feedback arc sets.
    #[arg(long, global = true, value_name = "N")]
    budget_search: Option<u64>,
    /// Generator order, comma-separated from the least label up.
    #[arg(long, global = true, value_name = "A,B,...")]
    order: Option<String>,
}

#[derive(Args, Clone, Default)]
struct Input {
    /// A built-in fixture (see `fixtures list`).
    #[arg(long, group = "source")]
    fixture: Option<String>,
    /// Permutation generators, one per line.
    #[arg(long, group = "source", value_name = "FILE")]
    perm: Option<PathBuf>,
    /// Multiplication table as JSON.
    #[arg(long, group = "source", value_name = "FILE")]
    table: Option<PathBuf>,
    /// Labeled interval as JSON.
    #[arg(long, group = "source", value_name = "FILE")]
    interval: Option<PathBuf>,
    /// Generated family, `sym:<n>` or `boolean:<n>`.
    #[arg(long, group = "source", value_name = "FAMILY:N")]
    family: Option<String>,
    /// Target element for --perm and --table.
    #[arg(long)]
    target: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate an interval; print it as JSON.
    Build {
        #[command(flatten)]
        input: Input,
    },
    /// Run every analysis and the consistency checks.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Skip the shelling search.
        #[arg(long)]
        no_shelling: bool,
    },
    /// Hurwitz orbits and local Hurwitz connectivity.
    Orbits {
        #[command(flatten)]
        input: Input,
    },
    /// Compatible orders, or the verdicts for --order.
    Orders {
        #[command(flatten)]
        input: Input,
    },
    /// Cycle graph, minimum feedback arc set and, with --order, the reduced cycle graph.
    CycleGraph {
        #[command(flatten)]
        input: Input,
    },
    /// Shellability via an EL-labeling or the shelling search.
    Shelling {
        #[command(flatten)]
        input: Input,
    },
    /// Analyze many instances and report counterexample candidates.
    Scan {
        /// Families, e.g. `sym:3..5,boolean:1..4`.
        #[arg(long, group = "scan_source")]
        families: Option<String>,
        /// Permutation file whose lines generate the ambient group; scans its
        /// conjugation-closed generating subsets.
        #[arg(long, group = "scan_source", value_name = "FILE")]
        group: Option<PathBuf>,
        /// Directory of interval JSON files.
        #[arg(long, group = "scan_source", value_name = "DIR")]
        dir: Option<PathBuf>,
        /// Target lengths for --group, comma-separated.
        #[arg(long, default_value = "2")]
        lengths: String,
        /// Largest number of conjugacy classes for --group.
        #[arg(long, default_value_t = 12)]
        max_classes: usize,
        /// Where to write replay files of candidates.
        #[arg(long, value_name = "DIR")]
        replay_dir: Option<PathBuf>,
    },
    /// Built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Graphviz export.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        dot: DotKind,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    Hasse,
    Chain,
    Hurwitz,
    Cycle,
    Reduced,
}

struct Ctx {
    limits: Limits,
    order: Option<String>,
}

impl Ctx {
    fn order(&self, l: &LabeledInterval) -> facposet::Result<Option<GeneratorOrder>> {
        self.order.as_deref().map(|s| GeneratorOrder::parse(l, s)).transpose()
    }
}

fn read(path: &Path) -> facposet::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn parse_family(s: &str) -> facposet::Result<(Family, Vec<usize>)> {
    let (f, n) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected FAMILY:N, got {s:?}")))?;
    let fam: Family = f.parse()?;
    let bad = || Error::Parse(format!("bad size {n:?}"));
    let sizes = match n.split_once("..") {
        Some((a, b)) => {
            let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            (a..=b).collect()
        }
        None => vec![n.parse().map_err(|_| bad())?],
    };
    Ok((fam, sizes))
}

fn target_of(oracle: &GroupOracle, target: &Option<String>) -> facposet::Result<usize> {
    let t = target.as_deref().ok_or_else(|| Error::Parse("--target is required with --perm and --table".into()))?;
    oracle.parse_element(t)
}

fn group_interval(oracle: GroupOracle, target: &Option<String>, name: String) -> facposet::Result<LabeledInterval> {
    let report = validate_generating_set(&oracle);
    if !report.passed() {
        return Err(Error::InvalidGeneratingSet(report.summary()));
    }
    let t = target_of(&oracle, target)?;
    Ok(build_labeled_interval(&Arc::new(oracle), t)?.with_name(name))
}

fn load(input: &Input, ctx: &Ctx) -> facposet::Result<LabeledInterval> {
    let stem = |p: &Path| p.file_stem().map(|s| s.to_string_lossy().to_string()).unwrap_or_default();
    if let Some(name) = &input.fixture {
        let l = load_fixture(name)?.interval()?;
        return Ok(if l.name().is_some() { l } else { l.with_name(name.clone()) });
    }
    if let Some(p) = &input.perm {
        let parsed = PermutationInput::parse(&read(p)?)?;
        let oracle = GroupOracle::from_permutation_input(&parsed, &ctx.limits)?;
        return group_interval(oracle, &input.target, stem(p));
    }
    if let Some(p) = &input.table {
        let t: TableJson = serde_json::from_str(&read(p)?)?;
        return group_interval(GroupOracle::from_table(&t)?, &input.target, stem(p));
    }
    if let Some(p) = &input.interval {
        let l = LabeledInterval::from_json_str(&read(p)?)?;
        return Ok(if l.name().is_some() { l } else { l.with_name(stem(p)) });
    }
    if let Some(f) = &input.family {
        let (fam, sizes) = parse_family(f)?;
        let [n] = sizes[..] else {
            return Err(Error::Parse("--family takes a single size".into()));
        };
        return generate_family(fam, n)?.interval();
    }
    Err(Error::Parse("no input: use --fixture, --perm, --table, --interval or --family".into()))
}

fn word(l: &LabeledInterval, c: &facposet::Chain) -> String {
    chain_word(l, c).map(|w| l.format_word(&w)).unwrap_or_else(|_| l.format_chain(c))
}

fn print_analysis(r: &AnalysisReport) {
    let s = &r.summary;
    println!("{}", r.name.as_deref().unwrap_or("interval"));
    println!("  nodes {}, rank {}, maximal chains {}, mobius {}", s.nodes, s.rank, s.maximal_chains, s.mobius);
    println!("  self-dual: {}", s.self_dual.self_dual);
    let c = &r.connectivity;
    println!("  chain-connected: {} ({} components)", c.chain_connected, c.chain_components);
    match &c.totally_witness {
        None => println!("  totally chain-connected: true"),
        Some((x, y)) => println!("  totally chain-connected: false (interval [{x}, {y}])"),
    }
    if let Some(h) = &r.hurwitz {
        println!("  hurwitz-connected: {} ({} orbits)", h.connected, h.orbits);
        match &h.local_witness {
            None => println!("  locally hurwitz-connected: true"),
            Some(g) => println!("  locally hurwitz-connected: false (at {g})"),
        }
    }
    if let Some(o) = &r.orders {
        match o.compatible_count {
            Some(n) => println!("  compatible orders: {n}"),
            None => println!("  compatible orders: budget exceeded"),
        }
        for ord in o.compatible_orders.iter().take(8) {
            println!("    {}", ord.join(" < "));
        }
        if let (Some(lo), Some(hi)) = (o.min_rise, o.max_rise) {
            println!("  rise over all orders: [{lo}, {hi}]");
        }
        let el = o.tried.iter().filter(|t| t.el_labeling).count();
        println!("  orders tried: {}, EL-labelings among them: {el}", o.tried.len());
    }
    if let Some(g) = &r.cycle_graph {
        let d = g.min_feedback_arc_set.map_or("budget exceeded".to_string(), |d| d.to_string());
        println!("  cycle graph: {} vertices, {} edges, |R2| {}, d {d}", g.vertices, g.edges, g.rank2_elements);
    }
    if let Some(sh) = &r.shelling {
        match &sh.reason {
            Some(reason) => println!("  shelling: {} ({reason:?})", sh.status),
            None => println!("  shelling: {} ({})", sh.status, sh.method),
        }
    }
    let violations = r.theorem_violations();
    let candidates = r.conjecture_candidates();
    println!(
        "  consistency: {} checks, {} violated theorems, {} open-problem candidates",
        r.consistency.len(),
        violations.len(),
        candidates.len()
    );
    for c in violations.iter().chain(&candidates) {
        println!("    {:?} {}: {}", c.kind, c.id, c.statement);
    }
}

fn fas_json(l: &LabeledInterval, gamma: &facposet::cyclegraph::CycleGraph, f: &FeedbackArcSet) -> Value {
    let edges: Vec<Value> = f
        .edges
        .iter()
        .map(|&i| {
            let e = &gamma.edges[i];
            json!({"from": l.label_name(e.from), "to": l.label_name(e.to), "label": l.node_name(e.label)})
        })
        .collect();
    json!({"size": f.size, "edges": edges, "nodes_explored": f.nodes_explored})
}

fn run(cli: Cli) -> facposet::Result<ExitCode> {
    let mut limits = Limits::default();
    if let Some(n) = cli.budget_chains {
        limits.max_chains = n;
    }
    if let Some(n) = cli.budget_search {
        limits.search_budget = n;
    }
    let ctx = Ctx { limits, order: cli.order.clone() };
    let mut code = ExitCode::SUCCESS;
    let out: Value = match &cli.command {
        Command::Build { input } => {
            let l = load(input, &ctx)?;
            let report = validate_interval(&l);
            if !report.passed() {
                return Err(Error::InvalidInterval(report.summary()));
            }
            let text = l.to_json_string();
            if cli.json.is_none() {
                println!("{text}");
            }
            serde_json::from_str(&text)?
        }
        Command::Analyze { input, no_shelling } => {
            let l = load(input, &ctx)?;
            let opts = AnalysisOptions {
                limits: ctx.limits,
                order: ctx.order(&l)?,
                shelling_search: !no_shelling,
                ..AnalysisOptions::default()
            };
            let r = run_analysis(&l, &opts)?;
            print_analysis(&r);
            let v = serde_json::to_value(&r)?;
            if let Some(p) = &cli.json {
                std::fs::write(p, serde_json::to_string_pretty(&v)?)?;
            }
            r.assert_consistent()?;
            return Ok(code);
        }
        Command::Orbits { input } => {
            let l = load(input, &ctx)?;
            let hg = hurwitz_graph(&l, ctx.limits.max_chains)?;
            let comps = hg.components();
            let (local, witness) = is_locally_hurwitz_connected(&l)?;
            let orbits: Vec<Vec<String>> =
                comps.iter().map(|c| c.iter().map(|&i| word(&l, &hg.chains[i])).collect()).collect();
            println!("{} maximal chains in {} Hurwitz orbits", hg.chains.len(), orbits.len());
            for (i, o) in orbits.iter().enumerate() {
                println!("  orbit {} ({}): {}", i + 1, o.len(), o.join(" "));
            }
            let w = witness.map(|g| l.node_name(g).to_string());
            match &w {
                None => println!("locally hurwitz-connected: true"),
                Some(g) => println!("locally hurwitz-connected: false (at {g})"),
            }
            json!({"orbits": orbits, "hurwitz_connected": orbits.len() <= 1,
                   "locally_hurwitz_connected": local, "local_witness": w})
        }
        Command::Orders { input } => {
            let l = load(input, &ctx)?;
            match ctx.order(&l)? {
                Some(ord) => {
                    let c = is_compatible(&l, &ord)?;
                    let rise = rising_factorizations(&l, &ord, ctx.limits.max_chains)?;
                    let wc = is_well_covered(&l, &ord)?;
                    let twc = is_totally_well_covered(&l, &ord)?;
                    let el = is_el_labeling(&l, &ord)?;
                    println!("order {}", ord.display(&l));
                    println!("  compatible: {}", c.compatible);
                    if let Some((g, ws)) = &c.witness {
                        let ws: Vec<String> = ws.iter().map(|w| l.format_word(w)).collect();
                        println!("    rank-2 element {} has rising words [{}]", l.node_name(*g), ws.join(", "));
                    }
                    let rw: Vec<String> = rise.iter().map(|w| l.format_word(w)).collect();
                    println!("  rising chains: {} [{}]", rw.len(), rw.join(", "));
                    println!("  well-covered: {wc}, totally well-covered: {}", twc.holds);
                    println!("  EL-labeling: {}", el.holds);
                    json!({"order": ord.names(&l), "compatible": c.compatible, "rising": rw,
                           "well_covered": wc, "totally_well_covered": twc.holds, "el_labeling": el.holds})
                }
                None => {
                    let orders = enumerate_compatible_orders(&l, ctx.limits.search_budget)?;
                    println!("{} compatible orders", orders.len());
                    for o in &orders {
                        println!("  {}", o.display(&l));
                    }
                    json!({"compatible_orders": orders.iter().map(|o| o.names(&l)).collect::<Vec<_>>()})
                }
            }
        }
        Command::CycleGraph { input } => {
            let l = load(input, &ctx)?;
            let gamma = build_cycle_graph(&l)?;
            let fas = min_feedback_arc_set(&gamma, ctx.limits.search_budget)?;
            let r2 = gamma.labels.len();
            println!(
                "cycle graph: {} vertices, {} edges ({} loops), |R2| = {r2}",
                gamma.vertices.len(),
                gamma.edges.len(),
                gamma.loop_count()
            );
            println!("minimum feedback arc set: {} ({} nodes explored)", fas.size, fas.nodes_explored);
            let mut v = json!({"vertices": gamma.vertices.len(), "edges": gamma.edges.len(),
                               "loops": gamma.loop_count(), "rank2_elements": r2,
                               "feedback_arc_set": fas_json(&l, &gamma, &fas)});
            if let Some(ord) = ctx.order(&l)? {
                let rg = reduced_cycle_graph(&l, &ord)?;
                let ra = analyze_reduced(&rg, 5040)?;
                let sinks: Vec<&str> = ra.sinks.iter().map(|&a| l.label_name(a)).collect();
                println!("reduced cycle graph for {}: {} edges", ord.display(&l), rg.edges.len());
                println!("  induced order linear: {}, sinks: {}", ra.induced_order_is_linear, sinks.join(", "));
                let exts: Vec<Vec<String>> = ra.linear_extensions.iter().map(|o| o.names(&l)).collect();
                println!("  linear extensions: {}", exts.len());
                v["reduced"] = json!({"order": ord.names(&l), "edges": rg.edges.len(),
                    "induced_order_is_linear": ra.induced_order_is_linear, "unique_sink": ra.unique_sink,
                    "sinks": sinks, "linear_extensions": exts});
            }
            v
        }
        Command::Shelling { input } => {
            let l = load(input, &ctx)?;
            let el_order = match ctx.order(&l)? {
                Some(o) if is_el_labeling(&l, &o)?.holds => Some(o),
                _ => None,
            };
            if let Some(ord) = el_order {
                let sh = shelling_from_el(&l, &ord)?;
                let ws: Vec<String> = sh.iter().map(|c| word(&l, c)).collect();
                println!("shellable: lexicographic order of the EL-labeling {}", ord.display(&l));
                println!("  {}", ws.join(" "));
                json!({"status": "shellable", "certificate": ws})
            } else {
                match search_shelling(&l, ctx.limits.search_budget, ctx.limits.max_chains)? {
                    ShellingOutcome::Shelling(sh) => {
                        let ws: Vec<String> = sh.iter().map(|c| word(&l, c)).collect();
                        println!("shellable\n  {}", ws.join(" "));
                        json!({"status": "shellable", "certificate": ws})
                    }
                    ShellingOutcome::NotShellable(r) => {
                        println!("not shellable: {r:?}");
                        json!({"status": "not_shellable", "reason": serde_json::to_value(&r)?})
                    }
                    ShellingOutcome::Inconclusive { budget, explored } => {
                        println!("inconclusive: budget {budget} exhausted after {explored} prefixes");
                        code = ExitCode::from(3);
                        json!({"status": "inconclusive", "budget": budget, "explored": explored})
                    }
                }
            }
        }
        Command::Scan { families, group, dir, lengths, max_classes, replay_dir } => {
            let source = if let Some(f) = families {
                let mut fams = Vec::new();
                for part in f.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (fam, sizes) = parse_family(part)?;
                    fams.extend(sizes.into_iter().map(|n| (fam, n)));
                }
                ScanSource::Families(fams)
            } else if let Some(p) = group {
                let parsed = PermutationInput::parse(&read(p)?)?;
                let target_lengths = lengths
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("bad length {s:?}"))))
                    .collect::<facposet::Result<Vec<usize>>>()?;
                let mut ambient: Vec<Permutation> = parsed.universe.clone();
                ambient.extend(parsed.generators.into_iter().map(|(_, p)| p));
                ScanSource::ConjugationClosedSubsets { ambient, target_lengths, max_classes: *max_classes }
            } else if let Some(d) = dir {
                ScanSource::Directory(d.clone())
            } else {
                return Err(Error::Parse("scan needs --families, --group or --dir".into()));
            };
            let cfg = ScanConfig {
                source,
                options: AnalysisOptions { limits: ctx.limits, ..AnalysisOptions::default() },
                replay_dir: replay_dir.clone(),
            };
            let findings = scan(&cfg)?;
            for f in &findings.instances {
                let status = match (&f.budget_exhausted, f.candidates.is_empty()) {
                    (Some(e), _) => format!("budget exceeded: {e}"),
                    (None, true) => "ok".to_string(),
                    (None, false) => format!("candidate: {}", f.candidates.join(", ")),
                };
                println!("{}: {status}", f.name);
            }
            println!(
                "{} instances, {} candidates, {} budget exhausted",
                findings.instances.len(),
                findings.candidate_count,
                findings.budget_exhausted_count
            );
            if findings.budget_exhausted_count > 0 {
                code = ExitCode::from(3);
            }
            serde_json::to_value(&findings)?
        }
        Command::Fixtures { action: FixturesAction::List } => {
            let names = fixture_names();
            for n in &names {
                println!("{n}");
            }
            json!(names)
        }
        Command::Export { input, dot, output } => {
            let l = load(input, &ctx)?;
            let cap = ctx.limits.max_chains;
            let text = match dot {
                DotKind::Hasse => l.to_dot(),
                DotKind::Chain => chain_graph(&l, cap)?.to_dot(&l),
                DotKind::Hurwitz => hurwitz_graph(&l, cap)?.to_dot(&l),
                DotKind::Cycle => build_cycle_graph(&l)?.to_dot(&l),
                DotKind::Reduced => {
                    let ord = match ctx.order(&l)? {
                        Some(o) => o,
                        None => enumerate_compatible_orders(&l, ctx.limits.search_budget)?
                            .into_iter()
                            .next()
                            .ok_or(Error::NotCompatible)?,
                    };
                    reduced_cycle_graph(&l, &ord)?.to_dot(&l)
                }
            };
            match output {
                Some(p) => std::fs::write(p, &text)?,
                None => print!("{text}"),
            }
            json!({"dot": text})
        }
    };
    if let Some(p) = &cli.json {
        std::fs::write(p, serde_json::to_string_pretty(&out)?)?;
    }
    Ok(code)
}

fn exit_code(e: &Error) -> u8 {
    if e.is_internal() {
        4
    } else if e.is_budget() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("FACPOSET_THREADS").ok().and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = threads.filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_ranges() {
        assert_eq!(parse_family("sym:3..5").unwrap(), (Family::SymLongCycle, vec![3, 4, 5]));
        assert_eq!(parse_family("boolean:2").unwrap(), (Family::Boolean, vec![2]));
        assert!(parse_family("sym").is_err());
        assert!(parse_family("cube:3").is_err());
    }

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(exit_code(&Error::UnknownFixture("x".into())), 2);
        assert_eq!(exit_code(&Error::ChainBudgetExceeded { limit: 1 }), 3);
        assert_eq!(exit_code(&Error::TheoremViolation("x".into())), 4);
    }
}

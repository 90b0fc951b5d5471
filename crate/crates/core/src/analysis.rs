//! Whole-instance analysis: every module's verdicts plus a consistency section that checks
//! the proved implications between them and tests the open conjectures.

use serde::Serialize;

use crate::connectivity::{chain_graph, is_totally_chain_connected};
use crate::cyclegraph::{
    analyze_reduced, analyze_reduced_verdicts, build_cycle_graph, min_feedback_arc_set,
    min_feedback_arc_set_by_ordering, reduced_cycle_graph,
};
use crate::error::{Error, Result};
use crate::hurwitz::{hurwitz_graph, is_locally_hurwitz_connected};
use crate::orders::{
    all_orders, enumerate_compatible_orders, is_compatible, is_el_labeling, is_totally_well_covered, is_well_covered,
    rank2_words, rise_of_words, GeneratorOrder,
};
use crate::poset::{
    chain_word, count_chains, duality_check, maximal_chains, mobius_invariant, subinterval, validate_interval, Duality,
    Factorization, LabeledInterval,
};
use crate::shelling::{search_shelling, shelling_from_el, NotShellableReason, ShellingOutcome};
use crate::Limits;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub limits: Limits,
    /// Extra order to analyze in addition to the enumerated ones.
    pub order: Option<GeneratorOrder>,
    /// Compatible orders analyzed in detail (the enumeration itself is complete).
    pub max_compatible_orders: usize,
    /// All orders are tried when the alphabet has at most this many labels.
    pub all_orders_up_to: usize,
    /// Run the shelling search when no EL-labeling certifies shellability.
    pub shelling_search: bool,
    /// Cap on linear extensions listed per reduced cycle graph.
    pub max_linear_extensions: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            limits: Limits::default(),
            order: None,
            max_compatible_orders: 64,
            all_orders_up_to: 6,
            shelling_search: true,
            max_linear_extensions: 5040,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub nodes: usize,
    pub rank: usize,
    pub maximal_chains: u64,
    pub mobius: i64,
    pub self_dual: Duality,
    pub labeled: bool,
    pub group_backed: bool,
    pub alphabet: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityReport {
    pub chain_connected: bool,
    pub chain_components: usize,
    pub totally_chain_connected: bool,
    /// Least interval whose chain graph is disconnected, by node names.
    pub totally_witness: Option<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HurwitzReport {
    pub orbits: usize,
    pub orbit_sizes: Vec<usize>,
    pub connected: bool,
    pub locally_connected: bool,
    pub local_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub order: Vec<String>,
    pub compatible: bool,
    pub rise: usize,
    pub well_covered: bool,
    pub totally_well_covered: bool,
    pub el_labeling: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrdersReport {
    pub labels: usize,
    /// Number of compatible orders, `None` if the enumeration ran out of budget.
    pub compatible_count: Option<usize>,
    pub compatible_orders: Vec<Vec<String>>,
    pub tried: Vec<OrderReport>,
    pub min_rise: Option<usize>,
    pub max_rise: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleGraphReport {
    /// `|R2|`: elements of rank two.
    pub rank2_elements: usize,
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
    /// `d(Γ)`, `None` if the branch and bound ran out of budget.
    pub min_feedback_arc_set: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedReport {
    pub order: Vec<String>,
    pub edges: usize,
    pub induced_order_is_linear: bool,
    pub unique_sink: bool,
    pub sinks: Vec<String>,
    /// `None` when the extension count exceeds the cap.
    pub linear_extensions: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShellingReport {
    /// `shellable`, `not_shellable` or `inconclusive`.
    pub status: String,
    pub method: String,
    pub certificate: Option<Vec<String>>,
    pub reason: Option<NotShellableReason>,
    pub budget: Option<u64>,
    pub explored: Option<u64>,
}

impl ShellingReport {
    pub fn shellable(&self) -> Option<bool> {
        match self.status.as_str() {
            "shellable" => Some(true),
            "not_shellable" => Some(false),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A proved implication; a violation is a bug.
    Theorem,
    /// An open conjecture; a violation is a counterexample candidate.
    Conjecture,
    /// An open question; recorded only.
    Question,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyCheck {
    pub id: String,
    pub kind: CheckKind,
    pub statement: String,
    /// False when the hypotheses do not hold.
    pub applies: bool,
    /// `None` when not applicable or undecided (for example an inconclusive shelling search).
    pub holds: Option<bool>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub version: u32,
    pub name: Option<String>,
    pub summary: PosetSummary,
    pub validation: Vec<String>,
    pub connectivity: ConnectivityReport,
    pub hurwitz: Option<HurwitzReport>,
    pub orders: Option<OrdersReport>,
    pub cycle_graph: Option<CycleGraphReport>,
    pub reduced: Vec<ReducedReport>,
    pub shelling: Option<ShellingReport>,
    pub consistency: Vec<ConsistencyCheck>,
}

impl AnalysisReport {
    pub fn theorem_violations(&self) -> Vec<&ConsistencyCheck> {
        self.consistency.iter().filter(|c| c.kind == CheckKind::Theorem && c.holds == Some(false)).collect()
    }

    pub fn conjecture_candidates(&self) -> Vec<&ConsistencyCheck> {
        self.consistency.iter().filter(|c| c.kind != CheckKind::Theorem && c.holds == Some(false)).collect()
    }

    /// Turns the first violated proved implication into an error.
    pub fn assert_consistent(&self) -> Result<()> {
        match self.theorem_violations().first() {
            Some(c) => Err(Error::TheoremViolation(format!(
                "{}: {}{}",
                c.id,
                c.statement,
                c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
            ))),
            None => Ok(()),
        }
    }

    pub fn check(&self, id: &str) -> Option<&ConsistencyCheck> {
        self.consistency.iter().find(|c| c.id == id)
    }
}

struct Checks(Vec<ConsistencyCheck>);

impl Checks {
    fn push(&mut self, id: &str, kind: CheckKind, statement: &str, applies: bool, holds: Option<bool>) {
        self.push_detail(id, kind, statement, applies, holds, None);
    }

    fn push_detail(
        &mut self,
        id: &str,
        kind: CheckKind,
        statement: &str,
        applies: bool,
        holds: Option<bool>,
        detail: Option<String>,
    ) {
        self.0.push(ConsistencyCheck {
            id: id.to_string(),
            kind,
            statement: statement.to_string(),
            applies,
            holds: if applies { holds } else { None },
            detail,
        });
    }

    /// `p ⇒ q` with `q` possibly undecided.
    fn implication(&mut self, id: &str, kind: CheckKind, statement: &str, p: bool, q: Option<bool>) {
        self.push(id, kind, statement, p, q);
    }
}

/// Per-order verdicts of the orders that were tried.
struct Tried {
    order: GeneratorOrder,
    report: OrderReport,
}

fn order_report(l: &LabeledInterval, ord: &GeneratorOrder, words: &[Factorization]) -> Result<OrderReport> {
    let pos = ord.positions(l)?;
    Ok(OrderReport {
        order: ord.names(l),
        compatible: is_compatible(l, ord)?.compatible,
        rise: rise_of_words(words, &pos),
        well_covered: is_well_covered(l, ord)?,
        totally_well_covered: is_totally_well_covered(l, ord)?.holds,
        el_labeling: is_el_labeling(l, ord)?.holds,
    })
}

fn chain_names(l: &LabeledInterval, chains: &[crate::poset::Chain]) -> Result<Vec<String>> {
    chains
        .iter()
        .map(|c| if l.is_labeled() { chain_word(l, c).map(|w| l.format_word(&w)) } else { Ok(l.format_chain(c)) })
        .collect()
}

fn budget_to_none<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs every analysis that applies to `l`.
pub fn run_analysis(l: &LabeledInterval, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let limits = &opts.limits;
    let cap = limits.max_chains;
    let validation = validate_interval(l);
    if !validation.passed() {
        return Err(Error::InvalidInterval(validation.summary()));
    }
    let chains = maximal_chains(l, cap)?;
    let chain_count = count_chains(l);
    if chain_count != chains.len() as u128 {
        return Err(Error::OracleDisagreement(format!(
            "chain count {chain_count} differs from {} enumerated chains",
            chains.len()
        )));
    }
    let summary = PosetSummary {
        nodes: l.node_count(),
        rank: l.rank(),
        maximal_chains: chains.len() as u64,
        mobius: mobius_invariant(l)?,
        self_dual: duality_check(l, limits.search_budget)?,
        labeled: l.is_labeled(),
        group_backed: l.group().is_some(),
        alphabet: l.occurring_labels().iter().map(|&a| l.label_name(a).to_string()).collect(),
    };

    let cg = chain_graph(l, cap)?;
    let chain_components = cg.components().len();
    let total = is_totally_chain_connected(l, cap)?;
    let connectivity = ConnectivityReport {
        chain_connected: chain_components <= 1,
        chain_components,
        totally_chain_connected: total.connected,
        totally_witness: total.witness.map(|(x, y)| (l.node_name(x).to_string(), l.node_name(y).to_string())),
    };

    let mut checks = Checks(Vec::new());
    let mut hurwitz = None;
    let mut orders = None;
    let mut cycle_graph = None;
    let mut reduced = Vec::new();
    let mut tried: Vec<Tried> = Vec::new();
    let mut compatible_exists: Option<bool> = None;

    if l.is_labeled() {
        let hg = hurwitz_graph(l, cap)?;
        let comps = hg.components();
        let hg_in_cg = hg.edges.iter().all(|e| cg.edges.binary_search(e).is_ok());
        let (local, local_witness) = is_locally_hurwitz_connected(l)?;
        let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let h = HurwitzReport {
            orbits: comps.len(),
            orbit_sizes: sizes,
            connected: comps.len() <= 1,
            locally_connected: local,
            local_witness: local_witness.map(|g| l.node_name(g).to_string()),
        };
        checks.push(
            "hurwitz_subgraph",
            CheckKind::Theorem,
            "the Hurwitz graph is a subgraph of the chain graph",
            true,
            Some(hg_in_cg),
        );

        let words: Vec<Factorization> = chains.iter().map(|c| chain_word(l, c)).collect::<Result<_>>()?;
        let compatible = budget_to_none(enumerate_compatible_orders(l, limits.search_budget))?;
        compatible_exists = compatible.as_ref().map(|v| !v.is_empty());

        let mut candidates: Vec<GeneratorOrder> = Vec::new();
        if let Some(o) = &opts.order {
            candidates.push(o.clone());
        }
        if let Some(c) = &compatible {
            candidates.extend(c.iter().take(opts.max_compatible_orders).cloned());
        }
        let labels = l.occurring_labels().len();
        if labels <= opts.all_orders_up_to {
            candidates.extend(all_orders(l));
        } else {
            candidates.push(GeneratorOrder::natural(l));
        }
        let mut seen = std::collections::HashSet::new();
        candidates.retain(|o| seen.insert(o.clone()));
        for ord in candidates {
            let report = order_report(l, &ord, &words)?;
            tried.push(Tried { order: ord, report });
        }

        let rises: Vec<usize> = tried.iter().map(|t| t.report.rise).collect();
        let all_tried = labels <= opts.all_orders_up_to;
        orders = Some(OrdersReport {
            labels,
            compatible_count: compatible.as_ref().map(Vec::len),
            compatible_orders: compatible
                .as_ref()
                .map(|v| v.iter().take(opts.max_compatible_orders).map(|o| o.names(l)).collect())
                .unwrap_or_default(),
            tried: tried.iter().map(|t| t.report.clone()).collect(),
            min_rise: if all_tried { rises.iter().copied().min() } else { None },
            max_rise: if all_tried { rises.iter().copied().max() } else { None },
        });

        let gamma = build_cycle_graph(l)?;
        let fas = budget_to_none(min_feedback_arc_set(&gamma, limits.search_budget))?;
        if let Some(f) = &fas {
            if gamma.vertices.len() <= 16 {
                let oracle = min_feedback_arc_set_by_ordering(&gamma)?;
                if oracle != f.size {
                    return Err(Error::OracleDisagreement(format!(
                        "feedback arc set: branch and bound {} vs ordering oracle {oracle}",
                        f.size
                    )));
                }
            }
        }
        let r2 = rank2_words(l).len();
        cycle_graph = Some(CycleGraphReport {
            rank2_elements: r2,
            vertices: gamma.vertices.len(),
            edges: gamma.edges.len(),
            loops: gamma.loop_count(),
            min_feedback_arc_set: fas.as_ref().map(|f| f.size),
        });

        // proved implications on these quantities
        let d = fas.as_ref().map(|f| f.size);
        checks.push("fas_lower_bound", CheckKind::Theorem, "d(Γ) ≥ |R2|", d.is_some(), d.map(|d| d >= r2));
        checks.push(
            "fas_equality_iff_compatible",
            CheckKind::Theorem,
            "d(Γ) = |R2| iff a compatible order exists",
            d.is_some() && compatible_exists.is_some(),
            d.zip(compatible_exists).map(|(d, c)| (d == r2) == c),
        );
        checks.implication(
            "hurwitz_implies_chain",
            CheckKind::Theorem,
            "Hurwitz-connected ⇒ chain-connected",
            h.connected,
            Some(connectivity.chain_connected),
        );
        checks.implication(
            "chain_local_implies_hurwitz",
            CheckKind::Theorem,
            "chain-connected ∧ locally Hurwitz-connected ⇒ Hurwitz-connected",
            connectivity.chain_connected && h.locally_connected,
            Some(h.connected),
        );
        if let Some(c) = compatible_exists {
            checks.implication(
                "chain_compatible_implies_hurwitz",
                CheckKind::Theorem,
                "chain-connected ∧ compatible order ⇒ Hurwitz-connected",
                connectivity.chain_connected && c,
                Some(h.connected),
            );
            checks.implication(
                "compatible_implies_local",
                CheckKind::Theorem,
                "compatible order ⇒ locally Hurwitz-connected",
                c,
                Some(h.locally_connected),
            );
        }

        let pos_cache: Vec<Vec<usize>> = tried.iter().map(|t| t.order.positions(l)).collect::<Result<_>>()?;
        let orbits_le_rise = tried.iter().all(|t| h.orbits <= t.report.rise);
        checks.push(
            "orbits_le_rise",
            CheckKind::Theorem,
            "number of Hurwitz orbits ≤ rise(⊤;≺) for every order",
            true,
            Some(orbits_le_rise),
        );

        let el_iff: Vec<&Tried> = tried
            .iter()
            .filter(|t| t.report.el_labeling != (t.report.compatible && t.report.totally_well_covered))
            .collect();
        checks.push_detail(
            "el_iff_compatible_well_covered",
            CheckKind::Theorem,
            "EL-labeling ⇔ compatible ∧ totally well-covered, for every order tried",
            !tried.is_empty(),
            Some(el_iff.is_empty()),
            el_iff.first().map(|t| t.report.order.join(",")),
        );
        let twc_bad = tried.iter().find(|t| t.report.totally_well_covered && !connectivity.totally_chain_connected);
        checks.push_detail(
            "well_covered_implies_totally_chain",
            CheckKind::Theorem,
            "totally well-covered ⇒ totally chain-connected",
            tried.iter().any(|t| t.report.totally_well_covered),
            Some(twc_bad.is_none()),
            twc_bad.map(|t| t.report.order.join(",")),
        );

        // compatible orders: cyclic shifts, extreme letters of rank-2 rising words, reduced graphs
        let r2w = rank2_words(l);
        let mut shift_ok = true;
        let mut minmax_ok = true;
        let mut sink_ok = true;
        let mut ext_ok = true;
        let mut conj67: Option<String> = None;
        let mut conj67_applies = false;
        for (t, pos) in tried.iter().zip(&pos_cache) {
            if !t.report.compatible {
                continue;
            }
            for s in 1..t.order.0.len() {
                shift_ok &= is_compatible(l, &t.order.cyclic_shift(s))?.compatible;
            }
            for (_, ws) in &r2w {
                let rising: Vec<&(usize, usize)> = ws.iter().filter(|(a, b)| pos[*a] <= pos[*b]).collect();
                let lo = ws.iter().map(|(a, _)| pos[*a]).min();
                let hi = ws.iter().map(|(a, _)| pos[*a]).max();
                if let [(a, b)] = rising.as_slice() {
                    minmax_ok &= Some(pos[*a]) == lo && Some(pos[*b]) == hi;
                }
            }
            if t.report.compatible && compatible_exists.is_some() {
                let rg = reduced_cycle_graph(l, &t.order)?;
                let ra = budget_to_none(analyze_reduced(&rg, opts.max_linear_extensions))?;
                let ra_linear = match &ra {
                    Some(ra) => ra.clone(),
                    None => analyze_reduced_verdicts(&rg)?,
                };
                sink_ok &= ra_linear.unique_sink == t.report.well_covered;
                if let Some(ra) = &ra {
                    for ext in &ra.linear_extensions {
                        ext_ok &= is_compatible(l, ext)?.compatible;
                    }
                    ext_ok &= ra.linear_extensions.contains(&t.order);
                }
                if reduced.len() < opts.max_compatible_orders {
                    reduced.push(ReducedReport {
                        order: t.order.names(l),
                        edges: rg.edges.len(),
                        induced_order_is_linear: ra_linear.induced_order_is_linear,
                        unique_sink: ra_linear.unique_sink,
                        sinks: ra_linear.sinks.iter().map(|&a| l.label_name(a).to_string()).collect(),
                        linear_extensions: ra.as_ref().map(|r| r.linear_extensions.len()),
                    });
                }
                if connectivity.totally_chain_connected {
                    conj67_applies = true;
                    if conj67.is_none() {
                        conj67 = reduced_linear_below_every_element(l, &t.order)?;
                    }
                }
            }
        }
        let any_compatible_tried = tried.iter().any(|t| t.report.compatible);
        checks.push(
            "compatible_cyclic_shift",
            CheckKind::Theorem,
            "cyclic shifts of compatible orders are compatible",
            any_compatible_tried,
            Some(shift_ok),
        );
        checks.push(
            "compatible_min_max",
            CheckKind::Theorem,
            "the rising word of a rank-2 element runs from its least to its greatest atom",
            any_compatible_tried,
            Some(minmax_ok),
        );
        checks.push(
            "unique_sink_iff_well_covered",
            CheckKind::Theorem,
            "the reduced cycle graph has a unique sink iff well-covered, for compatible orders",
            any_compatible_tried,
            Some(sink_ok),
        );
        checks.push(
            "linear_extensions_compatible",
            CheckKind::Theorem,
            "every linear extension of the induced order is compatible and the order itself is one",
            any_compatible_tried,
            Some(ext_ok),
        );

        if let Some(c) = compatible_exists {
            let tcc = connectivity.totally_chain_connected;
            let bad510 = tried.iter().find(|t| t.report.el_labeling != (tcc && t.report.compatible));
            checks.push_detail(
                "conjecture_el_iff_compatible",
                CheckKind::Conjecture,
                "EL-labeling ⇔ totally chain-connected ∧ compatible, for every order tried",
                true,
                Some(bad510.is_none()),
                bad510.map(|t| t.report.order.join(",")),
            );
            let bad522 = tried.iter().find(|t| tcc && t.report.compatible && !t.report.totally_well_covered);
            checks.push_detail(
                "conjecture_compatible_well_covered",
                CheckKind::Conjecture,
                "totally chain-connected ∧ compatible ⇒ totally well-covered",
                tcc && any_compatible_tried,
                Some(bad522.is_none()),
                bad522.map(|t| t.report.order.join(",")),
            );
            checks.push_detail(
                "conjecture_reduced_linear",
                CheckKind::Conjecture,
                "totally chain-connected ∧ compatible ⇒ every lower interval has a linear reduced cycle graph",
                conj67_applies,
                Some(conj67.is_none()),
                conj67.clone(),
            );
            checks.implication(
                "question_compatible_totally_connected",
                CheckKind::Question,
                "chain-connected ∧ compatible ⇒ totally chain-connected",
                connectivity.chain_connected && c,
                Some(tcc),
            );
        }
        let rises: Vec<String> =
            tried.iter().filter(|t| t.report.compatible).take(8).map(|t| t.report.rise.to_string()).collect();
        checks.push_detail(
            "question_rise_vs_components",
            CheckKind::Question,
            "rise(⊤;≺) for compatible orders compared with the number of chain-graph components",
            any_compatible_tried,
            None,
            Some(format!("rise [{}], components {chain_components}", rises.join(", "))),
        );
        hurwitz = Some(h);
    }

    // shelling: an EL-labeling certifies it, otherwise search
    let el_order = tried.iter().find(|t| t.report.el_labeling).map(|t| t.order.clone());
    let mut shelling = None;
    if let Some(ord) = &el_order {
        let sh = shelling_from_el(l, ord)?;
        shelling = Some(ShellingReport {
            status: "shellable".into(),
            method: format!("lexicographic order of the EL-labeling {}", ord.names(l).join(",")),
            certificate: Some(chain_names(l, &sh)?),
            reason: None,
            budget: None,
            explored: None,
        });
    } else if opts.shelling_search {
        let out = search_shelling(l, limits.search_budget, cap)?;
        shelling = Some(match out {
            ShellingOutcome::Shelling(sh) => ShellingReport {
                status: "shellable".into(),
                method: "search".into(),
                certificate: Some(chain_names(l, &sh)?),
                reason: None,
                budget: Some(limits.search_budget),
                explored: None,
            },
            ShellingOutcome::NotShellable(r) => ShellingReport {
                status: "not_shellable".into(),
                method: "search".into(),
                certificate: None,
                reason: Some(r),
                budget: Some(limits.search_budget),
                explored: None,
            },
            ShellingOutcome::Inconclusive { budget, explored } => ShellingReport {
                status: "inconclusive".into(),
                method: "search".into(),
                certificate: None,
                reason: None,
                budget: Some(budget),
                explored: Some(explored),
            },
        });
    }
    let shellable = shelling.as_ref().and_then(ShellingReport::shellable);
    if let Some(s) = shellable {
        checks.implication(
            "shellable_implies_chain",
            CheckKind::Theorem,
            "shellable ⇒ chain-connected",
            s,
            Some(connectivity.chain_connected),
        );
    }
    if let Some(h) = &hurwitz {
        let hyp = tried.iter().any(|t| t.report.compatible && t.report.totally_well_covered);
        let concl = shellable.map(|s| s && connectivity.chain_connected && h.connected);
        checks.implication(
            "compatible_well_covered_implies_all",
            CheckKind::Theorem,
            "compatible ∧ totally well-covered ⇒ chain-connected, Hurwitz-connected and shellable",
            hyp,
            concl,
        );
        if let Some(c) = compatible_exists {
            checks.implication(
                "conjecture_shellable",
                CheckKind::Conjecture,
                "totally chain-connected ∧ compatible order ⇒ shellable",
                connectivity.totally_chain_connected && c,
                shellable,
            );
        }
        checks.implication(
            "question_totally_connected_shellable",
            CheckKind::Question,
            "totally chain-connected ⇒ shellable",
            connectivity.totally_chain_connected,
            shellable,
        );
    }
    if l.group().is_some() {
        checks.push(
            "group_self_dual",
            CheckKind::Theorem,
            "intervals of conjugation-closed generated groups are self-dual",
            true,
            Some(summary.self_dual.self_dual),
        );
    }

    Ok(AnalysisReport {
        version: REPORT_VERSION,
        name: l.name().map(str::to_string),
        summary,
        validation: validation
            .checks
            .iter()
            .map(|c| format!("{}: {}", c.name, if c.passed { "ok" } else { "fail" }))
            .collect(),
        connectivity,
        hurwitz,
        orders,
        cycle_graph,
        reduced,
        shelling,
        consistency: checks.0,
    })
}

/// First lower interval `[e, g]` whose reduced cycle graph under the restricted order is not
/// linear, by name.
pub fn reduced_linear_below_every_element(l: &LabeledInterval, ord: &GeneratorOrder) -> Result<Option<String>> {
    for g in 0..l.node_count() {
        if l.node_rank(g) < 2 {
            continue;
        }
        let sub = subinterval(l, l.bottom(), g)?;
        let rg = reduced_cycle_graph(&sub, ord)?;
        if !analyze_reduced_verdicts(&rg)?.induced_order_is_linear {
            return Ok(Some(l.node_name(g).to_string()));
        }
    }
    Ok(None)
}

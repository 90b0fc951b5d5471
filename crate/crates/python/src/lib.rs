//! Python bindings: the `Interval` class wraps a labeled interval and exposes the analyses.

use std::sync::Arc;

use facposet::analysis::{run_analysis, AnalysisOptions};
use facposet::connectivity::{chain_graph, is_chain_connected, is_totally_chain_connected};
use facposet::cyclegraph::{build_cycle_graph, min_feedback_arc_set, reduced_cycle_graph};
use facposet::fixtures::{fixture_names, generate_family, load_fixture, Family};
use facposet::group::validate_generating_set;
use facposet::hurwitz::{hurwitz_graph, hurwitz_orbits, is_locally_hurwitz_connected};
use facposet::orders::{
    enumerate_compatible_orders, is_compatible, is_el_labeling, is_totally_well_covered, is_well_covered,
    rising_factorizations,
};
use facposet::poset::{chain_word, count_chains, duality_check, maximal_chains, mobius_invariant};
use facposet::scan::{scan, ScanConfig, ScanSource};
use facposet::shelling::{search_shelling, ShellingOutcome};
use facposet::{build_labeled_interval, Error, GeneratorOrder, GroupOracle, LabeledInterval, Limits, Permutation};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    if e.is_budget() || e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A bounded graded poset with labeled cover relations.
#[pyclass(name = "Interval", module = "pyfacposet", frozen)]
struct PyInterval {
    inner: LabeledInterval,
    limits: Limits,
}

impl PyInterval {
    fn wrap(inner: LabeledInterval) -> Self {
        PyInterval { inner, limits: Limits::default() }
    }

    fn order(&self, names: Vec<String>) -> PyResult<GeneratorOrder> {
        GeneratorOrder::parse(&self.inner, &names.join(",")).map_err(to_py)
    }

    fn words(&self, chains: &[facposet::Chain]) -> PyResult<Vec<String>> {
        let l = &self.inner;
        chains
            .iter()
            .map(|c| match chain_word(l, c) {
                Ok(w) => Ok(l.format_word(&w)),
                Err(Error::Unlabeled) => Ok(l.format_chain(c)),
                Err(e) => Err(to_py(e)),
            })
            .collect()
    }
}

#[pymethods]
impl PyInterval {
    /// Load a built-in fixture by name.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let l = load_fixture(name).and_then(|i| i.interval()).map_err(to_py)?;
        Ok(Self::wrap(if l.name().is_some() { l } else { l.with_name(name) }))
    }

    /// `family` is `"sym"` or `"boolean"`.
    #[staticmethod]
    fn family(family: &str, n: usize) -> PyResult<Self> {
        let f: Family = family.parse().map_err(to_py)?;
        Ok(Self::wrap(generate_family(f, n).and_then(|i| i.interval()).map_err(to_py)?))
    }

    /// Interval `[e, target]` of the group generated by `universe` and `generators`, all in
    /// cycle notation.
    #[staticmethod]
    #[pyo3(signature = (generators, target, universe = Vec::new()))]
    fn from_permutations(generators: Vec<String>, target: &str, universe: Vec<String>) -> PyResult<Self> {
        let perms = |v: &[String]| -> PyResult<Vec<Permutation>> {
            let cycles: Vec<Vec<Vec<usize>>> =
                v.iter().map(|s| facposet::group::parse_cycles(s)).collect::<facposet::Result<_>>().map_err(to_py)?;
            let degree = cycles.iter().flatten().flatten().copied().max().unwrap_or(1);
            cycles.iter().map(|c| Permutation::from_cycles(c, degree).map_err(to_py)).collect()
        };
        let all: Vec<String> = generators.iter().chain(&universe).cloned().collect();
        let mut ps = perms(&all)?;
        let uni = ps.split_off(generators.len());
        let named = generators.iter().cloned().zip(ps).collect();
        let oracle = GroupOracle::from_permutations(&uni, named, &Limits::default()).map_err(to_py)?;
        let report = validate_generating_set(&oracle);
        if !report.passed() {
            return Err(to_py(Error::InvalidGeneratingSet(report.summary())));
        }
        let t = oracle.parse_element(target).map_err(to_py)?;
        Ok(Self::wrap(build_labeled_interval(&Arc::new(oracle), t).map_err(to_py)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self::wrap(LabeledInterval::from_json_str(text).map_err(to_py)?))
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_string)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn alphabet(&self) -> Vec<String> {
        self.inner.occurring_labels().iter().map(|&a| self.inner.label_name(a).to_string()).collect()
    }

    fn node_names(&self) -> Vec<String> {
        self.inner.nodes().iter().map(|n| n.name.clone()).collect()
    }

    fn chain_count(&self) -> u128 {
        count_chains(&self.inner)
    }

    /// Label words of the maximal chains (node sequences if unlabeled).
    fn maximal_chains(&self) -> PyResult<Vec<String>> {
        let chains = maximal_chains(&self.inner, self.limits.max_chains).map_err(to_py)?;
        self.words(&chains)
    }

    fn mobius(&self) -> PyResult<i64> {
        mobius_invariant(&self.inner).map_err(to_py)
    }

    fn is_self_dual(&self) -> PyResult<bool> {
        Ok(duality_check(&self.inner, self.limits.search_budget).map_err(to_py)?.self_dual)
    }

    fn is_chain_connected(&self) -> PyResult<bool> {
        is_chain_connected(&self.inner, self.limits.max_chains).map_err(to_py)
    }

    fn chain_components(&self) -> PyResult<usize> {
        Ok(chain_graph(&self.inner, self.limits.max_chains).map_err(to_py)?.components().len())
    }

    fn is_totally_chain_connected(&self) -> PyResult<bool> {
        Ok(is_totally_chain_connected(&self.inner, self.limits.max_chains).map_err(to_py)?.connected)
    }

    fn hurwitz_orbits(&self) -> PyResult<Vec<Vec<String>>> {
        let orbits = hurwitz_orbits(&self.inner, self.limits.max_chains).map_err(to_py)?;
        orbits.iter().map(|o| self.words(o)).collect()
    }

    fn is_hurwitz_connected(&self) -> PyResult<bool> {
        Ok(hurwitz_graph(&self.inner, self.limits.max_chains).map_err(to_py)?.components().len() <= 1)
    }

    /// `(connected, witness)` where the witness names a rank-2 element with several orbits.
    fn is_locally_hurwitz_connected(&self) -> PyResult<(bool, Option<String>)> {
        let (ok, w) = is_locally_hurwitz_connected(&self.inner).map_err(to_py)?;
        Ok((ok, w.map(|g| self.inner.node_name(g).to_string())))
    }

    fn compatible_orders(&self) -> PyResult<Vec<Vec<String>>> {
        let orders = enumerate_compatible_orders(&self.inner, self.limits.search_budget).map_err(to_py)?;
        Ok(orders.iter().map(|o| o.names(&self.inner)).collect())
    }

    fn is_compatible(&self, order: Vec<String>) -> PyResult<bool> {
        Ok(is_compatible(&self.inner, &self.order(order)?).map_err(to_py)?.compatible)
    }

    /// Number of rising maximal chains.
    fn rise(&self, order: Vec<String>) -> PyResult<usize> {
        let ord = self.order(order)?;
        Ok(rising_factorizations(&self.inner, &ord, self.limits.max_chains).map_err(to_py)?.len())
    }

    fn is_well_covered(&self, order: Vec<String>) -> PyResult<bool> {
        is_well_covered(&self.inner, &self.order(order)?).map_err(to_py)
    }

    fn is_totally_well_covered(&self, order: Vec<String>) -> PyResult<bool> {
        Ok(is_totally_well_covered(&self.inner, &self.order(order)?).map_err(to_py)?.holds)
    }

    fn is_el_labeling(&self, order: Vec<String>) -> PyResult<bool> {
        Ok(is_el_labeling(&self.inner, &self.order(order)?).map_err(to_py)?.holds)
    }

    fn min_feedback_arc_set(&self) -> PyResult<usize> {
        let gamma = build_cycle_graph(&self.inner).map_err(to_py)?;
        Ok(min_feedback_arc_set(&gamma, self.limits.search_budget).map_err(to_py)?.size)
    }

    /// `"shellable"`, `"not_shellable"` or `"inconclusive"`.
    #[pyo3(signature = (budget = None))]
    fn shelling(&self, budget: Option<u64>) -> PyResult<String> {
        let budget = budget.unwrap_or(self.limits.search_budget);
        let out = search_shelling(&self.inner, budget, self.limits.max_chains).map_err(to_py)?;
        Ok(match out {
            ShellingOutcome::Shelling(_) => "shellable",
            ShellingOutcome::NotShellable(_) => "not_shellable",
            ShellingOutcome::Inconclusive { .. } => "inconclusive",
        }
        .to_string())
    }

    /// Graphviz source; `kind` is hasse, chain, hurwitz, cycle or reduced (needs `order`).
    #[pyo3(signature = (kind = "hasse", order = None))]
    fn to_dot(&self, kind: &str, order: Option<Vec<String>>) -> PyResult<String> {
        let l = &self.inner;
        let cap = self.limits.max_chains;
        match kind {
            "hasse" => Ok(l.to_dot()),
            "chain" => Ok(chain_graph(l, cap).map_err(to_py)?.to_dot(l)),
            "hurwitz" => Ok(hurwitz_graph(l, cap).map_err(to_py)?.to_dot(l)),
            "cycle" => Ok(build_cycle_graph(l).map_err(to_py)?.to_dot(l)),
            "reduced" => {
                let ord = self.order(order.ok_or_else(|| PyValueError::new_err("reduced needs an order"))?)?;
                Ok(reduced_cycle_graph(l, &ord).map_err(to_py)?.to_dot(l))
            }
            _ => Err(PyValueError::new_err(format!("unknown graph kind {kind:?}"))),
        }
    }

    /// Full analysis report as a dictionary.
    #[pyo3(signature = (order = None, shelling_search = true))]
    fn analyze<'py>(
        &self,
        py: Python<'py>,
        order: Option<Vec<String>>,
        shelling_search: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let opts = AnalysisOptions {
            limits: self.limits,
            order: order.map(|o| self.order(o)).transpose()?,
            shelling_search,
            ..AnalysisOptions::default()
        };
        let r = run_analysis(&self.inner, &opts).map_err(to_py)?;
        r.assert_consistent().map_err(to_py)?;
        json_to_py(py, &serde_json::to_string(&r).map_err(|e| to_py(e.into()))?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Interval(name={:?}, nodes={}, rank={})",
            self.inner.name().unwrap_or(""),
            self.inner.node_count(),
            self.inner.rank()
        )
    }
}

/// Names accepted by `Interval.fixture`.
#[pyfunction(name = "fixture_names")]
fn py_fixture_names() -> Vec<String> {
    fixture_names()
}

/// Scan a family (`"sym"` or `"boolean"`) over the given sizes; returns the findings.
#[pyfunction(name = "scan_family")]
fn py_scan_family<'py>(py: Python<'py>, family: &str, sizes: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let f: Family = family.parse().map_err(to_py)?;
    let cfg = ScanConfig {
        source: ScanSource::Families(sizes.into_iter().map(|n| (f, n)).collect()),
        options: AnalysisOptions::default(),
        replay_dir: None,
    };
    let findings = py.detach(|| scan(&cfg)).map_err(to_py)?;
    json_to_py(py, &serde_json::to_string(&findings).map_err(|e| to_py(e.into()))?)
}

#[pymodule]
fn pyfacposet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInterval>()?;
    m.add_function(wrap_pyfunction!(py_fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(py_scan_family, m)?)?;
    Ok(())
}

//! Python bindings for the `berge_ramsey` crate.
//!
//! Exact quantities come back as `int` and `fractions.Fraction`; errors
//! raise `ValueError`, or `BudgetExceeded` when a search budget runs out.

use berge_ramsey::berge::{self, BergeError};
use berge_ramsey::bounds::{self, KnownValue};
use berge_ramsey::cli::format;
use berge_ramsey::combinat::{self, BigRational, SubsetRank};
use berge_ramsey::construct::{self, ColoringPolicy, ConstructError};
use berge_ramsey::hedgehog;
use berge_ramsey::hypergraph::{self as hg, BergeWitness, Color, HyperEdge, Hypergraph as CoreHypergraph, SimpleGraph};
use berge_ramsey::search::{self, ExactValue, SearchConfig, SearchError};
use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(pyberge, BudgetExceeded, PyException);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn berge_error(e: BergeError) -> PyErr {
    match e {
        BergeError::TooLarge(_) => BudgetExceeded::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn construct_error(e: ConstructError) -> PyErr {
    match e {
        ConstructError::Berge(b) => berge_error(b),
        other => value_error(other),
    }
}

fn search_error(e: SearchError) -> PyErr {
    match e {
        SearchError::BudgetExceeded { .. } | SearchError::NodeBudgetExceeded(_) => BudgetExceeded::new_err(e.to_string()),
        SearchError::Berge(b) => berge_error(b),
        other => value_error(other),
    }
}

fn policy_from(name: &str, seed: u64, preference: Option<Vec<Color>>) -> PyResult<ColoringPolicy> {
    match (name, preference) {
        ("least", None) => Ok(ColoringPolicy::LeastAllowed),
        ("random", None) => Ok(ColoringPolicy::RandomAllowed { seed }),
        ("preference", Some(order)) => Ok(ColoringPolicy::FixedPreference(order)),
        ("preference", None) => Err(value_error("policy 'preference' needs a preference list")),
        (other, _) => Err(value_error(format!("unknown policy {other:?}"))),
    }
}

fn edge_lists(edges: &[HyperEdge]) -> Vec<Vec<usize>> {
    edges.iter().map(|e| e.vertices()).collect()
}

fn witness_dict<'py>(py: Python<'py>, w: &BergeWitness) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("color", w.color)?;
    d.set_item("core", &w.core)?;
    let assignment: Vec<((usize, usize), Vec<usize>)> = w.assignment.iter().map(|&(p, e)| (p, e.vertices())).collect();
    d.set_item("assignment", assignment)?;
    Ok(d)
}

/// Per-pair forbidden colors on `vertex_count` vertices.
#[pyclass(frozen, module = "pyberge")]
pub struct ForbiddenTable {
    inner: hg::ForbiddenTable,
}

#[pymethods]
impl ForbiddenTable {
    #[new]
    fn new(vertex_count: usize, colors: Color, entries: Vec<Color>) -> PyResult<Self> {
        let inner = hg::ForbiddenTable::new(vertex_count, colors, entries).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn colors(&self) -> Color {
        self.inner.colors_count()
    }

    /// Entries in pair colex order.
    fn entries(&self) -> Vec<Color> {
        self.inner.entries().to_vec()
    }

    fn get(&self, u: usize, v: usize) -> PyResult<Color> {
        let n = self.inner.vertex_count();
        if u == v || u >= n || v >= n {
            return Err(value_error(format!("({u}, {v}) is not a pair of {n} vertices")));
        }
        Ok(self.inner.get(u, v))
    }

    fn to_text(&self) -> String {
        format::write_forbidden(&self.inner)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::read_forbidden(text).map(|inner| Self { inner }).map_err(value_error)
    }

    /// `(S, chi)` pairs with `chi` not forbidden on any pair of the `n`-set `S`.
    fn compatible_count(&self, n: usize) -> u128 {
        construct::compatible_count(&self.inner, n)
    }

    fn __repr__(&self) -> String {
        format!("ForbiddenTable(vertex_count={}, colors={})", self.inner.vertex_count(), self.inner.colors_count())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A coloring of every `r`-edge of the complete hypergraph, in colex order.
#[pyclass(frozen, module = "pyberge")]
pub struct Coloring {
    inner: hg::CompleteColoring,
}

#[pymethods]
impl Coloring {
    #[new]
    fn new(vertex_count: usize, r: usize, colors: Color, edge_colors: Vec<Color>) -> PyResult<Self> {
        let inner = hg::CompleteColoring::new(vertex_count, r, colors, edge_colors).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn uniformity(&self) -> usize {
        self.inner.uniformity()
    }

    #[getter]
    fn colors(&self) -> Color {
        self.inner.colors_count()
    }

    fn edge_colors(&self) -> Vec<Color> {
        self.inner.colors().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn color_of(&self, edge: Vec<usize>) -> PyResult<Color> {
        let e = HyperEdge::new(&edge).map_err(value_error)?;
        if e.len() != self.inner.uniformity() || e.span() > self.inner.vertex_count() {
            return Err(value_error(format!("{edge:?} is not an edge of this coloring")));
        }
        Ok(self.inner.color_of(e))
    }

    fn class_size(&self, color: Color) -> usize {
        self.inner.class_size(color)
    }

    /// First monochromatic Berge-`K_n` as a dict, or `None`.
    #[pyo3(signature = (n, workers = 1))]
    fn find_mono_berge_clique<'py>(&self, py: Python<'py>, n: usize, workers: usize) -> PyResult<Option<Bound<'py, PyDict>>> {
        let w = if workers > 1 {
            berge::find_mono_berge_clique_par(&self.inner, n, workers)
        } else {
            berge::find_mono_berge_clique(&self.inner, n)
        }
        .map_err(berge_error)?;
        w.map(|w| witness_dict(py, &w)).transpose()
    }

    fn mono_berge_clique_on<'py>(&self, py: Python<'py>, core: Vec<usize>, color: Color) -> PyResult<Option<Bound<'py, PyDict>>> {
        let w = berge::mono_berge_clique_on(&self.inner, &core, color).map_err(berge_error)?;
        w.map(|w| witness_dict(py, &w)).transpose()
    }

    fn to_text(&self) -> String {
        format::write_coloring(&self.inner)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::read_coloring(text).map(|inner| Self { inner }).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "Coloring(vertex_count={}, r={}, colors={})",
            self.inner.vertex_count(),
            self.inner.uniformity(),
            self.inner.colors_count()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A derandomized forbidden table with its survival count.
#[pyclass(frozen, module = "pyberge")]
pub struct Certificate {
    inner: construct::Certificate,
}

#[pymethods]
impl Certificate {
    #[getter]
    fn forbidden(&self) -> ForbiddenTable {
        ForbiddenTable { inner: self.inner.forbidden.clone() }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn compatible_count(&self) -> u128 {
        self.inner.compatible_count
    }

    #[getter]
    fn initial_expectation(&self) -> BigRational {
        self.inner.initial_expectation.clone()
    }

    fn verify(&self) -> bool {
        self.inner.verify()
    }

    fn is_certifying(&self) -> bool {
        self.inner.is_certifying()
    }

    fn to_text(&self) -> String {
        format::write_certificate(&self.inner)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::read_certificate(text).map(|inner| Self { inner }).map_err(value_error)
    }
}

#[pyfunction]
fn binomial(n: u64, k: u64) -> BigUint {
    combinat::binomial(n, k)
}

#[pyfunction]
fn colex_rank(subset: Vec<usize>, universe: usize) -> PyResult<u64> {
    combinat::colex_rank(&subset, universe).map(|r| r.value).map_err(value_error)
}

#[pyfunction]
fn colex_unrank(rank: u64, k: usize, universe: usize) -> PyResult<Vec<usize>> {
    let r = SubsetRank::new(rank, k, universe).map_err(value_error)?;
    combinat::colex_unrank(r).map_err(value_error)
}

#[pyfunction]
fn expected_mono_upper(big_n: u64, n: u64, c: u64) -> BigRational {
    bounds::expected_mono_upper(big_n, n, c)
}

#[pyfunction]
fn threshold_n(n: u64, c: u64) -> PyResult<u64> {
    bounds::threshold_n(n, c).map_err(value_error)
}

#[pyfunction]
fn theorem_bound(r: u64, n: u64) -> PyResult<BigRational> {
    bounds::theorem_bound(r, n).map_err(value_error)
}

#[pyfunction]
fn sufficiency_check(r: u64) -> PyResult<bool> {
    bounds::sufficiency_check(r).map_err(value_error)
}

/// Quoted exact value, or `None` when unknown.
#[pyfunction]
fn known_exact(r: u64, c: u64, n: u64) -> Option<u64> {
    match bounds::known_exact(r, c, n) {
        KnownValue::Exact(v) => Some(v),
        KnownValue::Unknown => None,
    }
}

#[pyfunction]
fn random_forbidden(vertex_count: usize, colors: Color, seed: u64) -> PyResult<ForbiddenTable> {
    construct::random_forbidden(vertex_count, colors, seed)
        .map(|inner| ForbiddenTable { inner })
        .map_err(construct_error)
}

#[pyfunction]
fn derandomize_forbidden(vertex_count: usize, n: usize, colors: Color) -> PyResult<Certificate> {
    construct::derandomize_forbidden(vertex_count, n, colors)
        .map(|inner| Certificate { inner })
        .map_err(construct_error)
}

/// Policies: `"least"`, `"random"` (uses `seed`), `"preference"` (uses `preference`).
#[pyfunction]
#[pyo3(signature = (table, r, policy = "least", seed = 0, preference = None))]
fn respecting_coloring(table: &ForbiddenTable, r: usize, policy: &str, seed: u64, preference: Option<Vec<Color>>) -> PyResult<Coloring> {
    let policy = policy_from(policy, seed, preference)?;
    construct::respecting_coloring(&table.inner, r, &policy)
        .map(|inner| Coloring { inner })
        .map_err(construct_error)
}

#[pyfunction]
#[pyo3(signature = (vertex_count, n, r, colors, trials, seed = 0, policy = "least", workers = 1))]
#[allow(clippy::too_many_arguments)]
fn estimate_mono_probability<'py>(
    py: Python<'py>,
    vertex_count: usize,
    n: usize,
    r: usize,
    colors: Color,
    trials: u64,
    seed: u64,
    policy: &str,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let policy = policy_from(policy, seed, None)?;
    let est = py
        .detach(|| construct::estimate_mono_probability(vertex_count, n, r, colors, trials, seed, &policy, workers))
        .map_err(construct_error)?;
    let d = PyDict::new(py);
    d.set_item("trials", est.trials)?;
    d.set_item("hits", est.hits)?;
    d.set_item("infeasible", est.infeasible)?;
    d.set_item("fraction", est.fraction)?;
    d.set_item("ci_low", est.ci_low)?;
    d.set_item("ci_high", est.ci_high)?;
    Ok(d)
}

/// Berge copy of the graph `(pattern_order, pattern_edges)` in the
/// hypergraph `(vertex_count, edges)`: `(vertex_map, edge_map)` or `None`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn berge_embeds(vertex_count: usize, edges: Vec<Vec<usize>>, pattern_order: usize, pattern_edges: Vec<(usize, usize)>) -> PyResult<Option<(Vec<usize>, Vec<Vec<usize>>)>> {
    let edges = edges.iter().map(|e| HyperEdge::new(e)).collect::<Result<Vec<_>, _>>().map_err(value_error)?;
    let host = CoreHypergraph::new(vertex_count, edges).map_err(value_error)?;
    let pattern = SimpleGraph::new(pattern_order, &pattern_edges).map_err(value_error)?;
    let found = berge::berge_embeds(&host, &pattern).map_err(berge_error)?;
    Ok(found.map(|e| (e.vertex_map, edge_lists(&e.edge_map))))
}

/// `{"vertices", "edges", "berge_clique"}` for the hedgehog of body order `n`.
#[pyfunction]
fn build_hedgehog<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let h = hedgehog::build_hedgehog(n).map_err(value_error)?;
    let clique = hedgehog::is_berge_clique(&h).map_err(berge_error)?;
    let d = PyDict::new(py);
    d.set_item("vertices", h.hypergraph().vertex_count())?;
    d.set_item("edges", edge_lists(h.hypergraph().edges()))?;
    d.set_item("berge_clique", clique.is_some())?;
    Ok(d)
}

fn config(max_nominal_leaves: Option<u128>, node_budget: Option<u64>) -> SearchConfig {
    let mut cfg = SearchConfig { node_budget, ..SearchConfig::default() };
    if let Some(cap) = max_nominal_leaves {
        cfg.max_nominal_leaves = cap;
    }
    cfg
}

/// `(arrowing, counterexample)` for one host size.
#[pyfunction]
#[pyo3(signature = (r, c, n, vertex_count, max_nominal_leaves = None, node_budget = None))]
fn ramsey_decide(
    py: Python<'_>,
    r: usize,
    c: Color,
    n: usize,
    vertex_count: usize,
    max_nominal_leaves: Option<u128>,
    node_budget: Option<u64>,
) -> PyResult<(bool, Option<Coloring>)> {
    let cfg = config(max_nominal_leaves, node_budget);
    let out = py.detach(|| search::ramsey_decide(r, c, n, vertex_count, &cfg)).map_err(search_error)?;
    Ok((out.arrowing, out.counterexample.map(|inner| Coloring { inner })))
}

/// Least arrowing host size in `n..=n_max`, or `None` if there is none.
#[pyfunction]
#[pyo3(signature = (r, c, n, n_max, max_nominal_leaves = None, node_budget = None))]
fn ramsey_number_exact(
    py: Python<'_>,
    r: usize,
    c: Color,
    n: usize,
    n_max: usize,
    max_nominal_leaves: Option<u128>,
    node_budget: Option<u64>,
) -> PyResult<Option<usize>> {
    let cfg = config(max_nominal_leaves, node_budget);
    let s = py.detach(|| search::ramsey_number_exact(r, c, n, n_max, &cfg)).map_err(search_error)?;
    Ok(match s.value {
        ExactValue::Found(v) => Some(v),
        ExactValue::NotFoundBelow(_) => None,
    })
}

#[pymodule]
fn pyberge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_class::<ForbiddenTable>()?;
    m.add_class::<Coloring>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(colex_rank, m)?)?;
    m.add_function(wrap_pyfunction!(colex_unrank, m)?)?;
    m.add_function(wrap_pyfunction!(expected_mono_upper, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_n, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sufficiency_check, m)?)?;
    m.add_function(wrap_pyfunction!(known_exact, m)?)?;
    m.add_function(wrap_pyfunction!(random_forbidden, m)?)?;
    m.add_function(wrap_pyfunction!(derandomize_forbidden, m)?)?;
    m.add_function(wrap_pyfunction!(respecting_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_mono_probability, m)?)?;
    m.add_function(wrap_pyfunction!(berge_embeds, m)?)?;
    m.add_function(wrap_pyfunction!(build_hedgehog, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey_decide, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey_number_exact, m)?)?;
    Ok(())
}

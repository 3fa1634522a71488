//! Python bindings: graphs, generators, spectra, clique search, bounds and
//! the family checks.

use std::collections::BTreeMap;
use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use scv_core::bounds::{self, BoundReport, CheckRecord, MaterializeOptions};
use scv_core::clique::{self, Budget, CliqueResult, ReplicatorOptions};
use scv_core::generators::{self, SrgParams};
use scv_core::graph;
use scv_core::spectral;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget(max_nodes: Option<u64>, time_limit_ms: Option<u64>) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = max_nodes {
        b.max_nodes = n;
    }
    if let Some(ms) = time_limit_ms {
        b.time_limit = Some(Duration::from_millis(ms));
    }
    b
}

/// Undirected simple graph.
#[pyclass(name = "Graph", module = "scv", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::Graph::from_edges(n, &edges).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::parse_graph6(text).map_err(value_err)?,
        })
    }

    fn graph6(&self) -> String {
        graph::write_graph6(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn degree(&self, u: usize) -> PyResult<usize> {
        if u >= self.inner.n() {
            return Err(value_err(format!("vertex {u} out of range")));
        }
        Ok(self.inner.degree(u))
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<usize>> {
        if u >= self.inner.n() {
            return Err(value_err(format!("vertex {u} out of range")));
        }
        Ok(self.inner.neighbors(u).collect())
    }

    fn is_clique(&self, vertices: Vec<usize>) -> bool {
        vertices.iter().all(|&v| v < self.inner.n()) && self.inner.is_clique(&vertices)
    }

    fn complement(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.complement(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={}, graph6={:?})", self.inner.n(), self.inner.m(), self.graph6())
    }
}

fn wrap(r: Result<graph::Graph, generators::GeneratorError>) -> PyResult<PyGraph> {
    r.map(|inner| PyGraph { inner }).map_err(value_err)
}

#[pyfunction]
fn complete(n: usize) -> PyResult<PyGraph> {
    wrap(generators::complete(n))
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    wrap(generators::cycle(n))
}

#[pyfunction]
fn paley(q: usize) -> PyResult<PyGraph> {
    wrap(generators::paley(q))
}

#[pyfunction]
fn kneser(n: usize, k: usize) -> PyResult<PyGraph> {
    wrap(generators::kneser(n, k))
}

#[pyfunction]
fn line_graph(g: &PyGraph) -> PyResult<PyGraph> {
    wrap(generators::line_graph(&g.inner))
}

#[pyfunction]
fn cartesian_product(g: &PyGraph, h: &PyGraph) -> PyResult<PyGraph> {
    wrap(generators::cartesian_product(&g.inner, &h.inner))
}

#[pyfunction]
#[pyo3(signature = (n, p, seed = 0))]
fn random_gnp(n: usize, p: f64, seed: u64) -> PyResult<PyGraph> {
    wrap(generators::random_gnp(n, p, seed))
}

/// Adjacency eigenvalues, descending.
#[pyfunction]
fn eigenvalues(g: &PyGraph) -> PyResult<Vec<f64>> {
    Ok(spectral::eigenvalues_symmetric(&g.inner).map_err(value_err)?.eigenvalues().to_vec())
}

/// Sum of squares of the positive eigenvalues.
#[pyfunction]
fn s_plus(g: &PyGraph) -> PyResult<f64> {
    Ok(spectral::eigenvalues_symmetric(&g.inner).map_err(value_err)?.s_plus().0)
}

#[pyfunction]
fn is_ramanujan(g: &PyGraph) -> PyResult<bool> {
    Ok(spectral::is_ramanujan(&g.inner).map_err(value_err)?.is_ramanujan)
}

#[pyfunction]
fn wilf_bound(g: &PyGraph) -> PyResult<f64> {
    bounds::wilf_bound(&g.inner).map_err(value_err)
}

#[pyfunction]
fn ew_bound(g: &PyGraph) -> PyResult<f64> {
    bounds::ew_bound(&g.inner).map_err(value_err)
}

#[pyclass(name = "CliqueResult", module = "scv", frozen, get_all)]
pub struct PyCliqueResult {
    omega: usize,
    witness: Vec<usize>,
    status: String,
    nodes_explored: u64,
    elapsed_ms: f64,
}

impl From<CliqueResult> for PyCliqueResult {
    fn from(r: CliqueResult) -> Self {
        PyCliqueResult {
            omega: r.omega,
            status: r.status.to_string(),
            witness: r.witness,
            nodes_explored: r.nodes_explored,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[pymethods]
impl PyCliqueResult {
    fn __repr__(&self) -> String {
        format!("CliqueResult(omega={}, status={:?}, witness={:?})", self.omega, self.status, self.witness)
    }
}

#[pyfunction]
#[pyo3(signature = (g, max_nodes = None, time_limit_ms = None))]
fn max_clique(py: Python<'_>, g: &PyGraph, max_nodes: Option<u64>, time_limit_ms: Option<u64>) -> PyCliqueResult {
    let b = budget(max_nodes, time_limit_ms);
    py.detach(|| clique::max_clique_exact(&g.inner, &b)).into()
}

#[pyfunction]
#[pyo3(signature = (g, restarts = 8, seed = 0))]
fn greedy_clique(g: &PyGraph, restarts: usize, seed: u64) -> PyCliqueResult {
    clique::greedy_clique(&g.inner, restarts, seed).into()
}

/// Replicator-dynamics estimate; returns `(f_star, omega_estimate, x)`.
#[pyfunction]
#[pyo3(signature = (g, restarts = 16, seed = 0))]
fn motzkin_straus(g: &PyGraph, restarts: usize, seed: u64) -> PyResult<(f64, f64, Vec<f64>)> {
    let opts = ReplicatorOptions {
        restarts,
        seed,
        ..ReplicatorOptions::default()
    };
    let est = clique::motzkin_straus_estimate(&g.inner, &opts).map_err(value_err)?;
    Ok((est.f_star, est.omega_estimate, est.x))
}

#[pyclass(name = "CheckRecord", module = "scv", frozen, get_all)]
pub struct PyCheckRecord {
    name: String,
    status: String,
    values: BTreeMap<String, f64>,
    claims: BTreeMap<String, bool>,
    notes: Vec<String>,
}

impl From<CheckRecord> for PyCheckRecord {
    fn from(r: CheckRecord) -> Self {
        PyCheckRecord {
            status: r.status.to_string(),
            name: r.name,
            values: r.values.into_iter().collect(),
            claims: r.claims.into_iter().collect(),
            notes: r.notes,
        }
    }
}

#[pymethods]
impl PyCheckRecord {
    #[getter]
    fn passed(&self) -> bool {
        self.status == "pass"
    }

    fn __repr__(&self) -> String {
        format!("CheckRecord({:?}, status={:?})", self.name, self.status)
    }
}

#[pyclass(name = "BoundReport", module = "scv", frozen, get_all)]
pub struct PyBoundReport {
    graph_id: String,
    n: usize,
    m: usize,
    lambda1: f64,
    s_plus: f64,
    wilf: f64,
    ew: Option<f64>,
    omega: usize,
    omega_status: String,
    witness: Vec<usize>,
    verdict: String,
    wilf_holds: Option<bool>,
    forms_agree: bool,
    spectrum_source: String,
}

impl From<BoundReport> for PyBoundReport {
    fn from(r: BoundReport) -> Self {
        PyBoundReport {
            graph_id: r.graph_id,
            n: r.n,
            m: r.m,
            lambda1: r.lambda1,
            s_plus: r.s_plus,
            wilf: r.wilf,
            ew: r.ew,
            omega: r.omega.omega,
            omega_status: r.omega.status.to_string(),
            witness: r.omega.witness,
            verdict: r.verdict.to_string(),
            wilf_holds: r.wilf_holds,
            forms_agree: r.forms_agree,
            spectrum_source: r.spectrum_source.to_string(),
        }
    }
}

#[pymethods]
impl PyBoundReport {
    fn __repr__(&self) -> String {
        format!(
            "BoundReport(n={}, ew={:?}, omega={}, verdict={:?})",
            self.n, self.ew, self.omega, self.verdict
        )
    }
}

#[pyfunction]
#[pyo3(signature = (g, max_nodes = None, time_limit_ms = None))]
fn verify_conjecture(
    py: Python<'_>,
    g: &PyGraph,
    max_nodes: Option<u64>,
    time_limit_ms: Option<u64>,
) -> PyResult<PyBoundReport> {
    let b = budget(max_nodes, time_limit_ms);
    let report = py.detach(|| bounds::verify_conjecture(&g.inner, &b)).map_err(value_err)?;
    Ok(report.into())
}

/// Closed-form `{d, r, s, f, g, s_plus}` of `srg(n, d, lambda, mu)`.
#[pyfunction]
fn srg_spectrum(n: u64, d: u64, lambda: u64, mu: u64) -> PyResult<BTreeMap<&'static str, f64>> {
    let sp = generators::srg_spectrum(&SrgParams::new(n, d, lambda, mu)).map_err(value_err)?;
    Ok(BTreeMap::from([
        ("d", sp.d),
        ("r", sp.r),
        ("s", sp.s),
        ("f", sp.f as f64),
        ("g", sp.g as f64),
        ("s_plus", sp.s_plus()),
    ]))
}

#[pyfunction]
fn conference_splus(mu: u64) -> f64 {
    bounds::conference_splus(mu)
}

#[pyfunction]
fn conference_check(mu: u64) -> PyResult<PyCheckRecord> {
    bounds::conference_check(mu).map(Into::into).map_err(value_err)
}

#[pyfunction]
fn lambda_eq_mu_check(n: u64, d: u64, mu: u64) -> PyResult<PyCheckRecord> {
    bounds::lambda_eq_mu_check(&SrgParams::new(n, d, mu, mu)).map(Into::into).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, materialize_limit = 1024))]
fn line_kn_check(py: Python<'_>, n: u64, materialize_limit: usize) -> PyResult<PyCheckRecord> {
    let opts = MaterializeOptions {
        materialize_limit,
        ..MaterializeOptions::default()
    };
    py.detach(|| bounds::line_kn_check(n, &opts)).map(Into::into).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, d, lambda, mu, graph = None, materialize_limit = 1024))]
fn cartesian_check(
    py: Python<'_>,
    n: u64,
    d: u64,
    lambda: u64,
    mu: u64,
    graph: Option<PyRef<'_, PyGraph>>,
    materialize_limit: usize,
) -> PyResult<PyCheckRecord> {
    let opts = MaterializeOptions {
        materialize_limit,
        ..MaterializeOptions::default()
    };
    let g = graph.map(|g| g.inner.clone());
    let p = SrgParams::new(n, d, lambda, mu);
    py.detach(|| bounds::cartesian_check(&p, g.as_ref(), &opts)).map(Into::into).map_err(value_err)
}

#[pyfunction]
fn ramanujan_check(g: &PyGraph) -> PyResult<PyCheckRecord> {
    bounds::ramanujan_check(&g.inner).map(Into::into).map_err(value_err)
}

#[pymodule]
pub fn scv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCliqueResult>()?;
    m.add_class::<PyCheckRecord>()?;
    m.add_class::<PyBoundReport>()?;
    m.add_function(wrap_pyfunction!(complete, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(paley, m)?)?;
    m.add_function(wrap_pyfunction!(kneser, m)?)?;
    m.add_function(wrap_pyfunction!(line_graph, m)?)?;
    m.add_function(wrap_pyfunction!(cartesian_product, m)?)?;
    m.add_function(wrap_pyfunction!(random_gnp, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(s_plus, m)?)?;
    m.add_function(wrap_pyfunction!(is_ramanujan, m)?)?;
    m.add_function(wrap_pyfunction!(wilf_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ew_bound, m)?)?;
    m.add_function(wrap_pyfunction!(max_clique, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_clique, m)?)?;
    m.add_function(wrap_pyfunction!(motzkin_straus, m)?)?;
    m.add_function(wrap_pyfunction!(verify_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(srg_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(conference_splus, m)?)?;
    m.add_function(wrap_pyfunction!(conference_check, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_eq_mu_check, m)?)?;
    m.add_function(wrap_pyfunction!(line_kn_check, m)?)?;
    m.add_function(wrap_pyfunction!(cartesian_check, m)?)?;
    m.add_function(wrap_pyfunction!(ramanujan_check, m)?)?;
    Ok(())
}

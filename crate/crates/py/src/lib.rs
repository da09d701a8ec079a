//! Python bindings: graphs, properties, the online game engine, bound
//! formulas, fixtures and the exact advice oracle.

use advice_core::engine::algorithms::{opt_bitmap, AcceptAll, BitmapAdvice, Greedy, RejectAll, SeededPreemptive};
use advice_core::engine::tape::{decode_self_delimited, encode_self_delimited, parse_bits, bits_to_string};
use advice_core::engine::{
    run_game, AdviceTape, ObjectiveKind, ObjectiveValue, OnlineAlgorithm, OnlineInstance, Preemption, Transcript,
};
use advice_core::error::Error;
use advice_core::exact_advice::{min_advice_bits, replay, InstanceFamily, Target};
use advice_core::fixtures::{self, FixtureKind, FixtureParams, Sidecar};
use advice_core::graph::Graph;
use advice_core::guessing::bounds::{evaluate, BoundParams, CParam};
use advice_core::guessing::{score_answers, GuessingInstance, Variant};
use advice_core::optimum;
use advice_core::property::{builtin, PropertySpec};
use advice_core::reductions::obligatory::{obligatory_advice, ObligatorySubgraphAlgorithm};
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Resource(_) => PyMemoryError::new_err(e.to_string()),
        Error::Unverified(_) | Error::Soundness(_) | Error::Protocol(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn objective_to_f64(v: ObjectiveValue) -> f64 {
    match v {
        ObjectiveValue::NegInfinity => f64::NEG_INFINITY,
        ObjectiveValue::Finite(x) => x as f64,
        ObjectiveValue::PosInfinity => f64::INFINITY,
    }
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "advice_lab", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edges(n, &edges).map_err(to_py)? })
    }

    /// Parses the revelation-order text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: OnlineInstance::from_text(text).map_err(to_py)?.presented().clone() })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: Graph::complete(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph { inner: Graph::cycle(n) }
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn complement(&self) -> Self {
        PyGraph { inner: self.inner.complement() }
    }

    fn induced_subgraph(&self, vertices: Vec<usize>) -> PyResult<Self> {
        Ok(PyGraph { inner: self.inner.induced_subgraph(&vertices).map_err(to_py)? })
    }

    fn contains_induced(&self, h: &PyGraph) -> bool {
        advice_core::iso::contains_induced(&self.inner, &h.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// One of the shipped graph properties, looked up by name.
#[pyclass(name = "Property", module = "advice_lab", from_py_object)]
#[derive(Clone)]
struct PyProperty {
    inner: PropertySpec,
}

#[pymethods]
impl PyProperty {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyProperty { inner: builtin::by_name(name).map_err(to_py)? })
    }

    #[staticmethod]
    fn names() -> Vec<&'static str> {
        builtin::NAMES.to_vec()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn hereditary(&self) -> bool {
        self.inner.is_hereditary()
    }

    fn satisfies(&self, g: &PyGraph) -> bool {
        self.inner.satisfies(&g.inner)
    }

    fn __repr__(&self) -> String {
        format!("Property({:?})", self.inner.name())
    }
}

/// The record of one online game.
#[pyclass(name = "Transcript", module = "advice_lab", from_py_object)]
#[derive(Clone)]
struct PyTranscript {
    inner: Transcript,
}

#[pymethods]
impl PyTranscript {
    /// Profit or cost; `-inf` / `inf` for infeasible runs.
    #[getter]
    fn objective(&self) -> f64 {
        objective_to_f64(self.inner.objective)
    }

    #[getter]
    fn bits_read(&self) -> usize {
        self.inner.bits_read
    }

    #[getter]
    fn feasible_throughout(&self) -> bool {
        self.inner.feasible_throughout
    }

    #[getter]
    fn final_set(&self) -> Vec<usize> {
        self.inner.final_set().to_vec()
    }

    #[getter]
    fn accepted(&self) -> Vec<bool> {
        self.inner.steps.iter().map(|s| s.accepted).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Transcript(objective={}, bits_read={})", self.inner.objective, self.inner.bits_read)
    }
}

#[pyfunction]
fn opt_max_pi(g: &PyGraph, p: &PyProperty) -> PyResult<Vec<usize>> {
    optimum::opt_max_pi(&g.inner, &p.inner).map_err(to_py)
}

#[pyfunction]
fn opt_min_pi(g: &PyGraph, p: &PyProperty) -> PyResult<Option<Vec<usize>>> {
    optimum::opt_min_pi(&g.inner, &p.inner).map_err(to_py)
}

/// Plays one game. `advice` is a 0/1 string; with `oracle_advice` the
/// offline oracle writes it (bitmap and obligatory algorithms).
#[pyfunction]
#[pyo3(signature = (g, alg, prop, mode = "plain", objective = None, advice = None, oracle_advice = false, seed = 0, blind = false))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    g: &PyGraph,
    alg: &str,
    prop: &PyProperty,
    mode: &str,
    objective: Option<&str>,
    advice: Option<&str>,
    oracle_advice: bool,
    seed: u64,
    blind: bool,
) -> PyResult<PyTranscript> {
    let inst = OnlineInstance::new(g.inner.clone()).blind(blind);
    let p = &prop.inner;
    let mode = match mode {
        "plain" => Preemption::Plain,
        "preemptive" => Preemption::Preemptive,
        other => return Err(PyValueError::new_err(format!("mode must be plain or preemptive, got {other:?}"))),
    };
    let objective = match objective {
        Some("max") => ObjectiveKind::Max,
        Some("min") => ObjectiveKind::Min,
        None if p.is_hereditary() => ObjectiveKind::Max,
        None => ObjectiveKind::Min,
        Some(other) => return Err(PyValueError::new_err(format!("objective must be max or min, got {other:?}"))),
    };
    let bits = match (advice, oracle_advice) {
        (Some(b), _) => parse_bits(b).map_err(to_py)?,
        (None, true) => match alg {
            "bitmap" => opt_bitmap(&inst, p).map_err(to_py)?,
            "obligatory" => obligatory_advice(&inst, p).map_err(to_py)?,
            _ => return Err(PyValueError::new_err("oracle advice exists for bitmap and obligatory only")),
        },
        (None, false) => Vec::new(),
    };
    let mut a: Box<dyn OnlineAlgorithm> = match alg {
        "reject-all" => Box::new(RejectAll),
        "accept-all" => Box::new(AcceptAll),
        "greedy" => Box::new(Greedy::new(p.clone())),
        "bitmap" => Box::new(BitmapAdvice),
        "seeded-preemptive" => Box::new(SeededPreemptive::new(p.clone(), seed)),
        "obligatory" => Box::new(ObligatorySubgraphAlgorithm::new(p.clone()).map_err(to_py)?),
        other => return Err(PyValueError::new_err(format!("unknown algorithm {other:?}"))),
    };
    let mut tape = AdviceTape::new(bits);
    let t = run_game(&inst, a.as_mut(), p, mode, &mut tape, objective).map_err(to_py)?;
    Ok(PyTranscript { inner: t })
}

/// Scores answers against a guessing string. Returns a dict with score,
/// matches, mismatches and gamma (as a float).
#[pyfunction]
#[pyo3(signature = (variant, x, answers, sigma = 2))]
fn score_guesses<'py>(py: Python<'py>, variant: &str, x: Vec<u32>, answers: Vec<u32>, sigma: u32) -> PyResult<Bound<'py, PyDict>> {
    let v = Variant::parse(variant).map_err(to_py)?;
    let inst = GuessingInstance::new(v, sigma, x).map_err(to_py)?;
    if answers.len() != inst.len() {
        return Err(PyValueError::new_err(format!("expected {} answers, got {}", inst.len(), answers.len())));
    }
    let (score, matches, mismatches) = score_answers(&inst, &answers);
    let d = PyDict::new(py);
    d.set_item("score", objective_to_f64(score))?;
    d.set_item("matches", matches)?;
    d.set_item("mismatches", mismatches)?;
    d.set_item("gamma", matches as f64 / inst.len().max(1) as f64)?;
    Ok(d)
}

/// Evaluates a closed-form bound. Returns a dict with `formula`, `value`
/// (None outside the validity window), `o_term` and `pieces`.
#[pyfunction]
#[pyo3(signature = (formula, sigma = None, gamma = None, c = None, n = None, k = None, kappa1 = None, kappa2 = None, nprime = None, x = None))]
#[allow(clippy::too_many_arguments)]
fn bound<'py>(
    py: Python<'py>,
    formula: &str,
    sigma: Option<f64>,
    gamma: Option<f64>,
    c: Option<f64>,
    n: Option<f64>,
    k: Option<f64>,
    kappa1: Option<f64>,
    kappa2: Option<f64>,
    nprime: Option<f64>,
    x: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let params = BoundParams { sigma, gamma, c: c.map(CParam::Scalar), n, k, kappa1, kappa2, nprime, x };
    let r = evaluate(formula, &params).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("formula", &r.formula)?;
    d.set_item("value", r.value_bits)?;
    d.set_item("o_term", r.o_term.clone())?;
    d.set_item("pieces", r.pieces.clone())?;
    d.set_item("params", r.params.clone())?;
    Ok(d)
}

/// Self-delimited code of `n` as a 0/1 string.
#[pyfunction]
fn encode_int(n: u64) -> String {
    bits_to_string(&encode_self_delimited(n))
}

/// Decodes a self-delimited integer; returns `(n, bits_used)`.
#[pyfunction]
fn decode_int(bits: &str) -> PyResult<(u64, usize)> {
    decode_self_delimited(&parse_bits(bits).map_err(to_py)?).map_err(to_py)
}

/// Exact minimum advice for all strings (or graphs, game `maxpi`) of length
/// `n`. Returns a dict with m, bits, assignment and optimal.
#[pyfunction]
#[pyo3(signature = (game, n, c = "1", sigma = 2, prop = None))]
fn min_advice<'py>(py: Python<'py>, game: &str, n: usize, c: &str, sigma: u32, prop: Option<&PyProperty>) -> PyResult<Bound<'py, PyDict>> {
    let fam = if game == "maxpi" {
        let p = prop.map(|p| p.inner.clone()).unwrap_or_else(builtin::independent_set);
        InstanceFamily::all_graphs(p, n)
    } else {
        let v = Variant::parse(game).map_err(to_py)?;
        InstanceFamily::all_strings(v, if v.is_maxasg() { 2 } else { sigma }, n)
    }
    .map_err(to_py)?;
    let target = Target::parse(c).map_err(to_py)?;
    let r = py.detach(|| min_advice_bits(&fam, target)).map_err(to_py)?;
    replay(&fam, &r, target).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("m", r.m)?;
    d.set_item("bits", r.bits)?;
    d.set_item("assignment", r.assignment.clone())?;
    d.set_item("optimal", r.optimal)?;
    Ok(d)
}

/// Builds a fixture; returns `(instance_text, sidecar_json)`.
#[pyfunction]
#[pyo3(signature = (kind, seed = 0, n = None, sigma = None, k = None, prop = None))]
fn construct(kind: &str, seed: u64, n: Option<usize>, sigma: Option<usize>, k: Option<usize>, prop: Option<String>) -> PyResult<(String, String)> {
    let mut p = FixtureParams::new(FixtureKind::parse(kind).map_err(to_py)?, seed);
    p.n = n;
    p.sigma = sigma;
    p.k = k;
    p.property = prop;
    let f = fixtures::construct(&p).map_err(to_py)?;
    Ok((f.instance.to_text(), f.sidecar.to_json()))
}

/// Re-derives every sidecar claim; returns `(ok, [(name, holds, detail)])`.
#[pyfunction]
fn verify(instance_text: &str, sidecar_json: &str) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let side = Sidecar::from_json(sidecar_json).map_err(to_py)?;
    let r = fixtures::verify(instance_text, &side).map_err(to_py)?;
    Ok((r.ok(), r.checks.into_iter().map(|c| (c.name, c.holds, c.detail)).collect()))
}

#[pymodule]
fn advice_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyProperty>()?;
    m.add_class::<PyTranscript>()?;
    m.add_function(wrap_pyfunction!(opt_max_pi, m)?)?;
    m.add_function(wrap_pyfunction!(opt_min_pi, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(score_guesses, m)?)?;
    m.add_function(wrap_pyfunction!(bound, m)?)?;
    m.add_function(wrap_pyfunction!(encode_int, m)?)?;
    m.add_function(wrap_pyfunction!(decode_int, m)?)?;
    m.add_function(wrap_pyfunction!(min_advice, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

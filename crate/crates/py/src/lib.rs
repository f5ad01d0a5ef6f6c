use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;
use serde::Serialize;

use deza_core::construct;
use deza_core::decompose::{self, SearchOptions};
use deza_core::hadamard::{skew_hadamard, sylvester};
use deza_core::io;
use deza_core::scheme::paley_tournament;
use deza_core::verify::{self as check, DezaParams};
use deza_core::{Error, FiniteField, IntMatrix};

fn err(e: Error) -> PyErr {
    match e {
        Error::SizeBound(_) | Error::Overflow(_) => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serializes through JSON so Python receives plain dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Digraph", module = "deza", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyDigraph {
    inner: deza_core::Digraph,
}

impl From<deza_core::Digraph> for PyDigraph {
    fn from(inner: deza_core::Digraph) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyDigraph {
    /// Square 0/1 adjacency rows. Loops are accepted only with `loops=True`.
    #[new]
    #[pyo3(signature = (rows, loops = false))]
    fn new(rows: Vec<Vec<i64>>, loops: bool) -> PyResult<Self> {
        let m = IntMatrix::from_rows(&rows).map_err(err)?;
        Ok(deza_core::Digraph::new(m, loops).map_err(err)?.into())
    }

    #[staticmethod]
    fn from_digraph6(text: &str) -> PyResult<Self> {
        Ok(io::decode_digraph6(text.trim()).map_err(err)?.into())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.inner.adjacency().to_rows()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.inner.has_arc(u, v)
    }

    fn has_loops(&self) -> bool {
        self.inner.has_loops()
    }

    fn digraph6(&self) -> PyResult<String> {
        io::encode_digraph6(&self.inner).map_err(err)
    }

    fn matrix01(&self) -> PyResult<String> {
        io::format_matrix(self.inner.adjacency()).map_err(err)
    }

    fn dot(&self) -> String {
        io::to_dot(&self.inner)
    }

    fn canonical_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyBytes>> {
        let form = decompose::canonical_form(&self.inner).map_err(err)?;
        Ok(PyBytes::new(py, &form))
    }

    fn __repr__(&self) -> String {
        format!("Digraph(order={}, arcs={})", self.inner.order(), self.inner.arc_count())
    }
}

fn params(p: (u64, u64, u64, u64, u64)) -> DezaParams {
    DezaParams::new(p.0, p.1, p.2, p.3, p.4)
}

/// Report dict for one classifier: `deza`, `deza2`, `dsrg`, `ddd`,
/// `deza_graph`, `reflexive`; `partition` applies to `ddd` only.
#[pyfunction]
#[pyo3(signature = (d, kind = "deza", partition = None))]
fn verify(py: Python<'_>, d: &PyDigraph, kind: &str, partition: Option<Vec<Vec<usize>>>) -> PyResult<Py<PyAny>> {
    let g = &d.inner;
    let report = match kind {
        "deza" => check::verify_deza_digraph(g),
        "deza2" => check::verify_type2(g),
        "dsrg" => check::verify_dsrg(g),
        "ddd" => match partition.or_else(|| check::discover_ddd_partition(g)) {
            Some(p) => check::verify_ddd(g, &p),
            None => Ok(check::VerificationReport::failure("no equitable partition found")),
        },
        "deza_graph" => check::verify_deza_graph(g, g.has_loops()),
        "reflexive" if g.is_symmetric() => check::verify_deza_graph(g, true),
        "reflexive" => check::verify_reflexive_directed_deza(g),
        other => return Err(PyValueError::new_err(format!("unknown classifier `{other}`"))),
    }
    .map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn verify_all(py: Python<'_>, d: &PyDigraph) -> PyResult<Py<PyAny>> {
    to_py(py, &check::verify_all(&d.inner))
}

/// The children `(X, Y)` of a directed Deza digraph.
#[pyfunction]
fn children(d: &PyDigraph) -> PyResult<(PyDigraph, PyDigraph)> {
    let report = check::verify_deza_digraph(&d.inner).map_err(err)?;
    let (x, y) = check::deza_children(&report).map_err(err)?;
    Ok((x.into(), y.into()))
}

#[pyfunction]
fn feasibility(py: Python<'_>, p: (u64, u64, u64, u64, u64)) -> PyResult<Py<PyAny>> {
    to_py(py, &check::feasibility(&params(p)).map_err(err)?)
}

#[pyfunction]
fn lex_product(d1: &PyDigraph, d2: &PyDigraph) -> PyResult<PyDigraph> {
    Ok(construct::lex_product(&d1.inner, &d2.inner).map_err(err)?.into())
}

#[pyfunction]
fn empty_digraph(n: usize) -> PyDigraph {
    construct::empty_digraph(n).into()
}

/// Deza digraph from the Paley skew Hadamard matrix of order `4u`.
#[pyfunction]
fn skew_hadamard_deza(u: usize) -> PyResult<PyDigraph> {
    let h = skew_hadamard(4 * u).map_err(err)?;
    Ok(construct::skew_hadamard_deza(&h).map_err(err)?.into())
}

fn sylvester_of(order: usize) -> PyResult<deza_core::HadamardMatrix> {
    if order < 2 || !order.is_power_of_two() {
        return Err(PyValueError::new_err(format!("{order} is not a power of two >= 2")));
    }
    sylvester(order.trailing_zeros()).map_err(err)
}

/// `(A, B, A_reflexive, B_reflexive)` from the Sylvester matrix of `order`.
#[pyfunction]
fn twin(order: usize) -> PyResult<(PyDigraph, PyDigraph, PyDigraph, PyDigraph)> {
    let h = sylvester_of(order)?;
    let pair = construct::twin_deza(&h).map_err(err)?;
    let (x, y) = construct::siamese_reflexive(&pair, &h).map_err(err)?;
    Ok((pair.positive_part.into(), pair.negative_part.into(), x.into(), y.into()))
}

#[pyfunction]
fn twin_directed(order: usize) -> PyResult<(PyDigraph, PyDigraph, PyDigraph, PyDigraph)> {
    let (pair, (x, y)) = construct::twin_directed(&sylvester_of(order)?).map_err(err)?;
    Ok((pair.positive_part.into(), pair.negative_part.into(), x.into(), y.into()))
}

#[pyfunction]
fn doubly_regular_tournament(q: u64) -> PyResult<PyDigraph> {
    Ok(paley_tournament(q).map_err(err)?.into())
}

#[pyfunction]
fn field_type2(q: u64, alpha: usize) -> PyResult<PyDigraph> {
    let f = FiniteField::of_order(q).map_err(err)?;
    let a = f.element(alpha).map_err(err)?;
    Ok(construct::field_type2(&f, a).map_err(err)?.into())
}

#[pyfunction]
fn check_field_identities(py: Python<'_>, q: u64) -> PyResult<Py<PyAny>> {
    let f = FiniteField::of_order(q).map_err(err)?;
    to_py(py, &construct::check_field_identities(&f).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (q, n2 = 1))]
fn qr_design(q: u64, n2: usize) -> PyResult<PyDigraph> {
    let n = construct::qr_symmetric_design(q).map_err(err)?;
    Ok(construct::design_lex_empty(&n, n2).map_err(err)?.into())
}

#[pyfunction]
fn paley_graph(q: u64) -> PyResult<PyDigraph> {
    Ok(construct::paley_graph(q).map_err(err)?.into())
}

/// `(quotient, class_size, classes)` for `mode` in `b_eq_t`, `b_eq_k`.
#[pyfunction]
#[pyo3(signature = (d, mode = "b_eq_t"))]
fn decompose_digraph(d: &PyDigraph, mode: &str) -> PyResult<(PyDigraph, usize, Vec<Vec<usize>>)> {
    let dec = match mode {
        "b_eq_t" => decompose::decompose_b_eq_t(&d.inner),
        "b_eq_k" => decompose::decompose_type2_b_eq_k(&d.inner),
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    }
    .map_err(err)?;
    Ok((dec.quotient.into(), dec.class_size, dec.classes))
}

#[pyfunction]
#[pyo3(signature = (p, limit = None, canonical_dedup = false))]
fn search(py: Python<'_>, p: (u64, u64, u64, u64, u64), limit: Option<usize>, canonical_dedup: bool) -> PyResult<Vec<PyDigraph>> {
    let options = SearchOptions {
        limit: limit.unwrap_or(usize::MAX),
        canonical_dedup,
    };
    let found = py
        .detach(|| decompose::search_deza_digraphs(&params(p), options))
        .map_err(err)?;
    Ok(found.into_iter().map(PyDigraph::from).collect())
}

#[pymodule]
fn deza(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDigraph>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(children, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(lex_product, m)?)?;
    m.add_function(wrap_pyfunction!(empty_digraph, m)?)?;
    m.add_function(wrap_pyfunction!(skew_hadamard_deza, m)?)?;
    m.add_function(wrap_pyfunction!(twin, m)?)?;
    m.add_function(wrap_pyfunction!(twin_directed, m)?)?;
    m.add_function(wrap_pyfunction!(doubly_regular_tournament, m)?)?;
    m.add_function(wrap_pyfunction!(field_type2, m)?)?;
    m.add_function(wrap_pyfunction!(check_field_identities, m)?)?;
    m.add_function(wrap_pyfunction!(qr_design, m)?)?;
    m.add_function(wrap_pyfunction!(paley_graph, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_digraph, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}

//! Python bindings: a `Digraph` class mirroring the core value type,
//! range queries returning plain Python numbers/complexes, and the
//! census as a dict.

use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rnr::digraph as core_digraph;
use rnr::io as core_io;
use rnr::range as core_range;
use rnr::survey as core_survey;
use rnr::Digraph as CoreDigraph;
use rnr::Error as CoreError;

fn to_py_err(e: CoreError) -> PyErr {
    match e {
        CoreError::NonConvergence(_) | CoreError::Numerical(_) | CoreError::Quarantine(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        CoreError::Io(_) => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPyResult<T> {
    fn into_py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for Result<T, CoreError> {
    fn into_py(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

/// Simple unweighted digraph on up to 62 vertices.
#[pyclass(frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct Digraph {
    inner: CoreDigraph,
}

impl Digraph {
    fn wrap(inner: CoreDigraph) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl Digraph {
    /// Digraph(order, edges=None): build from an explicit edge list.
    #[new]
    #[pyo3(signature = (order, edges=None))]
    fn new(order: usize, edges: Option<Vec<(usize, usize)>>) -> PyResult<Self> {
        CoreDigraph::from_edges(order, &edges.unwrap_or_default())
            .map(Self::wrap)
            .into_py()
    }

    #[staticmethod]
    fn empty(order: usize) -> PyResult<Self> {
        CoreDigraph::empty(order).map(Self::wrap).into_py()
    }

    #[staticmethod]
    fn complete(order: usize) -> PyResult<Self> {
        CoreDigraph::complete(order).map(Self::wrap).into_py()
    }

    #[staticmethod]
    fn dicycle(order: usize) -> PyResult<Self> {
        CoreDigraph::dicycle(order).map(Self::wrap).into_py()
    }

    #[staticmethod]
    fn imploding_star(order: usize, k: usize) -> PyResult<Self> {
        CoreDigraph::imploding_star(order, k).map(Self::wrap).into_py()
    }

    #[staticmethod]
    fn regular_tournament(order: usize) -> PyResult<Self> {
        CoreDigraph::regular_tournament(order).map(Self::wrap).into_py()
    }

    #[staticmethod]
    fn from_digraph6(line: &str) -> PyResult<Self> {
        core_io::from_digraph6(line, 1).map(Self::wrap).into_py()
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        core_io::from_edge_list(text).map(Self::wrap).into_py()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn complement(&self) -> Self {
        Self::wrap(self.inner.complement())
    }

    fn directed_join(&self, other: &Digraph) -> PyResult<Self> {
        self.inner.directed_join(&other.inner).map(Self::wrap).into_py()
    }

    fn bidirectional_join(&self, other: &Digraph) -> PyResult<Self> {
        self.inner
            .bidirectional_join(&other.inner)
            .map(Self::wrap)
            .into_py()
    }

    fn disjoint_union(&self, other: &Digraph) -> PyResult<Self> {
        self.inner.disjoint_union(&other.inner).map(Self::wrap).into_py()
    }

    fn twin_split(&self, vertices: Vec<usize>) -> PyResult<Self> {
        self.inner.twin_split(&vertices).map(Self::wrap).into_py()
    }

    fn inflate(&self, k: usize) -> PyResult<Self> {
        self.inner.inflate(k).map(Self::wrap).into_py()
    }

    fn out_degrees(&self) -> Vec<usize> {
        self.inner.degree_profile().out_degrees
    }

    fn in_degrees(&self) -> Vec<usize> {
        self.inner.degree_profile().in_degrees
    }

    fn imbalances(&self) -> Vec<i64> {
        self.inner.degree_profile().imbalances
    }

    fn is_balanced(&self) -> bool {
        self.inner.is_balanced()
    }

    fn is_bidirectional(&self) -> bool {
        self.inner.is_bidirectional()
    }

    /// Laplacian matrix as nested integer lists.
    fn laplacian(&self) -> Vec<Vec<i64>> {
        self.inner.laplacian_integer()
    }

    fn scc_components(&self) -> Vec<Vec<usize>> {
        self.inner.scc_decomposition().components
    }

    fn terminal_scc_count(&self) -> usize {
        self.inner.scc_decomposition().terminal_count()
    }

    fn to_digraph6(&self) -> String {
        core_io::to_digraph6(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        core_io::to_edge_list(&self.inner)
    }

    /// Class label: "normal", "restricted_normal", "pseudo_normal" or
    /// "non_polygonal".
    #[pyo3(signature = (eps=None))]
    fn classify(&self, eps: Option<f64>) -> PyResult<&'static str> {
        core_range::classify(&self.inner, eps)
            .map(|label| label.as_str())
            .into_py()
    }

    fn is_normal(&self) -> bool {
        core_range::is_normal_exact(&self.inner)
    }

    fn is_restricted_normal(&self) -> bool {
        core_range::is_restricted_normal_exact(&self.inner)
    }

    #[pyo3(signature = (eps=None))]
    fn is_polygonal(&self, eps: Option<f64>) -> PyResult<bool> {
        let eps = eps.unwrap_or_else(|| core_range::default_eps(self.inner.order()));
        core_range::is_polygonal(&self.inner, eps).into_py()
    }

    fn alpha_beta(&self) -> PyResult<(f64, f64)> {
        core_range::alpha_beta(&self.inner).into_py()
    }

    /// Eigenvalues of the restricted Laplacian as Python complexes.
    fn restricted_spectrum(&self) -> PyResult<Vec<Complex64>> {
        core_range::restricted_spectrum(&self.inner)
            .map(|s| s.values().to_vec())
            .into_py()
    }

    /// Sampled range boundary: dict with points, supports, hull, alpha,
    /// beta.
    #[pyo3(signature = (samples=256))]
    fn boundary<'py>(&self, py: Python<'py>, samples: usize) -> PyResult<Bound<'py, PyDict>> {
        let res = core_range::boundary_sample(&self.inner, samples).into_py()?;
        let dict = PyDict::new(py);
        dict.set_item("points", res.boundary_points)?;
        dict.set_item("supports", res.support_values)?;
        dict.set_item("hull", res.hull.vertices().to_vec())?;
        dict.set_item("alpha", res.alpha)?;
        dict.set_item("beta", res.beta)?;
        Ok(dict)
    }

    /// Split as a directed join of balanced parts, or None:
    /// (head, tail, head_vertices).
    fn decompose_directed_join(&self) -> Option<(Digraph, Digraph, Vec<usize>)> {
        core_digraph::decompose_directed_join(&self.inner)
            .map(|d| (Self::wrap(d.head), Self::wrap(d.tail), d.head_vertices))
    }

    /// digraph6 line of the canonical representative (order <= 8).
    fn canonical_digraph6(&self) -> PyResult<String> {
        core_survey::canonical_form(&self.inner)
            .map(|code| core_io::to_digraph6(&code.to_digraph()))
            .into_py()
    }

    fn __repr__(&self) -> String {
        format!(
            "Digraph(order={}, edges={:?})",
            self.inner.order(),
            self.inner.edges()
        )
    }
}

#[pyfunction]
fn default_eps(order: usize) -> f64 {
    core_range::default_eps(order)
}

/// (split, restored) pair: the balanced non-normal twin-split of an even
/// dicycle and its apex-restored normal companion.
#[pyfunction]
fn twin_split_cycle_pair(order: usize) -> PyResult<(Digraph, Digraph)> {
    core_digraph::twin_split_cycle_pair(order)
        .map(|(a, b)| (Digraph::wrap(a), Digraph::wrap(b)))
        .into_py()
}

/// Restricted-normal digraph of order `n*n` that is not a directed join.
#[pyfunction]
fn nonjoin_witness(n: usize) -> PyResult<Digraph> {
    core_digraph::nonjoin_witness(n).map(Digraph::wrap).into_py()
}

#[pyfunction]
#[pyo3(signature = (order, budget=100_000, seed=0))]
fn search_nonjoin_witness(order: usize, budget: u64, seed: u64) -> PyResult<Option<Digraph>> {
    core_digraph::search_nonjoin_witness(order, budget, seed)
        .map(|r| r.map(Digraph::wrap))
        .into_py()
}

/// One representative per isomorphism class (order <= 5).
#[pyfunction]
fn enumerate_digraphs(order: usize) -> PyResult<Vec<Digraph>> {
    core_survey::enumerate_digraphs(order)
        .map(|v| v.into_iter().map(Digraph::wrap).collect())
        .into_py()
}

/// Census of one order as a dict; built-in enumeration by order, or an
/// external digraph6 stream by path.
#[pyfunction]
#[pyo3(signature = (order=None, stream=None, eps=None, jobs=0))]
fn census<'py>(
    py: Python<'py>,
    order: Option<usize>,
    stream: Option<std::path::PathBuf>,
    eps: Option<f64>,
    jobs: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = core_survey::CensusOptions { eps, jobs, complement_pairing: true };
    let report = match (order, stream) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(PyValueError::new_err("pass exactly one of order / stream"));
        }
        (Some(n), None) => core_survey::census_builtin(n, &opts).into_py()?,
        (None, Some(path)) => core_survey::census_stream(&path, &opts).into_py()?,
    };
    let dict = PyDict::new(py);
    dict.set_item("order", report.order)?;
    dict.set_item("normal", report.normal)?;
    dict.set_item("restricted_normal", report.restricted_normal)?;
    dict.set_item("pseudo_normal", report.pseudo_normal)?;
    dict.set_item("polygonal_total", report.polygonal_total)?;
    dict.set_item("digraphs_total", report.digraphs_total)?;
    dict.set_item("elapsed_seconds", report.elapsed_seconds)?;
    dict.set_item("source", report.source)?;
    dict.set_item("pseudo_normal_witnesses", report.pseudo_normal_witnesses)?;
    Ok(dict)
}

#[pymodule]
fn rnr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Digraph>()?;
    m.add_function(wrap_pyfunction!(default_eps, m)?)?;
    m.add_function(wrap_pyfunction!(twin_split_cycle_pair, m)?)?;
    m.add_function(wrap_pyfunction!(nonjoin_witness, m)?)?;
    m.add_function(wrap_pyfunction!(search_nonjoin_witness, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_digraphs, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}

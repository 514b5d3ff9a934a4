use std::collections::HashMap;
use std::sync::Arc;

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use xhomotopy::groupoid::{self, DiamondRule};
use xhomotopy::homotopy::{self, Decision, DEFAULT_MAX_STATES, DEFAULT_MAX_STEPS};
use xhomotopy::{hom, io, Error, Graph, Morphism, Walk};

fn err(e: Error) -> PyErr {
    if e.is_cap() {
        PyOverflowError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// An undirected graph with optional loops.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Arc<Graph>,
}

#[pymethods]
impl PyGraph {
    /// Parse the line-oriented graph format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_graph(text).map(|g| PyGraph { inner: Arc::new(g) }).map_err(err)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::parse(&text)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.names().iter().map(|v| v.to_string()).collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        let g = &self.inner;
        g.edges().map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string())).collect()
    }

    fn is_looped(&self, v: &str) -> PyResult<bool> {
        Ok(self.inner.is_looped(self.inner.require(v).map_err(err)?))
    }

    fn component_count(&self) -> usize {
        self.inner.component_count()
    }

    fn serialize(&self) -> String {
        io::serialize_graph(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.order(), self.inner.edge_count())
    }
}

/// Outcome of a homotopy query.
#[pyclass(name = "Decision", frozen)]
struct PyDecision {
    #[pyo3(get)]
    verdict: String,
    #[pyo3(get)]
    text: String,
    #[pyo3(get)]
    json: String,
}

impl PyDecision {
    fn walk(d: &Decision, g: &Graph) -> Self {
        PyDecision { verdict: d.verdict.to_string(), text: d.render_walk(g), json: d.to_json_walk(g).to_string() }
    }
}

#[pymethods]
impl PyDecision {
    fn __repr__(&self) -> String {
        format!("Decision({})", self.verdict)
    }
}

/// A finite presentation with its abelian invariants.
#[pyclass(name = "Presentation", frozen)]
struct PyPresentation {
    #[pyo3(get)]
    generators: Vec<String>,
    /// Relators as lists of signed 1-based generator indices.
    #[pyo3(get)]
    relators: Vec<Vec<i64>>,
    #[pyo3(get)]
    rank: usize,
    /// Torsion coefficients, as decimal strings when they overflow.
    #[pyo3(get)]
    torsion: Vec<String>,
    #[pyo3(get)]
    text: String,
}

impl From<&groupoid::Presentation> for PyPresentation {
    fn from(p: &groupoid::Presentation) -> Self {
        let inv = p.abelian_invariants();
        PyPresentation {
            generators: p.labels(),
            relators: p.relators.iter().map(|r| r.signed_indices()).collect(),
            rank: inv.rank,
            torsion: inv.torsion.iter().map(|t| t.to_string()).collect(),
            text: p.render(),
        }
    }
}

#[pymethods]
impl PyPresentation {
    fn __repr__(&self) -> String {
        format!("Presentation(rank={}, torsion=[{}])", self.rank, self.torsion.join(", "))
    }
}

fn parse_walk(g: &Arc<Graph>, w: &str) -> PyResult<Walk> {
    Walk::parse(g.clone(), w).map_err(err)
}

fn morphism(s: &Arc<Graph>, t: &Arc<Graph>, map: HashMap<String, String>) -> PyResult<Morphism> {
    let mut pairs: Vec<(String, String)> = map.into_iter().collect();
    pairs.sort();
    Morphism::from_pairs(s.clone(), t.clone(), &pairs).map_err(err)
}

/// Prune normal form of a comma-separated walk.
#[pyfunction]
#[pyo3(signature = (graph, walk, looped = false))]
fn normalize(graph: &PyGraph, walk: &str, looped: bool) -> PyResult<String> {
    Ok(parse_walk(&graph.inner, walk)?.prune_normalize(looped).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (graph, w1, w2, looped = false, max_len = None, max_states = DEFAULT_MAX_STATES))]
fn walks_homotopic(
    graph: &PyGraph,
    w1: &str,
    w2: &str,
    looped: bool,
    max_len: Option<usize>,
    max_states: usize,
) -> PyResult<PyDecision> {
    let (a, b) = (parse_walk(&graph.inner, w1)?, parse_walk(&graph.inner, w2)?);
    let max_len = max_len.unwrap_or_else(|| homotopy::default_max_len(&a, &b));
    let d = homotopy::walks_homotopic(&a, &b, looped, max_len, max_states).map_err(err)?;
    Ok(PyDecision::walk(&d, &graph.inner))
}

/// Compare two morphisms given as `{source: target}` dictionaries.
#[pyfunction]
#[pyo3(signature = (source, target, f, g, max_steps = DEFAULT_MAX_STEPS))]
fn morphisms_homotopic(
    source: &PyGraph,
    target: &PyGraph,
    f: HashMap<String, String>,
    g: HashMap<String, String>,
    max_steps: usize,
) -> PyResult<PyDecision> {
    let (s, t) = (&source.inner, &target.inner);
    let d = homotopy::morphisms_homotopic(&morphism(s, t, f)?, &morphism(s, t, g)?, max_steps).map_err(err)?;
    Ok(PyDecision {
        verdict: d.verdict.to_string(),
        text: d.render_morphism(s, t),
        json: d.to_json_morphism(s, t).to_string(),
    })
}

/// Fold to a stiff graph; returns the graph and the folds applied.
#[pyfunction]
fn stiff_reduce(graph: &PyGraph) -> (PyGraph, Vec<String>) {
    let r = homotopy::stiff_reduce(&graph.inner);
    (PyGraph { inner: r.stiff.clone() }, r.folds.iter().map(|f| f.describe()).collect())
}

#[pyfunction]
#[pyo3(signature = (graph, base, walkgroup = false, looped = false))]
fn fundamental_group(graph: &PyGraph, base: &str, walkgroup: bool, looped: bool) -> PyResult<PyPresentation> {
    let g = &graph.inner;
    let p = if walkgroup {
        groupoid::walk_group_presentation(g, base)
    } else if looped {
        hom::looped_presentation(g, base)
    } else {
        groupoid::fundamental_group_presentation(g, base)
    }
    .map_err(err)?;
    Ok((&p).into())
}

#[pyfunction]
#[pyo3(signature = (graph, part1, part2, base, induced_cycles = false))]
fn van_kampen(graph: &PyGraph, part1: Vec<String>, part2: Vec<String>, base: &str, induced_cycles: bool) -> PyResult<PyPresentation> {
    let p1: Vec<&str> = part1.iter().map(String::as_str).collect();
    let p2: Vec<&str> = part2.iter().map(String::as_str).collect();
    let rule = if induced_cycles { DiamondRule::InducedCycles } else { DiamondRule::ClosedWalks };
    let vk = groupoid::van_kampen(&graph.inner, &p1, &p2, base, rule).map_err(err)?;
    Ok((&vk.presentation).into())
}

/// Bounded product check; returns `(passed, report_json)`.
#[pyfunction]
fn product_check(g1: &PyGraph, g2: &PyGraph, max_len: usize) -> PyResult<(bool, String)> {
    let r = groupoid::verify_product_pullback(&g1.inner, &g2.inner, max_len).map_err(err)?;
    Ok((r.passed(), serde_json::to_string(&r).expect("report serializes")))
}

#[pyfunction]
#[pyo3(signature = (g, h, cap = hom::DEFAULT_HOM_CAP))]
fn exponential_graph(g: &PyGraph, h: &PyGraph, cap: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: Arc::new(hom::exponential_graph(&g.inner, &h.inner, cap).map_err(err)?) })
}

/// Cell counts `(c0, c1, c2)` of the 2-skeleton of Hom(G, H).
#[pyfunction]
#[pyo3(signature = (g, h, cap = hom::DEFAULT_HOM_CAP))]
fn hom_complex(g: &PyGraph, h: &PyGraph, cap: usize) -> PyResult<(usize, usize, usize)> {
    let c = hom::hom_complex_2skeleton(&g.inner, &h.inner, cap).map_err(err)?;
    Ok((c.cells0.len(), c.cells1.len(), c.cells2.len()))
}

/// Looped groups of H^G against edge-path groups of Hom(G, H); returns
/// `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (g, h, max_len = 8, cap = hom::DEFAULT_HOM_CAP))]
fn compare_hom(g: &PyGraph, h: &PyGraph, max_len: usize, cap: usize) -> PyResult<(bool, String)> {
    let r = hom::compare_hom_groups(&g.inner, &h.inner, max_len, cap).map_err(err)?;
    Ok((r.passed(), serde_json::to_string(&r).expect("report serializes")))
}

#[pymodule]
#[pyo3(name = "xhomotopy")]
fn xhomotopy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDecision>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(walks_homotopic, m)?)?;
    m.add_function(wrap_pyfunction!(morphisms_homotopic, m)?)?;
    m.add_function(wrap_pyfunction!(stiff_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(fundamental_group, m)?)?;
    m.add_function(wrap_pyfunction!(van_kampen, m)?)?;
    m.add_function(wrap_pyfunction!(product_check, m)?)?;
    m.add_function(wrap_pyfunction!(exponential_graph, m)?)?;
    m.add_function(wrap_pyfunction!(hom_complex, m)?)?;
    m.add_function(wrap_pyfunction!(compare_hom, m)?)?;
    Ok(())
}

//! Python bindings. Exact rationals come back as `fractions.Fraction`,
//! irrational bounds as fixed-point strings.

use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use spanbound::cutlemma::{enumerate_conditions, verify_conditions};
use spanbound::dissect::{dissect_graph, validate_trace};
use spanbound::factors::{factor_table as core_factor_table, FactorSource, FactorTable};
use spanbound::io::{detect_format, parse_graph, write_graph, GraphFormat};
use spanbound::lp::{
    beta_bounds as core_beta_bounds, build_lp, small_d_of, solve_and_exponentiate,
    verify_certificate, LpOptions, Variant,
};
use spanbound::SimpleGraph;

create_exception!(spanbound_py, SpanboundError, PyValueError);

fn err(e: spanbound::Error) -> PyErr {
    SpanboundError::new_err(e.to_string())
}

fn frac<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.to_string(),))
}

fn desk_table(d_max: usize) -> PyResult<FactorTable> {
    let mut t = core_factor_table(d_max.min(8), d_max).map_err(err)?;
    t.fill_closed_form(d_max);
    Ok(t)
}

#[pyclass(name = "Graph", module = "spanbound_py", eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    inner: SimpleGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: SimpleGraph::from_edges(n, edges).map_err(err)?,
        })
    }

    /// Parses an edge list or a graph6 line; `format` is `"edgelist"`,
    /// `"graph6"` or omitted to guess.
    #[staticmethod]
    #[pyo3(signature = (text, format = None))]
    fn parse(text: &str, format: Option<&str>) -> PyResult<Self> {
        let fmt = match format {
            None => detect_format(text),
            Some("edgelist") => GraphFormat::EdgeList,
            Some("graph6") => GraphFormat::Graph6,
            Some(other) => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        };
        Ok(PyGraph {
            inner: parse_graph(text, fmt).map_err(err)?,
        })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: SimpleGraph::complete(n),
        }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph {
            inner: SimpleGraph::cycle(n),
        }
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
        self.inner.edges()
    }

    fn degree(&self, v: usize) -> usize {
        self.inner.degree(v)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn spanning_tree_count(&self) -> num_bigint::BigUint {
        spanbound::spanning_tree_count(&self.inner)
    }

    /// `SP(G)^(1/mu)` to `places` decimals.
    #[pyo3(signature = (places = 6))]
    fn beta(&self, places: usize) -> PyResult<String> {
        Ok(spanbound::beta_of(&self.inner)
            .map_err(err)?
            .to_fixed(places))
    }

    /// `(size, one side)` of a global minimum edge cut.
    fn min_cut(&self) -> PyResult<(usize, Vec<usize>)> {
        let c = spanbound::min_cut(&self.inner).map_err(err)?;
        Ok((c.size, c.side))
    }

    fn canonical_key(&self) -> PyResult<String> {
        Ok(spanbound::canonical_form(&self.inner).map_err(err)?.key)
    }

    fn graph6(&self) -> String {
        write_graph(&self.inner, GraphFormat::Graph6)
            .trim_end()
            .to_string()
    }

    fn edge_list(&self) -> String {
        write_graph(&self.inner, GraphFormat::EdgeList)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyfunction]
fn closed_form_f(py: Python<'_>, c: usize, d: usize) -> PyResult<Bound<'_, PyAny>> {
    frac(py, &spanbound::closed_form_f(c, d))
}

/// Multiplier of the limit graph built on `h` at degree bound `d`.
#[pyfunction]
fn factor_of_subgraph<'py>(py: Python<'py>, h: &PyGraph, d: usize) -> PyResult<Bound<'py, PyAny>> {
    frac(
        py,
        &spanbound::factor_of_subgraph(&h.inner, d).map_err(err)?,
    )
}

/// One dict per cell, ordered by `d` then `c`.
#[pyfunction]
#[pyo3(signature = (c_max, d_max, fill = false))]
fn factor_table(
    py: Python<'_>,
    c_max: usize,
    d_max: usize,
    fill: bool,
) -> PyResult<Bound<'_, PyList>> {
    let mut t = core_factor_table(c_max, d_max).map_err(err)?;
    if fill {
        t.fill_closed_form(d_max);
    }
    let mut cells: Vec<_> = t.iter().collect();
    cells.sort_by_key(|((c, d), _)| (*d, *c));
    let out = PyList::empty(py);
    for ((c, d), e) in cells {
        let row = PyDict::new(py);
        row.set_item("c", c)?;
        row.set_item("d", d)?;
        row.set_item("value", frac(py, &e.value)?)?;
        row.set_item("argmin", e.argmin.clone())?;
        let source = match e.source {
            FactorSource::Computed => "computed",
            FactorSource::ClosedForm => "closed-form",
            FactorSource::Manual => "manual",
        };
        row.set_item("source", source)?;
        out.append(row)?;
    }
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (d_max = 11))]
fn cut_conditions(py: Python<'_>, d_max: usize) -> PyResult<Bound<'_, PyList>> {
    let t = desk_table(d_max)?;
    let conds = enumerate_conditions(d_max, &t).map_err(err)?;
    let out = PyList::empty(py);
    for k in &conds {
        let row = PyDict::new(py);
        row.set_item("c", k.c)?;
        row.set_item("d", k.d)?;
        row.set_item("maxu", k.maxu)?;
        row.set_item("maxv", k.maxv)?;
        row.set_item("u_partition", k.u_partition.parts.clone())?;
        row.set_item("v_partition", k.v_partition.parts.clone())?;
        row.set_item("bound", frac(py, &k.bound)?)?;
        row.set_item("margin", frac(py, &k.margin)?)?;
        out.append(row)?;
    }
    debug_assert_eq!(verify_conditions(&conds).total, conds.len());
    Ok(out)
}

#[pyfunction]
fn dissect<'py>(py: Python<'py>, g: &PyGraph, d: usize) -> PyResult<Bound<'py, PyDict>> {
    let trace = dissect_graph(&g.inner, d).map_err(err)?;
    let report = validate_trace(&g.inner, &trace, &desk_table(d.clamp(3, 11))?);
    let steps = PyList::empty(py);
    for s in &trace.steps {
        let step = PyDict::new(py);
        step.set_item("component", s.component)?;
        step.set_item("cut_size", s.size)?;
        step.set_item("sides", (s.sides.0.clone(), s.sides.1.clone()))?;
        steps.append(step)?;
    }
    let out = PyDict::new(py);
    out.set_item("steps", steps)?;
    out.set_item("tallies", trace.tallies.clone())?;
    out.set_item("spanning_trees", report.spanning_trees.clone())?;
    out.set_item("product", report.product.clone())?;
    out.set_item("messages", report.messages.clone())?;
    out.set_item("passed", report.pass())?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (d, variant = "basic", include_sum_row = false, small_d = None))]
fn solve_lp<'py>(
    py: Python<'py>,
    d: usize,
    variant: &str,
    include_sum_row: bool,
    small_d: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let variant: Variant = variant.parse().map_err(err)?;
    let t = desk_table(d)?;
    let mut opts = LpOptions::for_variant(variant);
    opts.include_sum_row |= include_sum_row;
    if variant == Variant::NonRegular {
        opts.small_d = match small_d {
            Some(s) => Some(s),
            None => {
                let b = core_beta_bounds(d, &t).map_err(err)?;
                Some(small_d_of(d, &b.lower.lower(), &t).map_err(err)?)
            }
        };
    }
    let lp = build_lp(d, &t, variant, &opts).map_err(err)?;
    let (sol, e) = solve_and_exponentiate(&lp);
    let out = PyDict::new(py);
    out.set_item("program", lp.to_string())?;
    out.set_item("status", format!("{:?}", sol.status).to_lowercase())?;
    out.set_item("value", frac(py, &sol.value)?)?;
    let x = PyDict::new(py);
    for (name, v) in lp.names.iter().zip(&sol.x) {
        x.set_item(name, frac(py, v)?)?;
    }
    out.set_item("x", x)?;
    out.set_item("certified", verify_certificate(&lp, &sol))?;
    out.set_item("exp_value", e.map(|e| e.to_fixed(6)))?;
    Ok(out)
}

#[pyfunction]
fn beta_bounds(py: Python<'_>, d: usize) -> PyResult<Bound<'_, PyDict>> {
    let t = desk_table(d)?;
    let b = core_beta_bounds(d, &t).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("d", d)?;
    out.set_item("upper", b.upper.to_fixed(6))?;
    out.set_item("lower", b.lower.to_fixed(6))?;
    match &b.lp_value {
        Some(v) => out.set_item("lp_value", frac(py, v)?)?,
        None => out.set_item("lp_value", py.None())?,
    }
    Ok(out)
}

#[pymodule]
fn spanbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("SpanboundError", m.py().get_type::<SpanboundError>())?;
    m.add_function(wrap_pyfunction!(closed_form_f, m)?)?;
    m.add_function(wrap_pyfunction!(factor_of_subgraph, m)?)?;
    m.add_function(wrap_pyfunction!(factor_table, m)?)?;
    m.add_function(wrap_pyfunction!(cut_conditions, m)?)?;
    m.add_function(wrap_pyfunction!(dissect, m)?)?;
    m.add_function(wrap_pyfunction!(solve_lp, m)?)?;
    m.add_function(wrap_pyfunction!(beta_bounds, m)?)?;
    Ok(())
}

//! Python bindings for the spanner construction pipeline.
//!
//! Exposes instance generation, spanner assembly, stretch verification, and
//! the lonely-edge counters as a small `spanner_lab` extension module.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use spanner_core::geometry::ConeSpec;
use spanner_core::instance::{generate, EmbeddedGraph, Model, Params};
use spanner_core::lonely;
use spanner_core::spanner::{assemble_spanner, critical_radii, verify_stretch};

fn params_for(
    n: usize,
    p: f64,
    epsilon: f64,
    theta: f64,
    m_const: f64,
    k_const: f64,
    seed: u64,
    model: Model,
) -> Params {
    Params { n, p, epsilon, theta, m_const, k_const, seed, model }
}

/// A generated instance: points in the unit square plus an edge set.
#[pyclass]
struct Graph {
    inner: EmbeddedGraph,
    params: Params,
}

#[pymethods]
impl Graph {
    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn points(&self) -> Vec<(f64, f64)> {
        self.inner.points().iter().map(|p| (p.x, p.y)).collect()
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().to_vec()
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.inner.has_edge(u, v)
    }

    /// Critical radii (r_eps, R_eps) for this instance's parameters.
    fn critical_radii(&self) -> (f64, f64) {
        let r = critical_radii(&self.params);
        (r.r_eps, r.big_r_eps)
    }

    /// Build the spanner and verify it; returns a dict of sizes and the
    /// exact maximum stretch.
    fn build_spanner(&self, py: Python<'_>) -> PyResult<PyObject> {
        let build = assemble_spanner(&self.inner, &self.params);
        let stretch = verify_stretch(&self.inner, &build.edges.union, &build.oracle, None);
        let sizes = build.edges.sizes();
        let dict = pyo3::types::PyDict::new_bound(py);
        dict.set_item("e1", sizes.e1)?;
        dict.set_item("e2", sizes.e2)?;
        dict.set_item("e3", sizes.e3)?;
        dict.set_item("e4", sizes.e4)?;
        dict.set_item("union", sizes.union)?;
        dict.set_item("tau", build.spec.tau())?;
        dict.set_item("max_stretch", stretch.max_stretch)?;
        dict.set_item("infinite_stretch_pairs", stretch.infinite_stretch_pairs)?;
        dict.set_item("edges", build.edges.union)?;
        Ok(dict.into())
    }

    /// Lonely and essential edge counts at the instance's epsilon.
    fn lonely_counts(&self, py: Python<'_>) -> PyResult<PyObject> {
        let counts = lonely::count_lonely(&self.inner, self.params.epsilon, None);
        let essential = lonely::essential_edges(&self.inner, self.params.epsilon, None);
        let dict = pyo3::types::PyDict::new_bound(py);
        dict.set_item("lonely", counts.lonely)?;
        dict.set_item("essential", essential.len())?;
        dict.set_item("edges_total", counts.edges_total)?;
        Ok(dict.into())
    }
}

/// Sample a random embedding of G(n, p) with Euclidean edge lengths.
#[pyfunction]
#[pyo3(signature = (n, p, epsilon, seed, theta=0.5, m_const=2.0, k_const=20.0))]
fn gnp(
    n: usize,
    p: f64,
    epsilon: f64,
    seed: u64,
    theta: f64,
    m_const: f64,
    k_const: f64,
) -> PyResult<Graph> {
    let params = params_for(n, p, epsilon, theta, m_const, k_const, seed, Model::GnpEmbedding);
    let inner = generate(&params).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(Graph { inner, params })
}

/// Sample a random geometric graph with connection radius `radius`.
#[pyfunction]
#[pyo3(signature = (n, radius, epsilon, seed, theta=0.5, m_const=2.0, k_const=20.0))]
fn rgg(
    n: usize,
    radius: f64,
    epsilon: f64,
    seed: u64,
    theta: f64,
    m_const: f64,
    k_const: f64,
) -> PyResult<Graph> {
    let params = params_for(
        n,
        1.0,
        epsilon,
        theta,
        m_const,
        k_const,
        seed,
        Model::Geometric { radius },
    );
    let inner = generate(&params).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(Graph { inner, params })
}

/// Area coefficient of the lonely-edge ellipse.
#[pyfunction]
fn psi(epsilon: f64) -> PyResult<f64> {
    if epsilon < 0.0 {
        return Err(PyValueError::new_err("epsilon must be >= 0"));
    }
    Ok(lonely::psi(epsilon))
}

/// Number of cones for a given angle.
#[pyfunction]
fn tau(epsilon: f64) -> PyResult<u32> {
    if !(epsilon > 0.0 && epsilon <= std::f64::consts::FRAC_PI_2) {
        return Err(PyValueError::new_err("epsilon must be in (0, pi/2]"));
    }
    Ok(ConeSpec::new(epsilon).tau())
}

/// Semi-analytic expectation of the lonely-edge count.
#[pyfunction]
#[pyo3(signature = (n, p, epsilon, samples=100_000, seed=0))]
fn expected_lonely(
    py: Python<'_>,
    n: usize,
    p: f64,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> PyResult<PyObject> {
    if samples < 10_000 {
        return Err(PyValueError::new_err("samples must be >= 10000"));
    }
    if n < 2 {
        return Err(PyRuntimeError::new_err("n must be >= 2"));
    }
    let est = lonely::expected_lonely_integral(n, p, epsilon, samples, seed);
    let dict = pyo3::types::PyDict::new_bound(py);
    dict.set_item("mean", est.mean)?;
    dict.set_item("std_error", est.std_error)?;
    dict.set_item("paper_variant_mean", est.paper_variant_mean)?;
    dict.set_item("closed_form_bound", lonely::closed_form_bound(n, epsilon))?;
    Ok(dict.into())
}

#[pymodule]
fn spanner_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(gnp, m)?)?;
    m.add_function(wrap_pyfunction!(rgg, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(expected_lonely, m)?)?;
    Ok(())
}

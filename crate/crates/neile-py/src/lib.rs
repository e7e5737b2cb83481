//! Python bindings for the core library: distances, the metric, mixed
//! interpolation and bidisk extensions, with complex values crossing the
//! boundary as native Python complex numbers.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use neile_core as core;

fn domain(err: core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn point(t: Complex64) -> PyResult<core::NeilePoint> {
    core::parameterize(t).map_err(domain)
}

#[pyfunction]
fn pseudo_hyperbolic(a: Complex64, b: Complex64) -> PyResult<f64> {
    core::pseudo_hyperbolic(a, b).map_err(domain)
}

#[pyfunction]
fn poincare_distance(a: Complex64, b: Complex64) -> PyResult<f64> {
    core::poincare_distance(a, b).map_err(domain)
}

#[pyfunction]
fn mobius(a: Complex64, z: Complex64) -> PyResult<Complex64> {
    core::mobius(a, z).map_err(domain)
}

#[pyfunction]
fn blaschke_eval(mu: Complex64, zeros: Vec<Complex64>, z: Complex64) -> PyResult<Complex64> {
    core::blaschke_eval(mu, &zeros, z).map_err(domain)
}

#[pyfunction]
fn parameterize(t: Complex64) -> PyResult<(Complex64, Complex64)> {
    let p = point(t)?;
    Ok((p.z(), p.w()))
}

#[pyfunction]
fn uniformize(z: Complex64, w: Complex64) -> PyResult<Complex64> {
    core::uniformize(z, w).map_err(domain)
}

#[pyfunction]
fn caratheodory_mobius(lambda: Complex64, delta: Complex64) -> PyResult<f64> {
    core::caratheodory_mobius(lambda, delta).map_err(domain)
}

#[pyfunction]
fn caratheodory_distance(lambda: Complex64, delta: Complex64) -> PyResult<f64> {
    Ok(core::caratheodory_distance(&point(lambda)?, &point(delta)?))
}

#[pyfunction]
fn kobayashi_distance(lambda: Complex64, delta: Complex64) -> PyResult<f64> {
    Ok(core::kobayashi_distance(&point(lambda)?, &point(delta)?))
}

#[pyfunction]
fn extremal_parameters<'py>(
    py: Python<'py>,
    lambda: Complex64,
    delta: Complex64,
) -> PyResult<Bound<'py, PyDict>> {
    let data = core::extremal_parameters(lambda, delta).map_err(domain)?;
    let out = PyDict::new(py);
    out.set_item("alpha0", data.alpha0)?;
    out.set_item("beta1", data.beta1)?;
    out.set_item("beta2", data.beta2)?;
    out.set_item("regime", data.regime.to_string())?;
    out.set_item("extremal_alpha", data.extremal_alpha)?;
    out.set_item("mobius_value", data.mobius_value)?;
    out.set_item("distance", data.distance)?;
    Ok(out)
}

#[pyfunction]
fn caratheodory_metric(t: Complex64, v1: Complex64, v2: Complex64) -> PyResult<f64> {
    let base = point(t)?;
    let v = core::TangentVector::new(base, v1, v2).map_err(domain)?;
    Ok(core::caratheodory_metric(&v))
}

/// A solved mixed interpolation problem: two node values and a vanishing
/// derivative at the third node.
#[pyclass]
struct Interpolant {
    inner: core::MixedSolution,
}

#[pymethods]
impl Interpolant {
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind {
            core::SolutionKind::Extremal => "extremal",
            core::SolutionKind::Slack => "slack",
        }
    }

    #[getter]
    fn order(&self) -> Option<u8> {
        self.inner.order
    }

    #[getter]
    fn regime(&self) -> String {
        self.inner.regime.to_string()
    }

    #[getter]
    fn margin(&self) -> f64 {
        self.inner.margin
    }

    fn eval(&self, zeta: Complex64) -> Complex64 {
        self.inner.eval(zeta)
    }

    fn derivative(&self, zeta: Complex64) -> Complex64 {
        self.inner.derivative(zeta)
    }
}

#[pyfunction]
fn feasibility<'py>(
    py: Python<'py>,
    z1: Complex64,
    z2: Complex64,
    z3: Complex64,
    w1: Complex64,
    w2: Complex64,
) -> PyResult<Bound<'py, PyDict>> {
    let problem = core::MixedProblem::new(z1, z2, z3, w1, w2).map_err(domain)?;
    let f = problem.feasible();
    let out = PyDict::new(py);
    out.set_item("feasible", f.feasible)?;
    out.set_item("margin", f.margin)?;
    out.set_item("cap", f.cap)?;
    out.set_item("separation", f.separation)?;
    Ok(out)
}

#[pyfunction]
fn interpolate(
    z1: Complex64,
    z2: Complex64,
    z3: Complex64,
    w1: Complex64,
    w2: Complex64,
) -> PyResult<Interpolant> {
    let problem = core::MixedProblem::new(z1, z2, z3, w1, w2).map_err(domain)?;
    let inner = problem.solve().map_err(domain)?;
    Ok(Interpolant { inner })
}

/// A contractive transfer-function extension of node data to the bidisk.
#[pyclass]
struct Extension {
    inner: core::TransferRealization,
}

#[pymethods]
impl Extension {
    fn eval(&self, z: Complex64, w: Complex64) -> PyResult<Complex64> {
        self.inner.eval(z, w).map_err(domain)
    }

    #[getter]
    fn bound(&self) -> f64 {
        self.inner.bound()
    }

    #[getter]
    fn dims(&self) -> (usize, usize) {
        self.inner.dims()
    }

    #[getter]
    fn isometry_defect(&self) -> f64 {
        self.inner.isometry_defect()
    }
}

#[pyfunction]
fn realize_blaschke(
    mu: Complex64,
    zeros: Vec<Complex64>,
    points: Vec<Complex64>,
) -> PyResult<Extension> {
    let f = core::FlatDiskFunction::from_blaschke(
        core::BlaschkeProduct::new(mu, zeros).map_err(domain)?,
    )
    .map_err(domain)?;
    let nodes: Vec<core::NeilePoint> = points
        .into_iter()
        .map(point)
        .collect::<PyResult<_>>()?;
    let inner = core::realize_extension(&nodes, &f).map_err(domain)?;
    Ok(Extension { inner })
}

#[pyfunction]
fn certificate_points() -> Vec<Complex64> {
    core::certificate_points()
        .iter()
        .map(|p| p.uniformizer())
        .collect()
}

#[pyfunction]
fn lower_bound_certificate<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
    let (cert, _) = core::lower_bound_certificate();
    let out = PyDict::new(py);
    out.set_item("bound", cert.bound)?;
    out.set_item("witness", cert.witness)?;
    if let Some((pz, pw)) = cert.partials {
        out.set_item("partial_z", pz)?;
        out.set_item("partial_w", pw)?;
    }
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (profile = "quick", seed = 42))]
fn verify(profile: &str, seed: u64) -> PyResult<String> {
    let profile = match profile {
        "quick" => core::Profile::Quick,
        "thorough" => core::Profile::Thorough,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown profile `{other}`; expected quick or thorough"
            )))
        }
    };
    let reports = core::run_suite(profile, seed);
    serde_json::to_string_pretty(&reports)
        .map_err(|e| PyValueError::new_err(format!("serializing the reports failed: {e}")))
}

#[pymodule]
fn neile_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(pseudo_hyperbolic, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_distance, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(blaschke_eval, m)?)?;
    m.add_function(wrap_pyfunction!(parameterize, m)?)?;
    m.add_function(wrap_pyfunction!(uniformize, m)?)?;
    m.add_function(wrap_pyfunction!(caratheodory_mobius, m)?)?;
    m.add_function(wrap_pyfunction!(caratheodory_distance, m)?)?;
    m.add_function(wrap_pyfunction!(kobayashi_distance, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(caratheodory_metric, m)?)?;
    m.add_function(wrap_pyfunction!(feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(interpolate, m)?)?;
    m.add_function(wrap_pyfunction!(realize_blaschke, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_points, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_class::<Interpolant>()?;
    m.add_class::<Extension>()?;
    Ok(())
}

//! Python bindings: model parameters, Hamiltonians, spectra and the classical
//! phase-space tools.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spinorize_core::classical::{self as cl, FixedPointSearch, PhasePoint};
use spinorize_core::spectra::{self, Approximation, CouplingKind};
use spinorize_core::{model, Error, HalfInteger, OperatorMatrix};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidParams(_)
        | Error::ApproximationMismatch { .. }
        | Error::DomainViolation(_)
        | Error::NonIncreasingGrid { .. }
        | Error::NonUniformGrid { .. }
        | Error::TooFewPoints { .. }
        | Error::DimensionMismatch { .. }
        | Error::NoBracket { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn spin(value: f64) -> PyResult<HalfInteger> {
    HalfInteger::from_f64(value).map_err(py_err)
}

fn approximation(name: &str) -> PyResult<Approximation> {
    name.parse().map_err(py_err)
}

fn rows(m: &OperatorMatrix) -> Vec<Vec<f64>> {
    let e = m.entries();
    (0..e.nrows()).map(|r| e.row(r).iter().copied().collect()).collect()
}

/// Parameters of the M-atom Jaynes-Cummings model.
#[pyclass(name = "ModelParams", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyModelParams(model::ModelParams);

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (j1, j2, g = 0.0, g_prime = 0.0, epsilon = 1.0))]
    fn new(j1: f64, j2: f64, g: f64, g_prime: f64, epsilon: f64) -> PyResult<Self> {
        model::ModelParams::new(epsilon, g, g_prime, spin(j1)?, spin(j2)?)
            .map(Self)
            .map_err(py_err)
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.0.epsilon()
    }

    #[getter]
    fn g(&self) -> f64 {
        self.0.g()
    }

    #[getter]
    fn g_prime(&self) -> f64 {
        self.0.g_prime()
    }

    #[getter]
    fn j1(&self) -> f64 {
        self.0.j1().value()
    }

    #[getter]
    fn j2(&self) -> f64 {
        self.0.j2().value()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.basis().dim()
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(j1={}, j2={}, g={}, g_prime={}, epsilon={})",
            self.0.j1(),
            self.0.j2(),
            self.0.g(),
            self.0.g_prime(),
            self.0.epsilon()
        )
    }
}

/// Hamiltonian matrix built from truncated bosons, as nested lists.
#[pyfunction]
fn build_h_bosonic(params: &PyModelParams) -> PyResult<Vec<Vec<f64>>> {
    model::build_h_bosonic(&params.0).map(|m| rows(&m)).map_err(py_err)
}

/// Hamiltonian matrix built from two spins, as nested lists.
#[pyfunction]
fn build_h_two_spin(params: &PyModelParams) -> PyResult<Vec<Vec<f64>>> {
    model::build_h_two_spin(&params.0).map(|m| rows(&m)).map_err(py_err)
}

/// Ascending eigenvalues for `approx` in {"rotating", "counter", "full"}.
#[pyfunction]
#[pyo3(signature = (params, approx = "full"))]
fn blockwise_spectrum(params: &PyModelParams, approx: &str) -> PyResult<Vec<f64>> {
    spectra::blockwise_spectrum(&params.0, approximation(approx)?)
        .map(|s| s.eigenvalues)
        .map_err(py_err)
}

/// `(epsilon <a+a>, ground energy, degenerate)` of the ground state.
#[pyfunction]
#[pyo3(signature = (params, approx = "full"))]
fn ground_expectation_number(params: &PyModelParams, approx: &str) -> PyResult<(f64, f64, bool)> {
    spectra::ground_expectation_number(&params.0, approximation(approx)?)
        .map(|g| (g.value, g.energy, g.degenerate))
        .map_err(py_err)
}

/// Spectra and ground-state `epsilon <a+a>` over a grid of `which` in {"g", "gprime"}.
#[pyfunction]
fn spectrum_scan(
    params: &PyModelParams,
    which: &str,
    values: Vec<f64>,
    approx: &str,
) -> PyResult<(Vec<Vec<f64>>, Vec<f64>)> {
    let kind = match which {
        "g" => CouplingKind::G,
        "gprime" | "g_prime" => CouplingKind::GPrime,
        other => return Err(PyValueError::new_err(format!("unknown coupling '{other}'"))),
    };
    spectra::spectrum_scan(&params.0, kind, &values, approximation(approx)?)
        .map(|s| (s.spectral.energies, s.observable.values))
        .map_err(py_err)
}

/// `(peak_coupling, peak_value, [(coupling, second difference)])`.
type CurvaturePeak = (f64, f64, Vec<(f64, f64)>);

/// Peak and values of the central second difference.
#[pyfunction]
fn second_difference(grid: Vec<f64>, values: Vec<f64>) -> PyResult<CurvaturePeak> {
    spectra::second_difference(&grid, &values)
        .map(|c| (c.peak_coupling, c.peak_value, c.points))
        .map_err(py_err)
}

#[pyfunction]
fn lieb_ratio(j: f64) -> PyResult<f64> {
    cl::lieb_ratio(spin(j)?).map_err(py_err)
}

/// `g sqrt(J) / epsilon`.
#[pyfunction]
#[pyo3(signature = (g, j, epsilon = 1.0))]
fn lambda_from_coupling(g: f64, j: f64, epsilon: f64) -> PyResult<f64> {
    Ok(cl::lambda_from_coupling(g, epsilon, spin(j)?))
}

#[pyfunction]
#[pyo3(signature = (lo = 0.1, hi = 2.0, tol = 1e-4))]
fn critical_coupling_scan(lo: f64, hi: f64, tol: f64) -> PyResult<f64> {
    cl::critical_coupling_scan(lo, hi, tol).map_err(py_err)
}

/// `(q, p, energy, kind, on_boundary)`.
type FixedPointRow = (f64, f64, f64, &'static str, bool);

/// `(level, closed, vertices)`.
type ContourLine = (f64, bool, Vec<(f64, f64)>);

/// Reduced one-degree-of-freedom Hamiltonian, `kind` in {"rotating", "counter"}.
#[pyclass(name = "ReducedHamiltonian", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyReduced(cl::ReducedHamiltonian);

#[pymethods]
impl PyReduced {
    #[new]
    fn new(kind: &str, coupling: f64) -> PyResult<Self> {
        let h = match kind {
            "rotating" => cl::ReducedHamiltonian::rotating(coupling),
            "counter" => cl::ReducedHamiltonian::counter(coupling),
            other => return Err(PyValueError::new_err(format!("unknown kind '{other}'"))),
        };
        h.map(Self).map_err(py_err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.name()
    }

    #[getter]
    fn coupling(&self) -> f64 {
        self.0.coupling()
    }

    fn value(&self, q: f64, p: f64) -> PyResult<f64> {
        self.0.value(q, p).map_err(py_err)
    }

    /// `(dH/dq, dH/dp)`.
    fn grad(&self, q: f64, p: f64) -> PyResult<(f64, f64)> {
        self.0.grad(q, p).map(|g| (g.dq, g.dp)).map_err(py_err)
    }

    fn hessian(&self, q: f64, p: f64) -> PyResult<[[f64; 2]; 2]> {
        self.0.hessian(q, p).map_err(py_err)
    }

    /// `[(q, p, energy, kind, on_boundary)]`, interior and `p = -1` points.
    fn fixed_points(&self) -> PyResult<Vec<FixedPointRow>> {
        cl::all_fixed_points(&self.0, &FixedPointSearch::default())
            .map(|pts| {
                pts.iter()
                    .map(|fp| (fp.point.q, fp.point.p, fp.energy, fp.kind.name(), fp.on_boundary))
                    .collect()
            })
            .map_err(py_err)
    }

    fn separatrix_energy(&self) -> PyResult<f64> {
        cl::separatrix_energy(&self.0).map_err(py_err)
    }

    /// `[(level, closed, [(q, p), ...])]`, one entry per polyline.
    #[pyo3(signature = (levels, nq = 512, np = 512))]
    fn trace_contours(&self, levels: Vec<f64>, nq: usize, np: usize) -> PyResult<Vec<ContourLine>> {
        let contours = cl::trace_contours(&self.0, &levels, nq, np).map_err(py_err)?;
        Ok(contours
            .into_iter()
            .flat_map(|c| {
                let level = c.level;
                c.polylines
                    .into_iter()
                    .map(move |l| (level, l.closed, l.vertices.iter().map(|v| (v.q, v.p)).collect()))
            })
            .collect())
    }

    /// `([(q, p), ...], hit_boundary)`; `q` is not wrapped.
    #[pyo3(signature = (q0, p0, dt = 1e-3, steps = 10_000))]
    fn integrate_orbit(&self, q0: f64, p0: f64, dt: f64, steps: usize) -> PyResult<(Vec<(f64, f64)>, bool)> {
        cl::integrate_orbit(&self.0, PhasePoint::new(q0, p0), dt, steps)
            .map(|t| (t.points.iter().map(|x| (x.q, x.p)).collect(), t.hit_boundary))
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("ReducedHamiltonian('{}', {})", self.0.name(), self.0.coupling())
    }
}

#[pymodule]
fn spinorize(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyReduced>()?;
    m.add_function(wrap_pyfunction!(build_h_bosonic, m)?)?;
    m.add_function(wrap_pyfunction!(build_h_two_spin, m)?)?;
    m.add_function(wrap_pyfunction!(blockwise_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(ground_expectation_number, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_scan, m)?)?;
    m.add_function(wrap_pyfunction!(second_difference, m)?)?;
    m.add_function(wrap_pyfunction!(lieb_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_from_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(critical_coupling_scan, m)?)?;
    m.add("COUNTER_CRITICAL_LAMBDA", cl::COUNTER_CRITICAL_LAMBDA)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

use gwcache_core::achievable::{self, OperatingPoint};
use gwcache_core::simulator::{self, SourceSpec};
use gwcache_core::{bounds, gray_wyner, info, Error, OptimizerConfig};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

create_exception!(gwcache, InfeasibleError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Infeasible(_) => InfeasibleError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for gwcache_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Converts a serializable value into Python objects through `json.loads`.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn config(restarts: usize, seed: u64) -> OptimizerConfig {
    OptimizerConfig::default().with_restarts(restarts).with_seed(seed)
}

/// Joint distribution of two discrete sources.
#[pyclass(name = "JointPmf", frozen)]
struct PyJointPmf(info::JointPmf2);

#[pymethods]
impl PyJointPmf {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
        info::JointPmf2::from_rows(&refs).py().map(Self)
    }

    #[staticmethod]
    fn dsbs(p0: f64) -> PyResult<Self> {
        info::JointPmf2::dsbs(p0).py().map(Self)
    }

    #[staticmethod]
    fn independent(p1: Vec<f64>, p2: Vec<f64>) -> PyResult<Self> {
        info::JointPmf2::independent(&p1, &p2).py().map(Self)
    }

    #[staticmethod]
    fn shared_component(pv: f64, p1: f64, p2: f64) -> PyResult<Self> {
        info::JointPmf2::shared_component(pv, p1, p2).py().map(Self)
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.0.n1(), self.0.n2())
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.0.probs().chunks(self.0.n2()).map(<[f64]>::to_vec).collect()
    }

    fn joint_entropy(&self) -> f64 {
        self.0.joint_entropy()
    }

    /// Dict with h1, h2, h12, h1_given_2, h2_given_1, mutual_info.
    fn measures<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.measures())
    }

    fn __repr__(&self) -> String {
        format!("JointPmf({:?})", self.rows())
    }
}

/// Auxiliary channel p(u | x1, x2), one column per source cell.
#[pyclass(name = "AuxChannel", frozen)]
struct PyAuxChannel(gray_wyner::AuxChannel);

#[pymethods]
impl PyAuxChannel {
    #[new]
    fn new(nu: usize, columns: Vec<Vec<f64>>) -> PyResult<Self> {
        gray_wyner::AuxChannel::from_columns(nu, &columns).py().map(Self)
    }

    #[staticmethod]
    #[pyo3(signature = (p0, a, require_markov = true))]
    fn wyner_dsbs(p0: f64, a: f64, require_markov: bool) -> PyResult<Self> {
        gray_wyner::wyner_aux_dsbs(p0, a, require_markov).py().map(Self)
    }

    #[staticmethod]
    fn plane_dsbs(p0: f64, a: f64) -> PyResult<Self> {
        gray_wyner::dsbs_plane_aux(p0, a).py().map(Self)
    }

    #[staticmethod]
    fn constant(cells: usize) -> Self {
        Self(gray_wyner::AuxChannel::constant(cells))
    }

    #[staticmethod]
    fn identity(cells: usize) -> Self {
        Self(gray_wyner::AuxChannel::identity(cells))
    }

    #[getter]
    fn nu(&self) -> usize {
        self.0.nu()
    }

    fn columns(&self) -> Vec<Vec<f64>> {
        self.0.columns().map(<[f64]>::to_vec).collect()
    }

    fn __repr__(&self) -> String {
        format!("AuxChannel(nu={}, cells={})", self.0.nu(), self.0.cells())
    }
}

#[pyfunction]
fn entropy(p: Vec<f64>) -> PyResult<f64> {
    info::entropy(&p).py()
}

#[pyfunction]
fn binary_entropy(p: f64) -> PyResult<f64> {
    info::binary_entropy(p).py()
}

#[pyfunction]
fn binary_entropy_inv(y: f64) -> PyResult<f64> {
    info::binary_entropy_inv(y).py()
}

/// Corner `(r0, r1, r2)` of the Gray-Wyner region for the channel.
#[pyfunction]
fn gw_corner(j: &PyJointPmf, a: &PyAuxChannel) -> PyResult<(f64, f64, f64)> {
    let c = gray_wyner::gw_corner(&j.0, &a.0).py()?;
    Ok((c.r0, c.r1, c.r2))
}

#[pyfunction]
fn markov_defect(j: &PyJointPmf, a: &PyAuxChannel) -> PyResult<f64> {
    gray_wyner::markov_defect(&j.0, &a.0).py()
}

#[pyfunction]
fn symmetry_defect(j: &PyJointPmf, a: &PyAuxChannel) -> PyResult<f64> {
    gray_wyner::symmetry_defect(&j.0, &a.0).py()
}

#[pyfunction]
fn dsbs_p1(p0: f64) -> PyResult<f64> {
    gray_wyner::dsbs_p1(p0).py()
}

#[pyfunction]
fn dsbs_r0_boundary(rho: f64, p0: f64) -> PyResult<f64> {
    gray_wyner::dsbs_r0_boundary(rho, p0).py()
}

/// General lower bound: `(value, active constraint)`.
#[pyfunction]
fn r_lb(j: &PyJointPmf, m: f64) -> PyResult<(f64, usize)> {
    let v = bounds::r_lb(&j.0, m).py()?;
    Ok((v.value, v.active))
}

#[pyfunction]
fn r_lb_gw_u(j: &PyJointPmf, a: &PyAuxChannel, m: f64) -> PyResult<(f64, usize)> {
    let v = bounds::r_lb_gw_u(&j.0, &a.0, m).py()?;
    Ok((v.value, v.active))
}

/// Optimizer estimate of the GW-class lower bound: `(value, witness)`.
#[pyfunction]
#[pyo3(signature = (j, m, restarts = 64, seed = 0))]
fn r_lb_gw(py: Python<'_>, j: &PyJointPmf, m: f64, restarts: usize, seed: u64) -> PyResult<(f64, PyAuxChannel)> {
    let e = py.detach(|| bounds::r_lb_gw(&j.0, m, &config(restarts, seed))).py()?;
    Ok((e.value, PyAuxChannel(e.witness)))
}

#[pyfunction]
#[pyo3(signature = (j, symmetric = false, restarts = 64, seed = 0))]
fn m1<'py>(py: Python<'py>, j: &PyJointPmf, symmetric: bool, restarts: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| bounds::m1(&j.0, symmetric, &config(restarts, seed))).py()?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (j, restarts = 64, seed = 0))]
fn gap_certificate<'py>(py: Python<'py>, j: &PyJointPmf, restarts: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| bounds::gap_certificate(&j.0, &config(restarts, seed))).py()?;
    to_py(py, &r)
}

/// Achievable rate at operating point `(r0, rho)`: `(value, branch)`.
#[pyfunction]
fn r_ach(r0: f64, rho: f64, m: f64) -> PyResult<(f64, u8)> {
    let v = achievable::r_ach(&OperatingPoint { r0, rho }, m).py()?;
    Ok((v.value, v.branch))
}

#[pyfunction]
fn r_ub_gw_u(j: &PyJointPmf, a: &PyAuxChannel, m: f64) -> PyResult<(f64, u8)> {
    let v = achievable::r_ub_gw_u(&j.0, &a.0, m).py()?;
    Ok((v.value, v.branch))
}

/// Dict with value, rho, r0, branch.
#[pyfunction]
fn r_ub_gw_dsbs<'py>(py: Python<'py>, p0: f64, m: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &achievable::r_ub_gw_dsbs(p0, m).py()?)
}

#[pyfunction]
fn baseline_tc(j: &PyJointPmf, m: f64) -> PyResult<f64> {
    achievable::baseline_tc(&j.0, m).py()
}

#[pyfunction]
fn baseline_lfu_um(j: &PyJointPmf, m: f64) -> PyResult<f64> {
    achievable::baseline_lfu_um(&j.0, m).py()
}

/// Runs the caching protocol on a sampled library and returns the report
/// as a dict. With neither `p0` nor `shared`, the source is fair bits.
#[pyfunction]
#[pyo3(signature = (grid, n = 100_000, seed = 0, p0 = None, shared = None))]
fn simulate<'py>(
    py: Python<'py>,
    grid: Vec<f64>,
    n: usize,
    seed: u64,
    p0: Option<f64>,
    shared: Option<(f64, f64, f64)>,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = match (p0, shared) {
        (Some(_), Some(_)) => return Err(PyValueError::new_err("give at most one of p0 and shared")),
        (Some(p0), None) => SourceSpec::DsbsWyner { p0 },
        (None, Some((pv, p1, p2))) => SourceSpec::SharedComponent { pv, p1, p2 },
        (None, None) => SourceSpec::fair_bits(),
    };
    let run = py.detach(|| simulator::run_experiment(&spec, &grid, n, seed)).py()?;
    to_py(py, &run)
}

#[pyfunction]
#[pyo3(signature = (n = 4, budgets = None))]
fn exhaustive_verify<'py>(py: Python<'py>, n: usize, budgets: Option<Vec<f64>>) -> PyResult<Bound<'py, PyAny>> {
    let budgets = budgets.unwrap_or_else(|| simulator::DEFAULT_EXHAUSTIVE_BUDGETS.to_vec());
    let r = py.detach(|| simulator::exhaustive_verify(n, &budgets)).py()?;
    to_py(py, &r)
}

#[pymodule]
fn gwcache(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyJointPmf>()?;
    m.add_class::<PyAuxChannel>()?;
    m.add("InfeasibleError", m.py().get_type::<InfeasibleError>())?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(binary_entropy_inv, m)?)?;
    m.add_function(wrap_pyfunction!(gw_corner, m)?)?;
    m.add_function(wrap_pyfunction!(markov_defect, m)?)?;
    m.add_function(wrap_pyfunction!(symmetry_defect, m)?)?;
    m.add_function(wrap_pyfunction!(dsbs_p1, m)?)?;
    m.add_function(wrap_pyfunction!(dsbs_r0_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(r_lb, m)?)?;
    m.add_function(wrap_pyfunction!(r_lb_gw_u, m)?)?;
    m.add_function(wrap_pyfunction!(r_lb_gw, m)?)?;
    m.add_function(wrap_pyfunction!(m1, m)?)?;
    m.add_function(wrap_pyfunction!(gap_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(r_ach, m)?)?;
    m.add_function(wrap_pyfunction!(r_ub_gw_u, m)?)?;
    m.add_function(wrap_pyfunction!(r_ub_gw_dsbs, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_tc, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_lfu_um, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_verify, m)?)?;
    Ok(())
}

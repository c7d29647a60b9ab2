//! Python module `pychaninfo`.
//!
//! Matrices cross the boundary as nested lists of Python complex numbers,
//! so `numpy.ndarray.tolist()` output is accepted directly.

use chaninfo::capacity::{self, CapacityResult, OptimizerConfig};
use chaninfo::channel::random_channel;
use chaninfo::entropy;
use chaninfo::information;
use chaninfo::io::SweepConfig;
use chaninfo::reversibility;
use chaninfo::{lab, random, suites, CMat, Error};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Rows = Vec<Vec<Complex64>>;

pyo3::create_exception!(pychaninfo, InfeasibleError, PyArithmeticError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Infeasible { .. } => InfeasibleError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_mat(rows: &Rows) -> PyResult<CMat> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("expected a non-empty rectangular matrix"));
    }
    Ok(CMat::from_fn(r, c, |i, j| rows[i][j]))
}

fn to_rows(m: &CMat) -> Rows {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

#[pyclass(name = "KrausChannel", module = "pychaninfo", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyChannel(chaninfo::KrausChannel);

#[pymethods]
impl PyChannel {
    /// Channel from a list of Kraus matrices; they must satisfy Σ K*K = I.
    #[new]
    fn new(kraus: Vec<Rows>) -> PyResult<Self> {
        let ops = kraus.iter().map(to_mat).collect::<PyResult<Vec<_>>>()?;
        let (dout, din) = ops.first().map_or((0, 0), |k| (k.nrows(), k.ncols()));
        chaninfo::KrausChannel::new(din, dout, ops).map(Self).map_err(err)
    }

    #[staticmethod]
    fn identity(d: usize) -> Self {
        Self(chaninfo::KrausChannel::identity(d))
    }

    #[staticmethod]
    fn dephasing(p: f64) -> PyResult<Self> {
        chaninfo::KrausChannel::dephasing(p).map(Self).map_err(err)
    }

    #[staticmethod]
    fn depolarizing(d: usize, p: f64) -> PyResult<Self> {
        chaninfo::KrausChannel::depolarizing(d, p).map(Self).map_err(err)
    }

    #[staticmethod]
    fn erasure(p: f64) -> PyResult<Self> {
        chaninfo::KrausChannel::erasure(p).map(Self).map_err(err)
    }

    #[staticmethod]
    fn amplitude_damping(gamma: f64) -> PyResult<Self> {
        chaninfo::KrausChannel::amplitude_damping(gamma).map(Self).map_err(err)
    }

    #[staticmethod]
    fn random(dim_in: usize, dim_out: usize, n_kraus: usize, seed: u64) -> PyResult<Self> {
        random_channel(dim_in, dim_out, n_kraus, seed).map(Self).map_err(err)
    }

    #[getter]
    fn dim_in(&self) -> usize {
        self.0.dim_in()
    }

    #[getter]
    fn dim_out(&self) -> usize {
        self.0.dim_out()
    }

    fn kraus(&self) -> Vec<Rows> {
        self.0.kraus().iter().map(to_rows).collect()
    }

    fn complement(&self) -> Self {
        Self(self.0.complement())
    }

    fn choi(&self) -> Rows {
        to_rows(&self.0.choi())
    }

    fn apply(&self, rho: &PyState) -> PyResult<PyState> {
        self.0.apply(&rho.0).map(PyState).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("KrausChannel(dim_in={}, dim_out={}, n_kraus={})", self.0.dim_in(), self.0.dim_out(), self.0.n_kraus())
    }
}

#[pyclass(name = "DensityOperator", module = "pychaninfo", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyState(chaninfo::DensityOperator);

#[pymethods]
impl PyState {
    #[new]
    fn new(matrix: Rows) -> PyResult<Self> {
        chaninfo::DensityOperator::from_matrix(to_mat(&matrix)?).map(Self).map_err(err)
    }

    #[staticmethod]
    fn maximally_mixed(d: usize) -> Self {
        Self(chaninfo::DensityOperator::maximally_mixed(d))
    }

    #[staticmethod]
    fn pure(vector: Vec<Complex64>) -> PyResult<Self> {
        chaninfo::DensityOperator::pure(&chaninfo::CVec::from_vec(vector)).map(Self).map_err(err)
    }

    #[staticmethod]
    fn random(d: usize, rank: usize, seed: u64) -> PyResult<Self> {
        if rank == 0 || rank > d {
            return Err(PyValueError::new_err(format!("rank must lie in 1..={d}")));
        }
        Ok(Self(random::density(d, rank, seed)))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn matrix(&self) -> Rows {
        to_rows(self.0.matrix())
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.0.positive().eigenvalues().to_vec()
    }

    fn entropy(&self) -> f64 {
        entropy::entropy_h(self.0.positive())
    }

    fn __repr__(&self) -> String {
        format!("DensityOperator(dim={})", self.0.dim())
    }
}

/// Von Neumann entropy (nats) of a positive matrix, trace not required to be 1.
#[pyfunction]
fn entropy_of(matrix: Rows) -> PyResult<f64> {
    let a = chaninfo::PositiveOperator::from_matrix(to_mat(&matrix)?).map_err(err)?;
    Ok(entropy::entropy_h(&a))
}

/// Relative entropy of positive matrices; `inf` off the support.
#[pyfunction]
fn relative_entropy(a: Rows, b: Rows) -> PyResult<f64> {
    let a = chaninfo::PositiveOperator::from_matrix(to_mat(&a)?).map_err(err)?;
    let b = chaninfo::PositiveOperator::from_matrix(to_mat(&b)?).map_err(err)?;
    Ok(entropy::relative_entropy(&a, &b).map_err(err)?.value)
}

#[pyfunction]
fn mutual_information(phi: &PyChannel, rho: &PyState) -> PyResult<f64> {
    information::mutual_information(&phi.0, &rho.0).map_err(err)
}

#[pyfunction]
fn coherent_information(phi: &PyChannel, rho: &PyState) -> PyResult<f64> {
    information::coherent_information(&phi.0, &rho.0).map_err(err)
}

#[pyfunction]
fn reversibility_gap(phi: &PyChannel, rho: &PyState) -> PyResult<f64> {
    reversibility::reversibility_gap(&phi.0, &rho.0).map_err(err)
}

/// All quantities of the information report as a dict.
#[pyfunction]
fn info_report<'py>(py: Python<'py>, phi: &PyChannel, rho: &PyState) -> PyResult<Bound<'py, PyDict>> {
    let r = information::info_report(&phi.0, &rho.0).map_err(err)?;
    let d = PyDict::new(py);
    for (k, v) in [
        ("mutual", r.mutual),
        ("coherent", r.coherent),
        ("entropy_input", r.entropy_input),
        ("entropy_output", r.entropy_output),
        ("entropy_env", r.entropy_env),
        ("mutual_complement", r.mutual_complement),
        ("coherent_complement", r.coherent_complement),
        ("theorem1_residual", r.theorem1_residual),
        ("corollary1_residual", r.corollary1_residual),
    ] {
        d.set_item(k, v)?;
    }
    Ok(d)
}

fn config(gap_tol: f64, seed: u64) -> OptimizerConfig {
    OptimizerConfig { gap_tol, seed, ..Default::default() }
}

fn result_dict<'py>(py: Python<'py>, r: CapacityResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("duality_gap", r.duality_gap)?;
    d.set_item("iterations", r.iterations)?;
    d.set_item("certified", r.certified)?;
    d.set_item("constraint_slack", r.constraint_slack)?;
    d.set_item("argmax", PyState(r.argmax))?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (phi, gap_tol = 1e-6, seed = 0))]
fn maximize_mutual_info<'py>(py: Python<'py>, phi: &PyChannel, gap_tol: f64, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = capacity::maximize_mutual_info(&phi.0, &config(gap_tol, seed)).map_err(err)?;
    result_dict(py, r)
}

/// Maximum over states with `Tr(H ρ) ≤ energy`; raises `InfeasibleError`
/// below the ground energy.
#[pyfunction]
#[pyo3(signature = (phi, hamiltonian, energy, gap_tol = 1e-6, seed = 0))]
fn maximize_mutual_info_constrained<'py>(
    py: Python<'py>,
    phi: &PyChannel,
    hamiltonian: Rows,
    energy: f64,
    gap_tol: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let h = chaninfo::HermitianOperator::new(to_mat(&hamiltonian)?).map_err(err)?;
    let r = capacity::maximize_mutual_info_constrained(&phi.0, &h, energy, &config(gap_tol, seed)).map_err(err)?;
    result_dict(py, r)
}

#[pyfunction]
#[pyo3(signature = (phi, gap_tol = 1e-6, seed = 0))]
fn maximize_coherent_info<'py>(py: Python<'py>, phi: &PyChannel, gap_tol: f64, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = capacity::maximize_coherent_info(&phi.0, &config(gap_tol, seed)).map_err(err)?;
    result_dict(py, r)
}

/// Runs a property suite; returns `(passed, csv)`.
#[pyfunction]
#[pyo3(signature = (name, seed, count = None, tol = None))]
fn run_suite(py: Python<'_>, name: &str, seed: u64, count: Option<usize>, tol: Option<f64>) -> PyResult<(bool, String)> {
    let count = count.unwrap_or_else(|| suites::default_count(name));
    let report = py.detach(|| suites::run_suite(name, seed, count, tol)).map_err(err)?;
    Ok((report.passed(), report.to_csv()))
}

/// Runs a convergence sweep from a JSON configuration string; returns `(passed, csv)`.
#[pyfunction]
fn run_sweep(py: Python<'_>, name: &str, config_json: &str) -> PyResult<(bool, String)> {
    let cfg = SweepConfig::parse(config_json).map_err(err)?;
    let sweep = py.detach(|| lab::run_sweep(name, &cfg)).map_err(err)?;
    Ok((sweep.passed(), sweep.to_csv()))
}

#[pymodule]
fn pychaninfo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChannel>()?;
    m.add_class::<PyState>()?;
    m.add("InfeasibleError", m.py().get_type::<InfeasibleError>())?;
    m.add("SUITES", suites::SUITES.to_vec())?;
    m.add("SWEEPS", lab::SWEEPS.to_vec())?;
    m.add_function(wrap_pyfunction!(entropy_of, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_information, m)?)?;
    m.add_function(wrap_pyfunction!(reversibility_gap, m)?)?;
    m.add_function(wrap_pyfunction!(info_report, m)?)?;
    m.add_function(wrap_pyfunction!(maximize_mutual_info, m)?)?;
    m.add_function(wrap_pyfunction!(maximize_mutual_info_constrained, m)?)?;
    m.add_function(wrap_pyfunction!(maximize_coherent_info, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let rows = vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]; 3];
        assert_eq!(to_rows(&to_mat(&rows).unwrap()), rows);
    }

    #[test]
    fn ragged_matrices_are_rejected() {
        let rows = vec![vec![Complex64::new(1.0, 0.0)], vec![]];
        assert!(to_mat(&rows).is_err());
        assert!(to_mat(&Vec::new()).is_err());
    }
}

//! Python bindings. Reports are returned as plain dicts decoded from the
//! library's JSON form; complex numbers inside them appear as `[re, im]`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use cxgame::domination::iterated_eliminate;
use cxgame::equalizing::{equalizing_equilibrium, solve_equalizing_system};
use cxgame::io::GameFile;
use cxgame::lp::{build_lcp, lcp_candidate, minimax, verify_lcp};
use cxgame::{Complex, ComplexGame, ComplexMatrix, Method, Side, SolveOptions, StrategyPolytope, Tolerances};

fn to_py_err(e: cxgame::Error) -> PyErr {
    use cxgame::Error::*;
    match e {
        UnsupportedArgument(_)
        | DimensionMismatch { .. }
        | NonFinite(_)
        | Empty(_)
        | IndexOutOfRange { .. }
        | InvalidParameter(_)
        | NotInPolytope => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn tolerances(tol: Option<f64>) -> PyResult<Tolerances> {
    let base = Tolerances::default();
    match tol {
        Some(t) => base.with_eps_val(t).map_err(to_py_err),
        None => Ok(base),
    }
}

/// Zero-sum game with payoff `Re(z* A w)` over sector polytopes.
#[pyclass(name = "Game", frozen, module = "pycxgame")]
pub struct PyGame {
    inner: ComplexGame,
}

#[pymethods]
impl PyGame {
    #[new]
    fn new(matrix: Vec<Vec<Complex>>, alpha: f64, beta: f64) -> PyResult<Self> {
        let a = ComplexMatrix::from_rows(matrix).map_err(to_py_err)?;
        let inner = ComplexGame::new(a, alpha, beta).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// Loads a JSON game file.
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let file = GameFile::load(path).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner = file.to_game().map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<Complex>> {
        self.inner.matrix().to_rows()
    }

    fn payoff(&self, z: Vec<Complex>, w: Vec<Complex>) -> PyResult<f64> {
        self.inner.payoff(&z, &w).map_err(to_py_err)
    }

    #[pyo3(signature = (tol=None))]
    fn classify<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &self.inner.classify(&tolerances(tol)?))
    }

    fn pure_security<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &self.inner.pure_security())
    }

    /// Pure equilibria as pairs of extreme-point labels such as `("e1", "eta(1,2)")`.
    #[pyo3(signature = (tol=None))]
    fn pure_equilibria(&self, tol: Option<f64>) -> PyResult<Vec<(String, String)>> {
        let eqs = self.inner.pure_equilibria(&tolerances(tol)?);
        Ok(eqs
            .into_iter()
            .map(|(i, j)| (i.to_string(), j.to_string()))
            .collect())
    }

    /// Iterated elimination: `(reduced_game, trace_dict)`.
    #[pyo3(signature = (tol=None))]
    fn eliminate<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<(PyGame, Bound<'py, PyAny>)> {
        let (reduced, trace) = iterated_eliminate(&self.inner, &tolerances(tol)?).map_err(to_py_err)?;
        Ok((PyGame { inner: reduced }, to_dict(py, &trace)?))
    }

    #[pyo3(signature = (tol=None))]
    fn equalize<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        let tol = tolerances(tol)?;
        let row = solve_equalizing_system(&self.inner, Side::Row, &tol).map_err(to_py_err)?;
        let column = solve_equalizing_system(&self.inner, Side::Column, &tol).map_err(to_py_err)?;
        let equilibrium = equalizing_equilibrium(&self.inner, &tol).map_err(to_py_err)?;
        to_dict(
            py,
            &serde_json::json!({ "row": row, "column": column, "equilibrium": equilibrium }),
        )
    }

    /// Minimax values by linear programming.
    #[pyo3(signature = (tol=None))]
    fn minimax<'py>(&self, py: Python<'py>, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &minimax(&self.inner, &tolerances(tol)?).map_err(to_py_err)?)
    }

    #[pyo3(signature = (method="auto", tol=None))]
    fn solve<'py>(&self, py: Python<'py>, method: &str, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        let method: Method = method.parse().map_err(to_py_err)?;
        let options = SolveOptions {
            method,
            tol: tolerances(tol)?,
        };
        to_dict(py, &cxgame::solve(&self.inner, &options).map_err(to_py_err)?)
    }

    #[pyo3(signature = (z, w, tol=None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        z: Vec<Complex>,
        w: Vec<Complex>,
        tol: Option<f64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let report = self
            .inner
            .verify_equilibrium(&z, &w, &tolerances(tol)?)
            .map_err(to_py_err)?;
        to_dict(py, &report)
    }

    /// The complementarity instance; with `verify`, also the check of the
    /// candidate built from the LP solution.
    #[pyo3(signature = (verify=false, tol=None))]
    fn lcp<'py>(&self, py: Python<'py>, verify: bool, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        let tol = tolerances(tol)?;
        let inst = build_lcp(&self.inner);
        let report = if verify {
            let lp = minimax(&self.inner, &tol).map_err(to_py_err)?;
            let x = lcp_candidate(&self.inner, &lp, &tol).map_err(to_py_err)?;
            Some(verify_lcp(&inst, &x, &tol).map_err(to_py_err)?)
        } else {
            None
        };
        to_dict(py, &serde_json::json!({ "instance": inst, "report": report }))
    }

    fn affine_transform(&self, k: f64, shift: f64) -> PyResult<PyGame> {
        let inner = self.inner.affine_transform(k, shift).map_err(to_py_err)?;
        Ok(PyGame { inner })
    }

    fn to_json(&self) -> String {
        GameFile::from_game(&self.inner).to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Game(rows={}, cols={}, alpha={}, beta={})",
            self.inner.rows(),
            self.inner.cols(),
            self.inner.alpha(),
            self.inner.beta()
        )
    }
}

/// Extreme points of the polytope of dimension `m` and argument `a0`, as
/// `(label, point)` pairs in canonical order.
#[pyfunction]
fn extreme_points(m: usize, a0: f64) -> PyResult<Vec<(String, Vec<Complex>)>> {
    let poly = StrategyPolytope::new(m, a0).map_err(to_py_err)?;
    Ok(poly
        .extreme_points()
        .into_iter()
        .map(|(i, p)| (i.to_string(), p))
        .collect())
}

/// Convex weights of `z` over the extreme points, as `(label, weight)` pairs.
#[pyfunction]
fn decompose(z: Vec<Complex>, a0: f64) -> PyResult<Vec<(String, f64)>> {
    let poly = StrategyPolytope::new(z.len(), a0).map_err(to_py_err)?;
    let weights = poly.decompose(&z, &Tolerances::default()).map_err(to_py_err)?;
    Ok(weights.iter().map(|(i, w)| (i.to_string(), w)).collect())
}

#[pymodule]
pub fn pycxgame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGame>()?;
    m.add_function(wrap_pyfunction!(extreme_points, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    Ok(())
}

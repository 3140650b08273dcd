//! Python bindings: `import pyquasinv`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quasinv::bipoly::parse_rational_poly;
use quasinv::calogero::{apply_l1, L1Result, L1Value};
use quasinv::cli::{latex_poly, verify, GeneratorSetJson, VerifyOptions, DEFAULT_SEED};
use quasinv::generators::{full_basis, Provenance};
use quasinv::poincare::{hilbert_from_poincare, poincare as poincare_series};
use quasinv::quasi::{check_per_line, quasi_dimension};
use quasinv::{DihedralSystem, RatPoly};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

#[pyclass(name = "DihedralSystem", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PySystem {
    inner: DihedralSystem,
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (mirrors, mult_even = 0, mult_odd = None))]
    fn new(mirrors: u32, mult_even: u32, mult_odd: Option<u32>) -> PyResult<Self> {
        let mult_odd = mult_odd.unwrap_or(if mirrors % 2 == 1 { mult_even } else { 0 });
        DihedralSystem::new(mirrors, mult_even, mult_odd).map(|inner| PySystem { inner }).map_err(value_error)
    }

    /// `I2(2N)` with multiplicities `m` (even lines) and `n` (odd lines).
    #[staticmethod]
    fn even(half: u32, m: u32, n: u32) -> PyResult<Self> {
        DihedralSystem::even(half, m, n).map(|inner| PySystem { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn odd(mirrors: u32, m: u32) -> PyResult<Self> {
        DihedralSystem::odd(mirrors, m).map(|inner| PySystem { inner }).map_err(value_error)
    }

    #[getter]
    fn mirrors(&self) -> u32 {
        self.inner.mirrors
    }

    #[getter]
    fn mult_even(&self) -> u32 {
        self.inner.mult_even
    }

    #[getter]
    fn mult_odd(&self) -> u32 {
        self.inner.mult_odd
    }

    fn group_order(&self) -> u32 {
        self.inner.group_order()
    }

    fn __repr__(&self) -> String {
        format!(
            "DihedralSystem(mirrors={}, mult_even={}, mult_odd={})",
            self.inner.mirrors, self.inner.mult_even, self.inner.mult_odd
        )
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Polynomial in `z`, `zb` with rational coefficients.
#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPoly {
    inner: RatPoly,
}

#[pymethods]
impl PyPoly {
    /// Parses the canonical text form (`1*z^3*zb^0 + 3*z^1*zb^2`) or a looser one (`z^3 + 3*z*zb^2`).
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_rational_poly(text).map(|inner| PyPoly { inner }).map_err(value_error)
    }

    /// `(z, zb, "num/den")` per term, in canonical order.
    fn terms(&self) -> Vec<(u32, u32, String)> {
        self.inner.terms().map(|(m, c)| (m.z, m.zb, quasinv::scalars::format_rational(c))).collect()
    }

    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn bar(&self) -> Self {
        PyPoly { inner: self.inner.bar_conjugate() }
    }

    fn latex(&self) -> String {
        latex_poly(&self.inner)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPoly { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyPoly { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPoly { inner: &self.inner * &other.inner }
    }

    fn __neg__(&self) -> Self {
        PyPoly { inner: self.inner.neg() }
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Self {
        PyPoly { inner: self.inner.powi(e) }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }
}

#[pyfunction]
fn poincare(system: &PySystem) -> String {
    poincare_series(&system.inner).to_text()
}

/// Dense coefficients of the Poincare polynomial.
#[pyfunction]
fn poincare_coefficients(system: &PySystem) -> Vec<u64> {
    let p = poincare_series(&system.inner);
    p.dense(p.top_degree().unwrap_or(0))
}

/// Hilbert series coefficients for degrees `0..=max_degree`.
#[pyfunction]
fn hilbert(system: &PySystem, max_degree: u32) -> Vec<u64> {
    let sys = &system.inner;
    hilbert_from_poincare(&poincare_series(sys), sys.mirrors, max_degree).dense(max_degree)
}

#[pyfunction]
fn dim(system: &PySystem, degree: u32) -> usize {
    quasi_dimension(&system.inner, degree)
}

#[pyfunction]
fn is_quasi_invariant(system: &PySystem, poly: &PyPoly) -> bool {
    check_per_line(&system.inner, &poly.inner).ok
}

/// The per-line report as JSON.
#[pyfunction]
fn check(system: &PySystem, poly: &PyPoly) -> String {
    to_json(&check_per_line(&system.inner, &poly.inner))
}

fn provenance(method: &str) -> PyResult<Provenance> {
    match method {
        "solve" => Ok(Provenance::Solver),
        "det" => Ok(Provenance::Determinant),
        other => Err(PyValueError::new_err(format!("unknown method {other:?}, expected 'solve' or 'det'"))),
    }
}

/// `(name, degree, poly)` per generator of the free basis.
#[pyfunction]
#[pyo3(signature = (system, method = "solve"))]
fn generators(system: &PySystem, method: &str) -> PyResult<Vec<(String, u32, PyPoly)>> {
    let gens = full_basis(&system.inner, provenance(method)?).map_err(value_error)?;
    Ok(gens.entries.into_iter().map(|g| (g.name(), g.degree, PyPoly { inner: g.poly })).collect())
}

#[pyfunction]
#[pyo3(signature = (system, method = "solve"))]
fn generators_json(system: &PySystem, method: &str) -> PyResult<String> {
    let gens = full_basis(&system.inner, provenance(method)?).map_err(value_error)?;
    Ok(to_json(&GeneratorSetJson::from_set(&gens)))
}

/// `L1 poly`. Raises `ValueError` when the image is not a polynomial or
/// has irrational coefficients.
#[pyfunction]
fn l1(system: &PySystem, poly: &PyPoly) -> PyResult<PyPoly> {
    match apply_l1(&system.inner, &poly.inner) {
        L1Result::Polynomial(L1Value::Rational(p)) => Ok(PyPoly { inner: p }),
        L1Result::Polynomial(L1Value::Cyclotomic(p)) => {
            Err(PyValueError::new_err(format!("image has irrational coefficients: {p}")))
        }
        L1Result::NonPolynomial(lines) => {
            Err(PyValueError::new_err(format!("image has poles on lines {lines:?}")))
        }
    }
}

/// Runs every applicable check. Returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (system, seed = DEFAULT_SEED, trials = 200))]
fn verify_system(system: &PySystem, seed: u64, trials: usize) -> PyResult<(bool, String)> {
    let opts = VerifyOptions { seed, trials, ..VerifyOptions::default() };
    let report = verify(&system.inner, opts).map_err(value_error)?;
    Ok((report.passed(), to_json(&report)))
}

#[pymodule]
pub fn pyquasinv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(poincare_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(dim, m)?)?;
    m.add_function(wrap_pyfunction!(is_quasi_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(generators_json, m)?)?;
    m.add_function(wrap_pyfunction!(l1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_system, m)?)?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    Ok(())
}

//! Python module `pywzproof`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use wzproof::catalog::{self, Grid, VerificationReport};
use wzproof::conjecture::{self, default_degree_bound, GForm};
use wzproof::paths::{self, LatticePath, PathPair};
use wzproof::poly::{parse_poly, MultiPoly};
use wzproof::wz::{self, lookup_certificate};
use wzproof::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NotFound(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_path(src: &str) -> PyResult<LatticePath> {
    src.parse().map_err(py_err)
}

#[pyfunction]
fn binom(n: i64, k: i64) -> BigInt {
    wzproof::arith::binom(n, k)
}

/// Coefficients of the Gaussian binomial `[n, k]_q`, lowest degree first.
#[pyfunction]
fn q_binom(n: i64, k: i64) -> Vec<BigInt> {
    wzproof::arith::q_binom(n, k).coeffs().to_vec()
}

/// Exact multivariate polynomial with rational coefficients.
#[pyclass(name = "Poly", frozen)]
struct PyPoly(MultiPoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        parse_poly(src).map(PyPoly).map_err(py_err)
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.used_vars()
    }

    fn eval(&self, values: HashMap<String, BigRational>) -> PyResult<BigRational> {
        self.0.eval_with(|v| values.get(v).cloned()).map_err(py_err)
    }

    fn shift(&self, var: &str, delta: i64) -> PyPoly {
        PyPoly(self.0.shift(var, delta))
    }

    fn is_symmetric(&self) -> bool {
        wzproof::poly::is_symmetric_abc(&self.0)
    }

    /// The polynomial in `e1, e2, e3` if it is symmetric in `a, b, c`.
    fn to_elementary(&self) -> PyResult<String> {
        wzproof::poly::to_elementary(&self.0).map(|e| e.to_string()).map_err(py_err)
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        PyPoly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly(-&self.0)
    }

    fn __eq__(&self, other: &PyPoly) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// Outcome of checking an identity over a grid.
#[pyclass(name = "Report", frozen, get_all)]
struct PyReport {
    id: String,
    grid: String,
    cases_checked: usize,
    skipped: usize,
    /// `(assignment, lhs, rhs)` for every failing point.
    failures: Vec<(String, String, String)>,
}

#[pymethods]
impl PyReport {
    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(id='{}', grid='{}', cases_checked={}, skipped={}, failures={})",
            self.id,
            self.grid,
            self.cases_checked,
            self.skipped,
            self.failures.len()
        )
    }
}

impl From<VerificationReport> for PyReport {
    fn from(r: VerificationReport) -> Self {
        PyReport {
            id: r.id,
            grid: r.grid,
            cases_checked: r.cases_checked,
            skipped: r.skipped,
            failures: r.failures.into_iter().map(|f| (f.assignment, f.lhs, f.rhs)).collect(),
        }
    }
}

fn parse_grid(grid: Option<&str>) -> PyResult<Option<Grid>> {
    grid.map(Grid::parse).transpose().map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (id, grid=None))]
fn verify(py: Python<'_>, id: &str, grid: Option<&str>) -> PyResult<PyReport> {
    let grid = parse_grid(grid)?;
    py.detach(|| catalog::verify(id, grid.as_ref())).map(PyReport::from).map_err(py_err)
}

#[pyfunction]
fn list_identities() -> Vec<String> {
    catalog::registry().iter().map(|r| r.id.clone()).collect()
}

#[pyfunction]
fn list_certificates() -> Vec<String> {
    wz::CERTIFICATE_IDS.iter().map(|s| s.to_string()).collect()
}

/// Symbolic check of a registered certificate; `scale` multiplies its
/// multiplier first.
#[pyfunction]
#[pyo3(signature = (id, scale=1))]
fn check_certificate(id: &str, scale: i64) -> PyResult<bool> {
    let cert = lookup_certificate(id).map_err(py_err)?;
    let cert = if scale == 1 { cert } else { cert.scaled(scale) };
    Ok(wz::check_certificate(&cert))
}

/// Exact telescoping sums at `count` sampled configurations; returns whether
/// each matched its boundary value.
#[pyfunction]
#[pyo3(signature = (id, count=20, seed=0))]
fn spot_check(id: &str, count: usize, seed: u64) -> PyResult<Vec<bool>> {
    use rand::SeedableRng;
    let cert = lookup_certificate(id).map_err(py_err)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let reports = wz::spot_checks(&cert, count, &mut rng).map_err(py_err)?;
    Ok(reports.into_iter().map(|(_, r)| r.matched).collect())
}

#[pyfunction]
fn enumerate_x(n: usize) -> Vec<String> {
    paths::enumerate_x(n).iter().map(ToString::to_string).collect()
}

#[pyfunction]
fn enumerate_y(n: usize) -> Vec<(String, String)> {
    paths::enumerate_y(n).iter().map(|p| (p.first.to_string(), p.second.to_string())).collect()
}

#[pyfunction]
fn phi(path: &str, n: usize) -> PyResult<(String, String)> {
    let p = parse_path(path)?;
    let pair = paths::phi(&p, n).ok_or_else(|| PyValueError::new_err(format!("{path} is not in X_{n}")))?;
    Ok((pair.first.to_string(), pair.second.to_string()))
}

#[pyfunction]
fn phi_inverse(first: &str, second: &str) -> PyResult<String> {
    let pair = PathPair { first: parse_path(first)?, second: parse_path(second)? };
    paths::phi_inverse(&pair)
        .map(|p| p.to_string())
        .ok_or_else(|| PyValueError::new_err(format!("({first}, {second}) is not in the image")))
}

#[pyfunction]
fn count_ne_below_diagonal(n: i64, k: i64) -> PyResult<BigInt> {
    paths::count_ne_below_diagonal(n, k).map_err(py_err)
}

/// `f_0, ..., f_{r_max}` in the elementary basis (`None` where not symmetric).
#[pyfunction]
fn iterate_l(r_max: usize) -> Vec<Option<String>> {
    conjecture::iterate_l(r_max).into_iter().map(|it| it.f_in_e.map(|e| e.to_string())).collect()
}

#[pyfunction]
fn s_r(r: u32, a: i64, b: i64, c: i64) -> BigInt {
    conjecture::s_r(r, a, b, c)
}

#[pyfunction]
#[pyo3(signature = (r, degree_bound=None))]
fn fit_g(py: Python<'_>, r: usize, degree_bound: Option<u32>) -> PyResult<String> {
    let f = conjecture::iterate_l(r)
        .pop()
        .and_then(|it| it.f_in_e)
        .ok_or_else(|| py_err(Error::NotSymmetric))?;
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(r));
    py.detach(|| conjecture::fit_g(r, &f, bound)).map(|g| g.to_string()).map_err(py_err)
}

/// Checks the conjectured closed form for `S_r`; `g` defaults to the table
/// entry for `r <= 3`.
#[pyfunction]
#[pyo3(signature = (r, g=None, grid=None))]
fn verify_conjecture(py: Python<'_>, r: usize, g: Option<&str>, grid: Option<&str>) -> PyResult<PyReport> {
    let g = g.map(GForm::parse).transpose().map_err(py_err)?;
    let grid = parse_grid(grid)?.unwrap_or_else(|| Grid::uniform(&["a", "b", "c"], 1, 4));
    py.detach(|| conjecture::verify_conjecture(r, g.as_ref(), &grid))
        .map(PyReport::from)
        .map_err(py_err)
}

#[pymodule]
fn pywzproof(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(binom, m)?)?;
    m.add_function(wrap_pyfunction!(q_binom, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(list_identities, m)?)?;
    m.add_function(wrap_pyfunction!(list_certificates, m)?)?;
    m.add_function(wrap_pyfunction!(check_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(spot_check, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_x, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_y, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(count_ne_below_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(iterate_l, m)?)?;
    m.add_function(wrap_pyfunction!(s_r, m)?)?;
    m.add_function(wrap_pyfunction!(fit_g, m)?)?;
    m.add_function(wrap_pyfunction!(verify_conjecture, m)?)?;
    Ok(())
}

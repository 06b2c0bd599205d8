//! Python module `aac`.

use std::collections::BTreeMap;

use aac_core::congruences::{aac_conjecture_scan as core_aac_scan, CongruenceReport, PrimeContext, Statement};
use aac_core::cyclotomic::gauss_sum as core_gauss_sum;
use aac_core::error::Error;
use aac_core::gaac::{count_squarefree_n2m1 as core_count, gaac_check as core_gaac_check, gaac_scan as core_gaac_scan};
use aac_core::modmath::PrimeModulus;
use aac_core::padiclog;
use aac_core::precision::Precision;
use aac_core::quadfield;
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(aac, AacError, PyValueError);

fn err(e: Error) -> PyErr {
    AacError::new_err(e.to_string())
}

fn prime(p: u64) -> PyResult<PrimeModulus> {
    PrimeModulus::new(p).map_err(err)
}

#[pyclass(name = "CongruenceReport", frozen, get_all)]
struct PyReport {
    stmt: String,
    p: u64,
    params: BTreeMap<String, String>,
    lhs: u64,
    rhs: u64,
    holds: bool,
    notes: Vec<String>,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "CongruenceReport(stmt={:?}, p={}, lhs={}, rhs={}, holds={})",
            self.stmt,
            self.p,
            self.lhs,
            self.rhs,
            if self.holds { "True" } else { "False" }
        )
    }
}

impl From<CongruenceReport> for PyReport {
    fn from(r: CongruenceReport) -> Self {
        PyReport {
            stmt: r.stmt.id().to_string(),
            p: r.p,
            params: r.params,
            lhs: r.lhs,
            rhs: r.rhs,
            holds: r.holds,
            notes: r.notes,
        }
    }
}

fn need<T>(v: Option<T>, name: &str) -> PyResult<T> {
    v.ok_or_else(|| PyValueError::new_err(format!("missing argument '{name}'")))
}

/// Check one congruence. `stmt` is a statement id such as "AAC_EQ2",
/// "thm51" (both parts) or "cor53".
#[pyfunction]
#[pyo3(signature = (stmt, p, m=None, n=None, big_m=None, r=None, abar=None, bbar=None, a=None, b=None))]
#[allow(clippy::too_many_arguments)]
fn verify(
    stmt: &str,
    p: u64,
    m: Option<u64>,
    n: Option<u64>,
    big_m: Option<BigInt>,
    r: Option<BigInt>,
    abar: Option<BigInt>,
    bbar: Option<BigInt>,
    a: Option<Vec<BigInt>>,
    b: Option<Vec<BigInt>>,
) -> PyResult<Vec<PyReport>> {
    let ctx = PrimeContext::for_prime(p).map_err(err)?;
    let st = if stmt.eq_ignore_ascii_case("thm51") {
        Statement::Thm51R
    } else {
        stmt.parse::<Statement>().map_err(PyValueError::new_err)?
    };
    let reports = match st {
        Statement::AacEq2 => vec![ctx.verify_aac()],
        Statement::Thm21 => vec![ctx.verify_thm21(&need(a, "a")?, &need(b, "b")?)],
        Statement::Thm51R | Statement::Thm51N => match ctx.verify_thm51(need(m, "m")?) {
            Ok((x, y)) => vec![Ok(x), Ok(y)],
            Err(e) => vec![Err(e)],
        },
        Statement::Cor53 => vec![ctx.verify_cor53(need(m, "m")?)],
        Statement::Thm54 => {
            let big_m = big_m.or(m.map(BigInt::from));
            vec![ctx.verify_thm54(&need(big_m, "big_m")?)]
        }
        Statement::Eisenstein => vec![ctx.verify_eisenstein()],
        Statement::GenEisenstein => vec![ctx.verify_gen_eisenstein(need(m, "m")?)],
        Statement::Thm56 => vec![ctx.verify_thm56(&need(r, "r")?, &need(abar, "abar")?, &need(bbar, "bbar")?)],
        Statement::Aac1952 => vec![ctx.verify_aac1952(need(n, "n")?)],
    };
    reports.into_iter().map(|r| r.map(PyReport::from).map_err(err)).collect()
}

/// `(a0, period)` with `√d = [a0; period...]`.
#[pyfunction]
fn cf_sqrt(d: u64) -> PyResult<(u64, Vec<u64>)> {
    let cf = quadfield::cf_sqrt(d).map_err(err)?;
    Ok((cf.a0, cf.period))
}

/// Least positive `(u, v)` with `u² − d·v² = 1`.
#[pyfunction]
fn pell_min_solution(d: u64) -> PyResult<(BigInt, BigInt)> {
    let s = quadfield::pell_min_solution(d).map_err(err)?;
    Ok((s.u1, s.v1))
}

/// `(t, u, norm)` with `ε = (t + u√Δ)/2` the fundamental unit of discriminant `disc`.
#[pyfunction]
fn unit_of_discriminant(disc: u64) -> PyResult<(BigInt, BigInt, i8)> {
    let u = quadfield::unit_of_discriminant(disc).map_err(err)?;
    Ok((u.t, u.u, u.norm_sign))
}

/// `log ε` for the fundamental unit of discriminant `disc`.
#[pyfunction]
fn regulator(disc: u64) -> PyResult<f64> {
    quadfield::regulator(&quadfield::unit_of_discriminant(disc).map_err(err)?).map_err(err)
}

/// Number of proper classes of primitive forms of discriminant `disc`.
#[pyfunction]
#[pyo3(signature = (disc, wide=false))]
fn form_class_number(disc: u64, wide: bool) -> PyResult<u64> {
    if wide {
        quadfield::form_class_number_wide(disc)
    } else {
        quadfield::form_class_number(disc)
    }
    .map_err(err)
}

/// Analytic class number of a fundamental discriminant.
#[pyfunction]
#[pyo3(signature = (disc, precision=None))]
fn class_number_dirichlet(disc: u64, precision: Option<&str>) -> PyResult<u64> {
    match precision {
        None => quadfield::class_number_dirichlet(disc).map_err(err),
        Some(s) => {
            let pr: Precision = s.parse().map_err(|e: String| PyValueError::new_err(e))?;
            Ok(quadfield::class_number_dirichlet_with(disc, pr).map_err(err)?.h)
        }
    }
}

/// `log(1 + z)` in ℤ_p, reduced mod `p^k`.
#[pyfunction]
fn padic_log_1plus(z: BigInt, p: u64, k: u32) -> PyResult<BigInt> {
    padiclog::padic_log_1plus(&z, prime(p)?, k).map_err(err)
}

/// p-adic logarithm of a unit `a`, mod `p^k`.
#[pyfunction]
fn padic_log_unit(a: BigInt, p: u64, k: u32) -> PyResult<BigInt> {
    padiclog::padic_log_unit(&a, prime(p)?, k).map_err(err)
}

/// Coefficients of the Gauss sum `Σ (a/p) ζ^a` in the basis `1, ζ, …, ζ^{p−2}`.
#[pyfunction]
fn gauss_sum(p: u64) -> PyResult<Vec<BigInt>> {
    Ok(core_gauss_sum(prime(p)?).map_err(err)?.coeffs().to_vec())
}

/// `(p, u mod p, flagged)` for each prime `p ≡ 1 (mod 4)` up to `p_max`.
#[pyfunction]
fn aac_conjecture_scan(py: Python<'_>, p_max: u64) -> PyResult<Vec<(u64, u64, bool)>> {
    let entries = py.detach(|| core_aac_scan(p_max)).map_err(err)?;
    Ok(entries.into_iter().map(|e| (e.p, e.u_mod_p, e.flagged)).collect())
}

/// `(holds, v1 mod D, h(4D))`.
#[pyfunction]
fn gaac_check(d: u64) -> PyResult<(bool, u64, u64)> {
    let v = core_gaac_check(d).map_err(err)?;
    Ok((v.holds, v.v1_mod_d, v.h4d))
}

/// Values of `D` in `[d_min, d_max]` where the generalized conjecture fails.
#[pyfunction]
fn gaac_counterexamples(py: Python<'_>, d_min: u64, d_max: u64) -> PyResult<Vec<u64>> {
    let verdicts = py.detach(|| core_gaac_scan(d_min, d_max)).map_err(err)?;
    Ok(verdicts.into_iter().filter(|v| !v.holds).map(|v| v.d).collect())
}

/// `(count, partial Euler product)` for `n ≤ x` with `n² − 1` squarefree.
#[pyfunction]
fn count_squarefree_n2m1(x: u64) -> PyResult<(u64, f64)> {
    let c = core_count(x).map_err(err)?;
    Ok((c.count, c.partial_constant))
}

#[pymodule]
fn aac(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AacError", m.py().get_type::<AacError>())?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(cf_sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(pell_min_solution, m)?)?;
    m.add_function(wrap_pyfunction!(unit_of_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(regulator, m)?)?;
    m.add_function(wrap_pyfunction!(form_class_number, m)?)?;
    m.add_function(wrap_pyfunction!(class_number_dirichlet, m)?)?;
    m.add_function(wrap_pyfunction!(padic_log_1plus, m)?)?;
    m.add_function(wrap_pyfunction!(padic_log_unit, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(aac_conjecture_scan, m)?)?;
    m.add_function(wrap_pyfunction!(gaac_check, m)?)?;
    m.add_function(wrap_pyfunction!(gaac_counterexamples, m)?)?;
    m.add_function(wrap_pyfunction!(count_squarefree_n2m1, m)?)?;
    Ok(())
}

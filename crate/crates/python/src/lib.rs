use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use eisentool::checks::{self, Options};
use eisentool::{disc, roots, zoo, Error};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::UnknownName(_) | Error::InvalidConfig(_) | Error::NotPositiveDefinite => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (_, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

/// Gram matrix of a lattice expression, entries as `(a, b)` for `a + b*w`.
#[pyfunction]
fn gram(expr: &str) -> PyResult<Vec<Vec<(i64, i64)>>> {
    let l = zoo::make(expr).map_err(to_py_err)?;
    let g = l.gram();
    Ok((0..g.rows).map(|i| (0..g.cols).map(|j| (g[(i, j)].a, g[(i, j)].b)).collect()).collect())
}

/// Discriminant module order, form description and F3/F4 ranks.
#[pyfunction]
fn disc_form<'py>(py: Python<'py>, expr: &str) -> PyResult<Bound<'py, PyDict>> {
    let l = zoo::make(expr).map_err(to_py_err)?;
    let f = disc::disc_form(&l).map_err(to_py_err)?;
    let d = PyDict::new(py);
    d.set_item("order", f.order())?;
    d.set_item("form", f.describe())?;
    d.set_item("f3_signs", f.f3_signs.clone())?;
    d.set_item("f4_rank", f.f4_rank())?;
    Ok(d)
}

/// Number of vectors of the given norm in a positive definite lattice.
#[pyfunction]
fn short_vector_count(expr: &str, norm: i64) -> PyResult<usize> {
    let l = zoo::make(expr).map_err(to_py_err)?;
    Ok(roots::short_vectors(&l, norm).map_err(to_py_err)?.len())
}

/// Order of the group generated by triflections.
#[pyfunction]
#[pyo3(signature = (expr, cap=None))]
fn triflection_group_order(py: Python<'_>, expr: &str, cap: Option<usize>) -> PyResult<usize> {
    let l = zoo::make(expr).map_err(to_py_err)?;
    let cap = cap.unwrap_or_else(roots::closure_cap);
    py.detach(|| roots::triflection_group(&l, cap).map(|g| g.len())).map_err(to_py_err)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    checks::CHECK_IDS.to_vec()
}

/// Runs one verification check and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (check, seed=0, trials=10_000))]
fn verify<'py>(py: Python<'py>, check: &str, seed: u64, trials: usize) -> PyResult<Bound<'py, PyAny>> {
    if !checks::is_check(check) {
        return Err(PyValueError::new_err(format!("unknown check {check:?}")));
    }
    let opts = Options { seed, trials, ..Options::default() };
    let report = py.detach(|| checks::run(check, &opts)).map_err(to_py_err)?;
    let v: Value = serde_json::from_str(&report.to_json()).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

#[pymodule]
fn eisentool_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(disc_form, m)?)?;
    m.add_function(wrap_pyfunction!(short_vector_count, m)?)?;
    m.add_function(wrap_pyfunction!(triflection_group_order, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

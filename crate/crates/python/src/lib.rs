//! Python bindings for `goint_core`.
//!
//! Capacities are built from a list of point labels plus per-point
//! parameters; functions are passed as lists of values in point order.
//! Reports come back as plain dictionaries.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use goint_core::grouping::{check_gpg_functional, LevelProfile};
use goint_core::overlap_ops::{
    check_t_norm as core_check_t_norm, check_t_overlap as core_check_t_overlap,
};
use goint_core::verify::{
    brute_force_go as core_brute_force_go, run_theorem1_suite, GridSpec, DEFAULT_SIZES,
};
use goint_core::{
    BinaryOperator, CapacitySpec, Distortion, FiniteSpace, FuzzyFunction, GpgFunctional,
    IntegralConfig, IntegralKind, LambdaSpec,
};

fn value_error(e: goint_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

trait OrValueError<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrValueError<T> for goint_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(value_error)
    }
}

fn to_py_dict<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = goint_core::cli::to_json(value);
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A capacity on a labelled finite space.
#[pyclass(frozen, module = "goint")]
pub struct Capacity {
    inner: goint_core::Capacity,
}

impl Capacity {
    fn build(points: Vec<String>, spec: CapacitySpec) -> PyResult<Self> {
        let space = FiniteSpace::new(points).py()?;
        Ok(Self {
            inner: goint_core::Capacity::build(&space, spec).py()?,
        })
    }

    fn function(&self, values: Vec<f64>) -> PyResult<FuzzyFunction> {
        FuzzyFunction::new(self.inner.space(), values).py()
    }
}

#[pymethods]
impl Capacity {
    /// Every subset as a list of labels with its value.
    #[staticmethod]
    fn table(points: Vec<String>, entries: Vec<(Vec<String>, f64)>) -> PyResult<Self> {
        let space = FiniteSpace::new(points.clone()).py()?;
        let entries = entries
            .into_iter()
            .map(|(labels, v)| Ok((space.subset_of_labels(&labels).py()?, v)))
            .collect::<PyResult<Vec<_>>>()?;
        Self::build(points, CapacitySpec::Table(entries))
    }

    #[staticmethod]
    fn possibility(points: Vec<String>, densities: Vec<f64>) -> PyResult<Self> {
        Self::build(points, CapacitySpec::Possibility(densities))
    }

    #[staticmethod]
    fn additive(points: Vec<String>, weights: Vec<f64>) -> PyResult<Self> {
        Self::build(points, CapacitySpec::Additive(weights))
    }

    /// λ is solved from the densities unless given.
    #[staticmethod]
    #[pyo3(signature = (points, densities, lam=None))]
    fn sugeno_lambda(points: Vec<String>, densities: Vec<f64>, lam: Option<f64>) -> PyResult<Self> {
        let lambda = lam.map_or(LambdaSpec::Auto, LambdaSpec::Value);
        Self::build(points, CapacitySpec::SugenoLambda { densities, lambda })
    }

    /// `ν(A) = (Σ_{x∈A} w_x)^p`.
    #[staticmethod]
    fn distorted_power(points: Vec<String>, weights: Vec<f64>, p: f64) -> PyResult<Self> {
        let distortion = Distortion::power(p).py()?;
        Self::build(
            points,
            CapacitySpec::Distorted {
                weights,
                distortion,
            },
        )
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.inner.space().labels().to_vec()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn lam(&self) -> Option<f64> {
        self.inner.lambda()
    }

    fn value(&self, labels: Vec<String>) -> PyResult<f64> {
        let subset = self.inner.space().subset_of_labels(&labels).py()?;
        Ok(self.inner.value(subset))
    }

    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py_dict(py, &self.inner.validate())
    }

    fn __repr__(&self) -> String {
        format!(
            "Capacity(kind={:?}, points={:?})",
            self.kind(),
            self.points()
        )
    }
}

fn parse_op(desc: &str) -> PyResult<BinaryOperator> {
    desc.parse().py()
}

fn parse_gpg(desc: &str) -> PyResult<GpgFunctional> {
    desc.parse().py()
}

fn evaluate(
    kind: IntegralKind,
    capacity: &Capacity,
    values: Vec<f64>,
    resolution: Option<usize>,
) -> PyResult<f64> {
    let f = capacity.function(values)?;
    let mut config = IntegralConfig::new(kind).py()?;
    if let Some(n) = resolution {
        config = config.with_kernel_resolution(n);
    }
    Ok(config.evaluate(&capacity.inner, &f).py()?.value)
}

#[pyfunction]
fn sugeno(capacity: &Capacity, values: Vec<f64>) -> PyResult<f64> {
    evaluate(IntegralKind::Sugeno, capacity, values, None)
}

#[pyfunction]
fn choquet(capacity: &Capacity, values: Vec<f64>) -> PyResult<f64> {
    evaluate(IntegralKind::Choquet, capacity, values, None)
}

#[pyfunction]
#[pyo3(signature = (capacity, values, t_norm="product"))]
fn t_normed(capacity: &Capacity, values: Vec<f64>, t_norm: &str) -> PyResult<f64> {
    let t_norm = parse_op(t_norm)?;
    evaluate(IntegralKind::TNormed { t_norm }, capacity, values, None)
}

/// GO-integral with operators given as descriptors, e.g. `"power_product:p=2"`, `"kernel:beta=1"`.
#[pyfunction]
#[pyo3(signature = (capacity, values, overlap="min", gpg="max", resolution=None))]
fn go(
    capacity: &Capacity,
    values: Vec<f64>,
    overlap: &str,
    gpg: &str,
    resolution: Option<usize>,
) -> PyResult<f64> {
    let kind = IntegralKind::Go {
        overlap: parse_op(overlap)?,
        gpg: parse_gpg(gpg)?,
    };
    evaluate(kind, capacity, values, resolution)
}

/// Definition-level evaluation on a threshold grid.
#[pyfunction]
#[pyo3(signature = (capacity, values, overlap="min", gpg="max", step=1e-4))]
fn brute_force_go(
    capacity: &Capacity,
    values: Vec<f64>,
    overlap: &str,
    gpg: &str,
    step: f64,
) -> PyResult<f64> {
    let f = capacity.function(values)?;
    let grid = GridSpec::new(step, true).py()?;
    core_brute_force_go(
        &capacity.inner,
        &f,
        &parse_op(overlap)?,
        &parse_gpg(gpg)?,
        &grid,
    )
    .py()
}

/// Breakpoints and plateau capacities `[(w_i, c_i), …]`.
#[pyfunction]
#[pyo3(signature = (capacity, values, overlap="min"))]
fn level_profile(
    capacity: &Capacity,
    values: Vec<f64>,
    overlap: &str,
) -> PyResult<Vec<(f64, f64)>> {
    let f = capacity.function(values)?;
    let m = LevelProfile::build(&capacity.inner, &f, parse_op(overlap)?).py()?;
    Ok(m.segments()
        .iter()
        .map(|s| (s.breakpoint, s.capacity))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (operator, grid=100))]
fn check_t_overlap(py: Python<'_>, operator: &str, grid: usize) -> PyResult<Py<PyAny>> {
    to_py_dict(py, &core_check_t_overlap(&parse_op(operator)?, grid).py()?)
}

#[pyfunction]
#[pyo3(signature = (operator, grid=100))]
fn check_t_norm(py: Python<'_>, operator: &str, grid: usize) -> PyResult<Py<PyAny>> {
    to_py_dict(py, &core_check_t_norm(&parse_op(operator)?, grid).py()?)
}

#[pyfunction]
#[pyo3(signature = (gpg, trials=500, seed=0))]
fn check_gpg(py: Python<'_>, gpg: &str, trials: usize, seed: u64) -> PyResult<Py<PyAny>> {
    to_py_dict(py, &check_gpg_functional(&parse_gpg(gpg)?, trials, seed))
}

/// Boundary and monotonicity suite for `GO(overlap, gpg)`.
#[pyfunction]
#[pyo3(signature = (overlap="min", gpg="max", trials=1000, seed=0))]
fn monotonicity_suite(
    py: Python<'_>,
    overlap: &str,
    gpg: &str,
    trials: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let config = IntegralConfig::go(parse_op(overlap)?, parse_gpg(gpg)?).py()?;
    let report = py
        .detach(|| run_theorem1_suite(&config, &DEFAULT_SIZES, trials, seed))
        .py()?;
    to_py_dict(py, &report)
}

#[pymodule]
pub fn goint(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Capacity>()?;
    m.add_function(wrap_pyfunction!(sugeno, m)?)?;
    m.add_function(wrap_pyfunction!(choquet, m)?)?;
    m.add_function(wrap_pyfunction!(t_normed, m)?)?;
    m.add_function(wrap_pyfunction!(go, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_go, m)?)?;
    m.add_function(wrap_pyfunction!(level_profile, m)?)?;
    m.add_function(wrap_pyfunction!(check_t_overlap, m)?)?;
    m.add_function(wrap_pyfunction!(check_t_norm, m)?)?;
    m.add_function(wrap_pyfunction!(check_gpg, m)?)?;
    m.add_function(wrap_pyfunction!(monotonicity_suite, m)?)?;
    Ok(())
}

//! Python bindings for `schreier_core`.
//!
//! Counts come back as Python `int` (exact). Functions that take a set
//! accept either a `FiniteSet` or any iterable of positive integers.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use schreier_core::bijections::{self, PartitionKind};
use schreier_core::closed_forms;
use schreier_core::enumeration::{self, Strategy};
use schreier_core::finite_set::{self as sets, Element};
use schreier_core::partial_sums::{self, Seq};
use schreier_core::verify::{self, Suite, VerifyConfig};
use schreier_core::{Count, Error};

create_exception!(schreier, SizeLimitError, PyValueError);

fn convert(e: Error) -> PyErr {
    match e {
        Error::SizeLimit { .. } => SizeLimitError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for schreier_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(convert)
    }
}

/// A finite set of positive integers, stored in ascending order.
#[pyclass(
    name = "FiniteSet",
    module = "schreier",
    frozen,
    eq,
    ord,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyFiniteSet(sets::FiniteSet);

#[pymethods]
impl PyFiniteSet {
    #[new]
    #[pyo3(signature = (elements=Vec::new()))]
    fn new(elements: Vec<Element>) -> PyResult<Self> {
        sets::FiniteSet::from_unsorted(elements)
            .py()
            .map(PyFiniteSet)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse::<sets::FiniteSet>().py().map(PyFiniteSet)
    }

    fn elements(&self) -> Vec<Element> {
        self.0.elements().to_vec()
    }

    fn min(&self) -> Option<Element> {
        sets::FiniteSet::min(&self.0)
    }

    fn max(&self) -> Option<Element> {
        sets::FiniteSet::max(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, x: Element) -> bool {
        self.0.contains(x)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FiniteSet({})", self.0)
    }
}

fn to_set(obj: &Bound<'_, PyAny>) -> PyResult<sets::FiniteSet> {
    if let Ok(set) = obj.extract::<PyRef<'_, PyFiniteSet>>() {
        return Ok(set.0.clone());
    }
    let elements: Vec<Element> = obj.extract()?;
    sets::FiniteSet::from_unsorted(elements).py()
}

fn wrap(list: Vec<sets::FiniteSet>) -> Vec<PyFiniteSet> {
    list.into_iter().map(PyFiniteSet).collect()
}

fn seq(values: Vec<BigInt>) -> Seq {
    Seq::new(values)
}

fn strategy(name: &str) -> PyResult<Strategy> {
    match name {
        "naive" => Ok(Strategy::Naive),
        "by_min" => Ok(Strategy::ByMin),
        other => Err(PyValueError::new_err(format!("unknown strategy {other:?}"))),
    }
}

/// F_n with F_0 = 0.
#[pyfunction]
fn fib(n: usize) -> Count {
    schreier_core::fib(n)
}

/// C(n, k), zero outside 0 <= k <= n.
#[pyfunction]
fn binom(n: u64, k: i64) -> Count {
    schreier_core::binom(n, k)
}

#[pyfunction]
fn a_closed(k: u64, n: u64) -> PyResult<Count> {
    closed_forms::a_closed(k, n).py()
}

#[pyfunction]
fn a_diag(n: u64) -> PyResult<Count> {
    closed_forms::a_diag(n).py()
}

#[pyfunction]
fn a_band(k: u64, l: u64) -> PyResult<Count> {
    closed_forms::a_band(k, l).py()
}

#[pyfunction]
fn k_count(n: u64) -> PyResult<Count> {
    closed_forms::k_count(n).py()
}

/// The four case counts of K_{n+1}, by whether 2 and 3 are members.
#[pyfunction]
fn k_case_counts(n: u64) -> PyResult<(Count, Count, Count, Count)> {
    let c = closed_forms::k_case_counts(n).py()?;
    Ok((c.case1, c.case2, c.case3, c.case4))
}

/// Rows k = 1..=k_max, columns n = 1..=n_max.
#[pyfunction]
fn a_recurrence_table(k_max: u64, n_max: u64) -> PyResult<Vec<Vec<Count>>> {
    let table = closed_forms::a_recurrence_table(k_max, n_max).py()?;
    Ok((1..=k_max)
        .map(|k| table.row(k).map(<[Count]>::to_vec).unwrap_or_default())
        .collect())
}

#[pyfunction]
fn mpq_recurrence(p: u64, q: u64, n: u64) -> PyResult<Count> {
    closed_forms::mpq_recurrence(p, q, n).py()
}

#[pyfunction]
fn enumerate_a(k: u64, n: u64) -> PyResult<Vec<PyFiniteSet>> {
    enumeration::enumerate_a(k, n).py().map(wrap)
}

#[pyfunction]
fn enumerate_k(n: u64) -> PyResult<Vec<PyFiniteSet>> {
    enumeration::enumerate_k(n).py().map(wrap)
}

#[pyfunction]
fn enumerate_mpq(p: u64, q: u64, n: u64) -> PyResult<Vec<PyFiniteSet>> {
    enumeration::enumerate_mpq(p, q, n).py().map(wrap)
}

#[pyfunction]
#[pyo3(signature = (k, n, strategy="naive"))]
fn count_a(k: u64, n: u64, strategy: &str) -> PyResult<Count> {
    enumeration::count_a(k, n, self::strategy(strategy)?).py()
}

#[pyfunction]
fn count_mpq(p: u64, q: u64, n: u64) -> PyResult<Count> {
    enumeration::count_mpq(p, q, n).py()
}

#[pyfunction]
fn in_s_k(set: &Bound<'_, PyAny>, k: u64) -> PyResult<bool> {
    sets::in_s_k(&to_set(set)?, k).py()
}

#[pyfunction]
fn in_k(set: &Bound<'_, PyAny>, n: u64) -> PyResult<bool> {
    sets::in_k(&to_set(set)?, n).py()
}

#[pyfunction]
fn omega_k(set: &Bound<'_, PyAny>, k: Element) -> PyResult<usize> {
    Ok(sets::omega_k(&to_set(set)?, k))
}

/// One of "empty", "non_schreier", "nonmaximal", "maximal".
#[pyfunction]
fn classify(set: &Bound<'_, PyAny>) -> PyResult<&'static str> {
    Ok(match sets::classify(&to_set(set)?) {
        sets::SchreierClass::Empty => "empty",
        sets::SchreierClass::NonSchreier => "non_schreier",
        sets::SchreierClass::NonmaximalSchreier => "nonmaximal",
        sets::SchreierClass::MaximalSchreier => "maximal",
    })
}

#[pyfunction]
fn psi1(set: &Bound<'_, PyAny>, n: u64) -> PyResult<PyFiniteSet> {
    bijections::psi1(&to_set(set)?, n).py().map(PyFiniteSet)
}

#[pyfunction]
fn psi2(set: &Bound<'_, PyAny>, n: u64) -> PyResult<PyFiniteSet> {
    bijections::psi2(&to_set(set)?, n).py().map(PyFiniteSet)
}

#[pyfunction]
fn psi_rec(set: &Bound<'_, PyAny>, k: u64, n: u64) -> PyResult<PyFiniteSet> {
    bijections::psi_rec(&to_set(set)?, k, n)
        .py()
        .map(PyFiniteSet)
}

#[pyfunction]
fn f_map(set: &Bound<'_, PyAny>) -> PyResult<PyFiniteSet> {
    bijections::f_map(&to_set(set)?).py().map(PyFiniteSet)
}

#[pyfunction]
fn g_map(set: &Bound<'_, PyAny>, n: u64) -> PyResult<PyFiniteSet> {
    bijections::g_map(&to_set(set)?, n).py().map(PyFiniteSet)
}

/// `kind` is "thm1_1", "rec3_1" (needs `k`) or "thm1_4".
#[pyfunction]
#[pyo3(signature = (kind, n, k=None))]
fn verify_partition<'py>(
    py: Python<'py>,
    kind: &str,
    n: u64,
    k: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let kind = match (kind, k) {
        ("thm1_1", _) => PartitionKind::Diagonal,
        ("thm1_4", _) => PartitionKind::WeightedK,
        ("rec3_1", Some(k)) => PartitionKind::Recurrence { k },
        ("rec3_1", None) => return Err(PyValueError::new_err("rec3_1 needs k")),
        (other, _) => {
            return Err(PyValueError::new_err(format!(
                "unknown partition {other:?}"
            )))
        }
    };
    let report = bijections::verify_partition(kind, n).py()?;
    let d = PyDict::new(py);
    d.set_item("map_name", &report.map_name)?;
    d.set_item("n", report.n)?;
    d.set_item("k", report.k)?;
    d.set_item("well_defined", report.well_defined)?;
    d.set_item("injective", report.injective)?;
    d.set_item("disjoint", report.disjointness)?;
    d.set_item("surjective", report.surjective)?;
    d.set_item("passed", report.passed())?;
    d.set_item(
        "first_violation",
        report
            .first_violation
            .map(|(set, why)| (set.to_string(), why)),
    )?;
    Ok(d)
}

#[pyfunction]
fn partial_sum_op(seed: BigInt, a: Vec<BigInt>) -> Vec<BigInt> {
    partial_sums::partial_sum_op(&seed, &seq(a)).into_terms()
}

#[pyfunction]
fn iterated_seeded(seeds: Vec<BigInt>, a: Vec<BigInt>) -> Vec<BigInt> {
    partial_sums::iterated_seeded(&seq(seeds), &seq(a)).into_terms()
}

#[pyfunction]
fn k_partial_sum(a: Vec<BigInt>, k: usize) -> Vec<BigInt> {
    partial_sums::k_partial_sum(&seq(a), k).into_terms()
}

#[pyfunction]
fn fib_partial_sum_closed(k: u64, l: u64) -> Count {
    partial_sums::fib_partial_sum_closed(k, l)
}

/// Runs a named suite; returns `(passed, [report line, ...])`.
#[pyfunction]
#[pyo3(signature = (suite, n_max=None, k_max=None, seed=verify::DEFAULT_SEED))]
fn run_suite(
    py: Python<'_>,
    suite: &str,
    n_max: Option<u64>,
    k_max: Option<u64>,
    seed: u64,
) -> PyResult<(bool, Vec<String>)> {
    let suite: Suite = suite.parse().map_err(PyValueError::new_err)?;
    let config = VerifyConfig {
        n_max,
        k_max,
        seed,
        ..VerifyConfig::default()
    };
    let reports = py.detach(|| verify::run_suite(suite, &config)).py()?;
    let passed = reports.iter().all(|r| r.passed);
    Ok((passed, reports.iter().map(ToString::to_string).collect()))
}

#[pymodule]
fn schreier(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFiniteSet>()?;
    m.add("SizeLimitError", m.py().get_type::<SizeLimitError>())?;
    m.add_function(wrap_pyfunction!(fib, m)?)?;
    m.add_function(wrap_pyfunction!(binom, m)?)?;
    m.add_function(wrap_pyfunction!(a_closed, m)?)?;
    m.add_function(wrap_pyfunction!(a_diag, m)?)?;
    m.add_function(wrap_pyfunction!(a_band, m)?)?;
    m.add_function(wrap_pyfunction!(k_count, m)?)?;
    m.add_function(wrap_pyfunction!(k_case_counts, m)?)?;
    m.add_function(wrap_pyfunction!(a_recurrence_table, m)?)?;
    m.add_function(wrap_pyfunction!(mpq_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_a, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_k, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_mpq, m)?)?;
    m.add_function(wrap_pyfunction!(count_a, m)?)?;
    m.add_function(wrap_pyfunction!(count_mpq, m)?)?;
    m.add_function(wrap_pyfunction!(in_s_k, m)?)?;
    m.add_function(wrap_pyfunction!(in_k, m)?)?;
    m.add_function(wrap_pyfunction!(omega_k, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(psi1, m)?)?;
    m.add_function(wrap_pyfunction!(psi2, m)?)?;
    m.add_function(wrap_pyfunction!(psi_rec, m)?)?;
    m.add_function(wrap_pyfunction!(f_map, m)?)?;
    m.add_function(wrap_pyfunction!(g_map, m)?)?;
    m.add_function(wrap_pyfunction!(verify_partition, m)?)?;
    m.add_function(wrap_pyfunction!(partial_sum_op, m)?)?;
    m.add_function(wrap_pyfunction!(iterated_seeded, m)?)?;
    m.add_function(wrap_pyfunction!(k_partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(fib_partial_sum_closed, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

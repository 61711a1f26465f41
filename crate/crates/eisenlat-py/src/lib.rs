//! Python bindings: Eisenstein integer arithmetic, the verification suites,
//! null-vector reduction certificates, and the classification reports, all
//! returned as plain Python values or JSON strings.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use eisenlat::gamma::GenSet;
use eisenlat::lattice::{Frame, HermGram, LatVec};
use eisenlat::suites;

/// An Eisenstein integer a + b*w, where w is a primitive cube root of unity.
#[pyclass(name = "EisInt", frozen, from_py_object)]
#[derive(Clone)]
struct PyEisInt {
    inner: eisenlat::EisInt,
}

#[pymethods]
impl PyEisInt {
    #[new]
    fn new(a: BigInt, b: BigInt) -> Self {
        PyEisInt {
            inner: eisenlat::EisInt::from_bigints(a, b),
        }
    }

    /// theta = w - conj(w) = 1 + 2w, a square root of -3.
    #[staticmethod]
    fn theta() -> Self {
        PyEisInt {
            inner: eisenlat::EisInt::theta(),
        }
    }

    #[staticmethod]
    fn omega() -> Self {
        PyEisInt {
            inner: eisenlat::EisInt::omega(),
        }
    }

    #[getter]
    fn a(&self) -> BigInt {
        self.inner.a.clone()
    }

    #[getter]
    fn b(&self) -> BigInt {
        self.inner.b.clone()
    }

    fn conj(&self) -> Self {
        PyEisInt {
            inner: self.inner.conj(),
        }
    }

    /// The ring norm a^2 - ab + b^2.
    fn norm(&self) -> BigInt {
        self.inner.norm()
    }

    /// Reduction mod theta: an element of {0, 1, 2}.
    fn mod_theta(&self) -> u8 {
        self.inner.mod_theta().0
    }

    /// Euclidean division: (quotient, remainder) with norm(r) < norm(d).
    fn euclid_div(&self, d: &PyEisInt) -> PyResult<(PyEisInt, PyEisInt)> {
        let (q, r) = self
            .inner
            .euclid_div(&d.inner)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok((PyEisInt { inner: q }, PyEisInt { inner: r }))
    }

    /// The lattice point nearest to the exact quotient self/d; satisfies
    /// 3 * norm(self - q*d) <= norm(d).
    fn nearest_quotient(&self, d: &PyEisInt) -> PyResult<PyEisInt> {
        self.inner
            .nearest_quotient(&d.inner)
            .map(|inner| PyEisInt { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __add__(&self, other: &PyEisInt) -> Self {
        PyEisInt {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyEisInt) -> Self {
        PyEisInt {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &PyEisInt) -> Self {
        PyEisInt {
            inner: &self.inner * &other.inner,
        }
    }

    fn __neg__(&self) -> Self {
        PyEisInt {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: &PyEisInt) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("EisInt({})", self.inner)
    }
}

fn to_latvec(coords: Vec<(BigInt, BigInt)>, frame: Frame) -> PyResult<LatVec> {
    if coords.len() != 5 {
        return Err(PyValueError::new_err("expected 5 coordinate pairs"));
    }
    Ok(LatVec::new(
        frame,
        coords
            .into_iter()
            .map(|(a, b)| eisenlat::EisInt::from_bigints(a, b))
            .collect(),
    ))
}

/// Hermitian norm in diag(-1,1,1,1,1) coordinates.
#[pyfunction]
fn norm_diag(coords: Vec<(BigInt, BigInt)>) -> PyResult<BigInt> {
    let v = to_latvec(coords, Frame::Diag5)?;
    HermGram::diag5()
        .norm(&v)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Hermitian norm in hyperbolic-cell coordinates (l1,l2,l3; mu,nu).
#[pyfunction]
fn norm_hyp(coords: Vec<(BigInt, BigInt)>) -> PyResult<BigInt> {
    let v = to_latvec(coords, Frame::Hyp5)?;
    HermGram::hyp5()
        .norm(&v)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Run a verification suite; returns the JSON report as a string.
#[pyfunction]
#[pyo3(signature = (name, bound=suites::DEFAULT_BOUND, seed=suites::DEFAULT_SEED))]
fn verify_suite(name: &str, bound: i64, seed: u64) -> PyResult<String> {
    let report = if name == "all" {
        suites::run_all(bound, seed)
    } else {
        suites::run_suite(name, bound, seed)
            .map_err(|e| PyValueError::new_err(e.to_string()))?
    };
    Ok(serde_json::to_string(&report).expect("serializable"))
}

/// Reduce a primitive null vector (hyperbolic coordinates) to a unit
/// multiple of rho; returns the certificate as a JSON string.
#[pyfunction]
fn reduce_null(coords: Vec<(BigInt, BigInt)>) -> PyResult<String> {
    let v = to_latvec(coords, Frame::Hyp5)?;
    let gens = GenSet::standard();
    let cert =
        eisenlat::gamma::reduce_null(&gens, &v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(suites::certificate_json(&cert).to_string())
}

/// Classify a negative-norm vector in diag coordinates; returns JSON.
#[pyfunction]
fn classify(coords: Vec<(BigInt, BigInt)>) -> PyResult<String> {
    let v = to_latvec(coords, Frame::Diag5)?;
    let c = eisenlat::classify::classify_vector(&v)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(suites::classification_json(&v, &c).to_string())
}

/// Norm-one vector count and projective class count of the reduced lattice.
#[pyfunction]
fn count_norm_one() -> PyResult<(usize, usize)> {
    let q = eisenlat::f3::F3Quadratic::from_gram(&HermGram::diag5())
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(q.count_norm_one())
}

/// True when every braid/commute relation of the seven generators holds.
#[pyfunction]
fn braid_relations_hold() -> bool {
    let gens = GenSet::standard();
    eisenlat::gamma::verify_braid_table(&gens)
        .iter()
        .all(|c| c.pass)
}

/// Number of short roots with negative-coordinate norm at most `bound`.
#[pyfunction]
fn short_root_count(bound: i64) -> PyResult<usize> {
    eisenlat::arrangement::short_roots_with_bound(bound)
        .map(|v| v.len())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn eisenlat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEisInt>()?;
    m.add_function(wrap_pyfunction!(norm_diag, m)?)?;
    m.add_function(wrap_pyfunction!(norm_hyp, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_null, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(count_norm_one, m)?)?;
    m.add_function(wrap_pyfunction!(braid_relations_hold, m)?)?;
    m.add_function(wrap_pyfunction!(short_root_count, m)?)?;
    Ok(())
}

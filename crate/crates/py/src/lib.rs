//! Python bindings: octonions, Jordan elements, group elements built from
//! words, and the factorizations (returned as dicts with the same layout as
//! the CLI's JSON output).

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use f4decomp::decomp::Decomposer;
use f4decomp::harmonic::{self, QuadratureSpec, SpectralParam};
use f4decomp::liegroup::verify;
use f4decomp::linalg::{from_row_major, to_row_major};
use f4decomp::word::Word;
use f4decomp::{Error, Tolerance};

create_exception!(f4decomp, F4Error, PyException, "Base class of all f4decomp errors.");
create_exception!(f4decomp, DegenerateCellError, F4Error, "The element lies on a cell where the factorization does not exist.");
create_exception!(f4decomp, SyntaxError, F4Error, "A word or octonion literal failed to parse.");

fn err(e: Error) -> PyErr {
    let msg = format!("{}: {e}", e.kind());
    match e {
        Error::DegenerateCell { .. } | Error::DegeneratePairing { .. } => DegenerateCellError::new_err(msg),
        Error::Syntax { .. } => SyntaxError::new_err(msg),
        _ => F4Error::new_err(msg),
    }
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn decomposer(tol: Option<(f64, f64)>) -> PyResult<Decomposer> {
    let tol = match tol {
        Some((verify, cell)) => Tolerance { verify, cell },
        None => Tolerance::from_env().map_err(err)?,
    };
    Ok(Decomposer::new(tol))
}

#[pyclass(name = "Octonion", module = "f4decomp", from_py_object)]
#[derive(Clone, Copy)]
struct PyOctonion(f4decomp::Octonion);

#[pymethods]
impl PyOctonion {
    #[new]
    fn new(coeffs: [f64; 8]) -> Self {
        PyOctonion(f4decomp::Octonion(coeffs))
    }

    /// Parses a literal such as `1+2e3-0.5e7`.
    #[staticmethod]
    fn parse(src: &str) -> PyResult<Self> {
        src.parse().map(PyOctonion).map_err(err)
    }

    fn coeffs(&self) -> [f64; 8] {
        self.0 .0
    }

    fn conj(&self) -> Self {
        PyOctonion(self.0.conj())
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn inner(&self, other: &Self) -> f64 {
        self.0.inner(&other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyOctonion(self.0 * other.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyOctonion(self.0 + other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyOctonion(self.0 - other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Octonion('{}')", self.0)
    }
}

#[pyclass(name = "JordanElement", module = "f4decomp", from_py_object)]
#[derive(Clone)]
struct PyJordan(f4decomp::JordanElement);

#[pymethods]
impl PyJordan {
    #[new]
    fn new(xi: [f64; 3], x1: PyOctonion, x2: PyOctonion, x3: PyOctonion) -> Self {
        PyJordan(f4decomp::JordanElement::new(xi, [x1.0, x2.0, x3.0]))
    }

    /// `E₁`, `E₂` or `E₃`.
    #[staticmethod]
    fn e(i: usize) -> PyResult<Self> {
        if !(1..=3).contains(&i) {
            return Err(F4Error::new_err("index must be 1, 2 or 3"));
        }
        Ok(PyJordan(f4decomp::JordanElement::e(i)))
    }

    #[staticmethod]
    fn p_minus() -> Self {
        PyJordan(f4decomp::JordanElement::p_minus())
    }

    fn det(&self) -> f64 {
        self.0.det()
    }

    fn trace(&self) -> f64 {
        self.0.trace()
    }

    fn inner(&self, other: &Self) -> f64 {
        self.0.inner(&other.0)
    }

    fn cross(&self, other: &Self) -> Self {
        PyJordan(self.0.cross(&other.0))
    }

    fn jordan_mul(&self, other: &Self) -> Self {
        PyJordan(self.0.jordan_mul(&other.0))
    }

    /// Membership flags for the orbits `ℋ`, `ℋ′`, `𝒩₁⁻`, ...
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &serde_json::to_value(self.0.classify()).expect("serializable"))
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &serde_json::to_value(self.0).expect("serializable"))
    }

    fn to_vec(&self) -> Vec<f64> {
        self.0.to_vec().iter().copied().collect()
    }

    fn __repr__(&self) -> String {
        format!("JordanElement({})", serde_json::to_string(&self.0).expect("serializable"))
    }
}

#[pyclass(name = "GroupElement", module = "f4decomp", from_py_object)]
#[derive(Clone)]
struct PyGroup(f4decomp::GroupElement);

#[pymethods]
impl PyGroup {
    /// Evaluates a group word such as `A3(0.5;1)*G1(e2)*S1`.
    #[staticmethod]
    fn from_word(src: &str) -> PyResult<Self> {
        Word::parse(src).and_then(|w| w.eval()).map(PyGroup).map_err(err)
    }

    /// Verifies and wraps a 27x27 matrix given as a flat row-major list.
    #[staticmethod]
    #[pyo3(signature = (data, tol = 1e-8))]
    fn from_matrix(data: Vec<f64>, tol: f64) -> PyResult<Self> {
        let mat = from_row_major(&data).ok_or_else(|| F4Error::new_err("expected 729 reals"))?;
        f4decomp::GroupElement::with_tol(mat, tol).map(PyGroup).map_err(err)
    }

    #[staticmethod]
    fn identity() -> Self {
        PyGroup(f4decomp::GroupElement::identity())
    }

    /// Row-major 27x27 matrix as nested lists.
    fn matrix(&self) -> Vec<Vec<f64>> {
        to_row_major(self.0.mat()).chunks(27).map(<[f64]>::to_vec).collect()
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.0.residual()
    }

    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyGroup).map_err(err)
    }

    fn __matmul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        PyGroup(self.0.inverse())
    }

    fn apply(&self, x: &PyJordan) -> PyJordan {
        PyJordan(self.0.apply(&x.0))
    }

    fn distance(&self, other: &Self) -> f64 {
        self.0.distance(&other.0)
    }
}

/// Automorphism residual of a flat row-major 27x27 matrix.
#[pyfunction]
fn verify_matrix(data: Vec<f64>) -> PyResult<f64> {
    let mat = from_row_major(&data).ok_or_else(|| F4Error::new_err("expected 729 reals"))?;
    Ok(verify(&mat))
}

/// `g = k·a_t·n` with `k ∈ K`.
#[pyfunction]
#[pyo3(signature = (g, tol = None))]
fn iwasawa(py: Python<'_>, g: &PyGroup, tol: Option<(f64, f64)>) -> PyResult<Py<PyAny>> {
    to_py(py, &decomposer(tol)?.iwasawa(&g.0).map_err(err)?.to_json())
}

/// `g = k_ε·a_t·n` on the open `K_ε` cell.
#[pyfunction]
#[pyo3(signature = (g, tol = None))]
fn keps_iwasawa(py: Python<'_>, g: &PyGroup, tol: Option<(f64, f64)>) -> PyResult<Py<PyAny>> {
    to_py(py, &decomposer(tol)?.keps_iwasawa(&g.0).map_err(err)?.to_json())
}

/// `g = k_ε·(g₀)·m·a_t·n` on either Matsuki cell.
#[pyfunction]
#[pyo3(signature = (g, tol = None))]
fn matsuki(py: Python<'_>, g: &PyGroup, tol: Option<(f64, f64)>) -> PyResult<Py<PyAny>> {
    to_py(py, &decomposer(tol)?.matsuki(&g.0).map_err(err)?.to_json())
}

/// `g = n⁻·m·a_t·n⁺` on the open Bruhat cell.
#[pyfunction]
#[pyo3(signature = (g, tol = None))]
fn gauss(py: Python<'_>, g: &PyGroup, tol: Option<(f64, f64)>) -> PyResult<Py<PyAny>> {
    to_py(py, &decomposer(tol)?.gauss(&g.0).map_err(err)?.to_json())
}

/// Bruhat cell, Matsuki cell and flag-orbit labels.
#[pyfunction]
#[pyo3(signature = (g, tol = None))]
fn classify(py: Python<'_>, g: &PyGroup, tol: Option<(f64, f64)>) -> PyResult<Py<PyAny>> {
    let d = decomposer(tol)?;
    let y = g.0.apply(&f4decomp::JordanElement::p_minus());
    let out = PyDict::new(py);
    out.set_item("bruhat", to_py(py, &serde_json::to_value(d.bruhat_classify(&g.0)).expect("serializable"))?)?;
    out.set_item("matsuki", to_py(py, &serde_json::to_value(d.matsuki_cell(&g.0)).expect("serializable"))?)?;
    let flag = PyDict::new(py);
    flag.set_item("nminus", d.flag_classify_nminus(&y).map_err(err)?.label())?;
    flag.set_item("keps", d.flag_classify_keps(&y).map_err(err)?.label())?;
    out.set_item("flag", flag)?;
    out.set_item("stabilizer", d.stabilizer_flag(&g.0))?;
    Ok(out.into_any().unbind())
}

/// The c-function at `lambda_alpha`, by the Gamma closed form or by quadrature.
#[pyfunction]
#[pyo3(signature = (lam, method = "gamma", rel_tol = 1e-6))]
fn c_function(lam: num_complex_shim::C, method: &str, rel_tol: f64) -> PyResult<num_complex_shim::C> {
    let l = SpectralParam::new(lam.re, lam.im);
    let c = match method {
        "gamma" => harmonic::c_gamma(l).map_err(err)?,
        "quad" => harmonic::c_quadrature(l, &QuadratureSpec { rel_tol, ..QuadratureSpec::default() })
            .map_err(err)?
            .value,
        other => return Err(F4Error::new_err(format!("unknown method `{other}`"))),
    };
    Ok(num_complex_shim::C { re: c.re, im: c.im })
}

/// The spherical function `φ_λ(a_t)` by quadrature.
#[pyfunction]
#[pyo3(signature = (lam, t, rel_tol = 1e-6))]
fn spherical(lam: num_complex_shim::C, t: f64, rel_tol: f64) -> PyResult<num_complex_shim::C> {
    let spec = QuadratureSpec { rel_tol, ..QuadratureSpec::default() };
    let v = harmonic::spherical(SpectralParam::new(lam.re, lam.im), t, &spec).map_err(err)?.value;
    Ok(num_complex_shim::C { re: v.re, im: v.im })
}

/// Python `complex` in and out without pulling in pyo3's num-complex feature.
mod num_complex_shim {
    use pyo3::prelude::*;
    use pyo3::types::PyComplex;

    pub struct C {
        pub re: f64,
        pub im: f64,
    }

    impl<'a, 'py> FromPyObject<'a, 'py> for C {
        type Error = PyErr;

        fn extract(ob: Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
            if let Ok(z) = ob.cast::<PyComplex>() {
                return Ok(C { re: z.real(), im: z.imag() });
            }
            Ok(C { re: ob.extract::<f64>()?, im: 0.0 })
        }
    }

    impl<'py> IntoPyObject<'py> for C {
        type Target = PyComplex;
        type Output = Bound<'py, PyComplex>;
        type Error = std::convert::Infallible;

        fn into_pyobject(self, py: Python<'py>) -> Result<Self::Output, Self::Error> {
            Ok(PyComplex::from_doubles(py, self.re, self.im))
        }
    }
}

#[pymodule]
#[pyo3(name = "f4decomp")]
fn f4decomp_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("F4Error", py.get_type::<F4Error>())?;
    m.add("DegenerateCellError", py.get_type::<DegenerateCellError>())?;
    m.add("SyntaxError", py.get_type::<SyntaxError>())?;
    m.add_class::<PyOctonion>()?;
    m.add_class::<PyJordan>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(verify_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(iwasawa, m)?)?;
    m.add_function(wrap_pyfunction!(keps_iwasawa, m)?)?;
    m.add_function(wrap_pyfunction!(matsuki, m)?)?;
    m.add_function(wrap_pyfunction!(gauss, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(c_function, m)?)?;
    m.add_function(wrap_pyfunction!(spherical, m)?)?;
    Ok(())
}

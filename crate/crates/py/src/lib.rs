//! Python bindings: catalog and user-defined Lie algebras, r-matrices with
//! CYBE and cocommutator checks, the deformed sl(2), and the verification suites.
//!
//! Exact scalars cross the boundary as strings in the definition-file syntax
//! (`-1/2*i*sqrt2 + 3/4`); reports cross as JSON text.

use std::sync::Mutex;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use lieverify_core::catalog::{build_sl2, build_sl4, build_so32, build_so42, ConformalAlgebra};
use lieverify_core::hopfseries::{DeformedSl2, Gen};
use lieverify_core::parse::{parse_algebra, parse_expression, parse_rmatrix_with, parse_scalar, serialize_algebra, serialize_rmatrix, Value};
use lieverify_core::suites::{hopf_checks, run_claim, run_suite, Catalog};
use lieverify_core::tensoralg::{cocommutator, cybe_residual};
use lieverify_core::{Element, LieAlgebra, TwoTensor};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(Clone)]
enum Source {
    Plain(LieAlgebra),
    Conformal(ConformalAlgebra),
}

/// A Lie algebra with exact structure constants.
#[pyclass(name = "LieAlgebra", module = "lieverify", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLieAlgebra {
    source: Source,
}

impl PyLieAlgebra {
    fn algebra(&self) -> &LieAlgebra {
        match &self.source {
            Source::Plain(g) => g,
            Source::Conformal(c) => &c.ambient,
        }
    }

    fn resolve(&self, label: &str) -> Option<Element> {
        match &self.source {
            Source::Plain(g) => g.element(label).ok(),
            Source::Conformal(c) => c.resolve(label),
        }
    }

    fn element(&self, text: &str) -> PyResult<Element> {
        match parse_expression(text, &|l| self.resolve(l)).map_err(value_error)? {
            Value::Vector(v) => Ok(v),
            Value::Scalar(s) if s.is_zero() => Ok(self.algebra().zero()),
            _ => Err(PyValueError::new_err(format!("`{text}` is not an algebra element"))),
        }
    }
}

#[pymethods]
impl PyLieAlgebra {
    /// Catalog algebra by name: sl2, so32 (alias sp4), so42, sl4.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let source = match name {
            "sl2" => Source::Plain(build_sl2()),
            "sl4" => Source::Plain(build_sl4()),
            "so32" | "sp4" => Source::Conformal(build_so32().map_err(value_error)?),
            "so42" => Source::Conformal(build_so42().map_err(value_error)?),
            other => return Err(PyKeyError::new_err(format!("unknown catalog algebra `{other}`"))),
        };
        Ok(PyLieAlgebra { source })
    }

    /// Parses the `algebra` / `basis:` / `[A,B] = ...` definition format.
    #[staticmethod]
    fn from_definition(text: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra { source: Source::Plain(parse_algebra(text).map_err(value_error)?) })
    }

    #[getter]
    fn name(&self) -> String {
        self.algebra().name().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.algebra().labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.algebra().dim()
    }

    /// `[x, y]` for two element expressions, e.g. `bracket("h", "e_plus")`.
    fn bracket(&self, x: &str, y: &str) -> PyResult<String> {
        let g = self.algebra();
        Ok(g.bracket(&self.element(x)?, &self.element(y)?).map_err(value_error)?.to_string())
    }

    /// `None` if the Jacobi identity holds, else the first failing basis triple and residual.
    fn jacobi_witness(&self) -> Option<(Vec<String>, String)> {
        self.algebra().jacobi_residual().map(|w| (w.labels.to_vec(), w.residual.to_string()))
    }

    fn to_definition(&self) -> String {
        serialize_algebra(self.algebra())
    }

    /// Parses an `r = ...` definition over this algebra.
    fn rmatrix(&self, text: &str) -> PyResult<PyRMatrix> {
        let tensor = parse_rmatrix_with(text, self.algebra(), &|l| self.resolve(l)).map_err(value_error)?;
        Ok(PyRMatrix { algebra: self.clone(), tensor })
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra({:?}, dim={})", self.algebra().name(), self.algebra().dim())
    }
}

/// An element of g ⊗ g over a given algebra.
#[pyclass(name = "RMatrix", module = "lieverify", frozen)]
struct PyRMatrix {
    algebra: PyLieAlgebra,
    tensor: TwoTensor,
}

#[pymethods]
impl PyRMatrix {
    #[getter]
    fn text(&self) -> String {
        self.tensor.to_text()
    }

    fn is_antisymmetric(&self) -> bool {
        self.tensor.is_antisymmetric()
    }

    /// Nonzero components of `[r12,r13] + [r12,r23] + [r13,r23]` as `(a, b, c, coeff)`.
    fn cybe_residual(&self) -> PyResult<Vec<(String, String, String, String)>> {
        let g = self.algebra.algebra();
        let res = cybe_residual(g, &self.tensor).map_err(value_error)?;
        Ok(res
            .terms()
            .map(|(k, c)| (g.labels()[k[0]].clone(), g.labels()[k[1]].clone(), g.labels()[k[2]].clone(), c.to_string()))
            .collect())
    }

    fn satisfies_cybe(&self) -> PyResult<bool> {
        Ok(self.cybe_residual()?.is_empty())
    }

    /// `δ(x) = [x ⊗ 1 + 1 ⊗ x, r]` for an element expression `x`.
    fn cocommutator(&self, x: &str) -> PyResult<String> {
        let x = self.algebra.element(x)?;
        Ok(cocommutator(self.algebra.algebra(), &x, &self.tensor).map_err(value_error)?.to_text())
    }

    fn to_definition(&self) -> String {
        serialize_rmatrix(&self.tensor)
    }

    fn __repr__(&self) -> String {
        format!("RMatrix({})", self.tensor.to_text())
    }
}

/// The Jordanian deformation of sl(2) in generators P, D, K, truncated at `u^order`.
#[pyclass(name = "DeformedSl2", module = "lieverify", frozen)]
struct PyDeformedSl2 {
    // the algebra memoizes products internally, so access is serialized
    inner: Mutex<DeformedSl2>,
}

impl PyDeformedSl2 {
    fn with<T>(&self, f: impl FnOnce(&DeformedSl2) -> T) -> T {
        f(&self.inner.lock().unwrap_or_else(|e| e.into_inner()))
    }
}

fn word(text: &str) -> PyResult<Vec<Gen>> {
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .map(|c| match c {
            'P' => Ok(Gen::P),
            'D' => Ok(Gen::D),
            'K' => Ok(Gen::K),
            other => Err(PyValueError::new_err(format!("unknown generator `{other}` (expected P, D, K)"))),
        })
        .collect()
}

#[pymethods]
impl PyDeformedSl2 {
    #[new]
    #[pyo3(signature = (order = 6))]
    fn new(order: usize) -> Self {
        PyDeformedSl2 { inner: Mutex::new(DeformedSl2::new(order)) }
    }

    #[getter]
    fn order(&self) -> usize {
        self.with(DeformedSl2::order)
    }

    /// Normal-ordered (K^a D^b P^c) form of a word such as `"PDK"`.
    fn straighten(&self, text: &str) -> PyResult<String> {
        let w = word(text)?;
        Ok(self.with(|a| a.straighten(&w).to_string()))
    }

    /// Coproduct of a single generator.
    fn coproduct(&self, generator: &str) -> PyResult<String> {
        match word(generator)?.as_slice() {
            [g] => Ok(self.with(|a| a.coproduct_gen(*g).to_string())),
            _ => Err(PyValueError::new_err("expected a single generator")),
        }
    }

    /// Hopf-axiom report as JSON.
    #[pyo3(signature = (compare_printed_antipode = true))]
    fn verify(&self, compare_printed_antipode: bool) -> String {
        let checks = hopf_checks(self.with(DeformedSl2::order), compare_printed_antipode);
        lieverify_core::report::VerificationReport::new("hopf-verify", checks, Default::default()).to_json()
    }
}

/// Normalized text of an exact scalar in Q(i, √2).
#[pyfunction]
fn normalize_scalar(text: &str) -> PyResult<String> {
    Ok(parse_scalar(text).map_err(value_error)?.to_string())
}

/// Runs a named suite (`jacobi`, `cybe`, ..., `all`) and returns the JSON report.
#[pyfunction]
fn verify_suite(py: Python<'_>, name: &str) -> PyResult<String> {
    py.detach(|| {
        let catalog = Catalog::build().map_err(value_error)?;
        Ok(run_suite(&catalog, name).map_err(value_error)?.to_json())
    })
}

/// Runs the checks under a claim id prefix such as `hopf.casimir`.
#[pyfunction]
fn verify_claim(py: Python<'_>, claim: &str) -> PyResult<String> {
    py.detach(|| {
        let catalog = Catalog::build().map_err(value_error)?;
        Ok(run_claim(&catalog, claim).map_err(value_error)?.to_json())
    })
}

#[pymodule]
fn lieverify(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyRMatrix>()?;
    m.add_class::<PyDeformedSl2>()?;
    m.add_function(wrap_pyfunction!(normalize_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claim, m)?)?;
    Ok(())
}

//! Python bindings. Classes own their data through `Arc`s; tables that
//! borrow a registry are rebuilt inside each call.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ringel_hall::ffield::{make_field, Field};
use ringel_hall::hall_exact::HallTable;
use ringel_hall::hall_tri::TriHall;
use ringel_hall::lie::{Generator, LieAlgebra};
use ringel_hall::quiver::Quiver;
use ringel_hall::registry::{IsoClassId, ModuleRegistry};
use ringel_hall::report::CheckReport;
use ringel_hall::root::{ObjClassId, RootCategory};
use ringel_hall::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NotPrimePower(_) | Error::Quiver(_) | Error::Cycle(_) | Error::Json(_) | Error::Dimension(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn module_class(s: &str) -> PyResult<IsoClassId> {
    IsoClassId::parse(s).ok_or_else(|| PyValueError::new_err(format!("not a module class: {s:?}")))
}

fn object_class(s: &str) -> PyResult<ObjClassId> {
    ObjClassId::parse(s).ok_or_else(|| PyValueError::new_err(format!("not an object class: {s:?}")))
}

/// `(checked, violations)` of a sweep.
fn counts(r: &CheckReport) -> (usize, usize) {
    let s = r.summary();
    (s.checked, s.violations)
}

/// The finite field with `q` elements; elements are integers `0..q`.
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: Field,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        Ok(PyField { inner: make_field(q).map_err(py_err)? })
    }
    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }
    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }
    fn add(&self, a: u8, b: u8) -> PyResult<u8> {
        self.check(&[a, b])?;
        Ok(self.inner.add(a, b))
    }
    fn mul(&self, a: u8, b: u8) -> PyResult<u8> {
        self.check(&[a, b])?;
        Ok(self.inner.mul(a, b))
    }
    fn inv(&self, a: u8) -> PyResult<u8> {
        self.check(&[a])?;
        self.inner.inv(a).map_err(py_err)
    }
    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.q())
    }
}

impl PyField {
    fn check(&self, xs: &[u8]) -> PyResult<()> {
        match xs.iter().find(|&&x| x as usize >= self.inner.q()) {
            Some(x) => Err(PyValueError::new_err(format!("{x} is not an element of F_{}", self.inner.q()))),
            None => Ok(()),
        }
    }
}

#[pyclass(name = "Quiver", frozen)]
struct PyQuiver {
    inner: Arc<Quiver>,
}

#[pymethods]
impl PyQuiver {
    /// Parses the JSON quiver format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyQuiver { inner: Arc::new(Quiver::parse(text).map_err(py_err)?) })
    }
    #[staticmethod]
    fn linear_a(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("A_n needs n >= 1"));
        }
        Ok(PyQuiver { inner: Arc::new(Quiver::linear_a(n)) })
    }
    #[staticmethod]
    fn kronecker() -> Self {
        PyQuiver { inner: Arc::new(Quiver::kronecker()) }
    }
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }
    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }
    fn digest(&self) -> String {
        self.inner.digest()
    }
    fn is_dynkin(&self) -> bool {
        self.inner.is_dynkin()
    }
    fn to_json(&self) -> String {
        self.inner.to_json()
    }
    /// Euler form `<m, n>` on dimension vectors.
    fn euler_form(&self, m: Vec<i64>, n: Vec<i64>) -> PyResult<i64> {
        let k = self.inner.n_vertices();
        if m.len() != k || n.len() != k {
            return Err(PyValueError::new_err(format!("dimension vectors need {k} entries")));
        }
        Ok(self.inner.euler_form(&m, &n))
    }
    fn __repr__(&self) -> String {
        format!("Quiver({:?})", self.inner.name())
    }
}

/// Indecomposable representations of a quiver over `F_q`, together with
/// every computation built on them.
#[pyclass(name = "Registry", frozen)]
struct PyRegistry {
    inner: Arc<ModuleRegistry>,
}

#[pymethods]
impl PyRegistry {
    #[new]
    #[pyo3(signature = (quiver, q, bound=None, budget=1 << 24))]
    fn new(py: Python<'_>, quiver: &PyQuiver, q: u64, bound: Option<Vec<usize>>, budget: u128) -> PyResult<Self> {
        let f = make_field(q).map_err(py_err)?;
        let qv = quiver.inner.clone();
        let reg = py.detach(|| match bound {
            Some(b) => ModuleRegistry::new(&f, &qv, &b, budget),
            None => ModuleRegistry::full_dynkin(&f, &qv, budget),
        });
        Ok(PyRegistry { inner: Arc::new(reg.map_err(py_err)?) })
    }
    fn __len__(&self) -> usize {
        self.inner.len()
    }
    #[getter]
    fn q(&self) -> usize {
        self.inner.field().q()
    }
    fn dims(&self, i: usize) -> PyResult<Vec<usize>> {
        self.index(i)?;
        Ok(self.inner.dims(i).to_vec())
    }
    /// `dim_Fq End(X) / rad End(X)`.
    fn d(&self, i: usize) -> PyResult<usize> {
        self.index(i)?;
        Ok(self.inner.d(i))
    }
    fn hom_dim(&self, i: usize, j: usize) -> PyResult<usize> {
        self.index(i)?;
        self.index(j)?;
        Ok(self.inner.hom_dim(i, j))
    }
    /// Module classes (as strings like `"0*1+2*1"`) of total dimension at most `n`.
    fn classes(&self, n: usize) -> Vec<String> {
        self.inner.classes_up_to_total_dim(n).iter().map(|c| c.to_string()).collect()
    }
    /// `F_{XY}^L`: submodules `U` of `L` with `U ~ Y` and `L/U ~ X`.
    fn hall_number(&self, py: Python<'_>, x: &str, y: &str, l: &str) -> PyResult<u128> {
        let (x, y, l) = (module_class(x)?, module_class(y)?, module_class(l)?);
        let reg = self.inner.clone();
        py.detach(|| HallTable::new(&reg).hall_number(&x, &y, &l)).map_err(py_err)
    }
    /// Associativity sweep; returns `(checked, violations)`.
    fn check_associativity(&self, py: Python<'_>, max_total: usize) -> PyResult<(usize, usize)> {
        let reg = self.inner.clone();
        let r = py.detach(|| HallTable::new(&reg).check_associativity(max_total)).map_err(py_err)?;
        Ok(counts(&r))
    }
    /// `(|W|, F)` for triangles `Y -> L -> X -> TY` in the root category.
    fn triangle_counts(&self, py: Python<'_>, x: &str, y: &str, l: &str) -> PyResult<(u128, u128)> {
        let (x, y, l) = (object_class(x)?, object_class(y)?, object_class(l)?);
        let reg = self.inner.clone();
        py.detach(|| {
            let mut th = TriHall::new(RootCategory::new(&reg));
            Ok((th.count_w(&x, &y, &l)?, th.orbit_count_f(&x, &y, &l)?))
        })
        .map_err(py_err)
    }
    /// Indecomposable objects of the root category, e.g. `"0*1"` and `"T0*1"`.
    fn objects(&self) -> Vec<String> {
        RootCategory::new(&self.inner).indecomposable_classes().iter().map(|c| c.to_string()).collect()
    }
    /// `[u_X, u_Y]` in the Lie algebra, rendered as text.
    fn bracket(&self, py: Python<'_>, x: &str, y: &str) -> PyResult<String> {
        let (x, y) = (object_class(x)?, object_class(y)?);
        let reg = self.inner.clone();
        py.detach(|| {
            let mut la = LieAlgebra::new(&reg)?;
            la.bracket_u(&x, &y).map(|e| e.to_string())
        })
        .map_err(py_err)
    }
    /// Every nonzero bracket of two generators as `(a, b, [a,b])`.
    fn bracket_table(&self, py: Python<'_>) -> PyResult<Vec<(String, String, String)>> {
        let reg = self.inner.clone();
        py.detach(|| {
            let mut la = LieAlgebra::new(&reg)?;
            let gens: Vec<Generator> = la.generators();
            let mut out = Vec::new();
            for a in &gens {
                for b in &gens {
                    let (ea, eb) = (la.generator(a), la.generator(b));
                    let br = la.bracket(&ea, &eb)?;
                    if !br.is_zero() {
                        out.push((a.to_string(), b.to_string(), br.to_string()));
                    }
                }
            }
            Ok(out)
        })
        .map_err(py_err)
    }
    /// Jacobi sweep over all generator triples; returns `(checked, violations)`.
    fn check_jacobi(&self, py: Python<'_>) -> PyResult<(usize, usize)> {
        let reg = self.inner.clone();
        let r = py.detach(|| LieAlgebra::new(&reg)?.check_jacobi()).map_err(py_err)?;
        Ok(counts(&r))
    }
    /// The structure report as a JSON string.
    #[pyo3(signature = (sweeps=false))]
    fn structure_report(&self, py: Python<'_>, sweeps: bool) -> PyResult<String> {
        let reg = self.inner.clone();
        let s = py.detach(|| LieAlgebra::new(&reg)?.structure_report(sweeps)).map_err(py_err)?;
        serde_json::to_string(&s).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }
    fn __repr__(&self) -> String {
        format!("Registry({}, q={}, {} indecomposables)", self.inner.quiver().name(), self.inner.field().q(), self.inner.len())
    }
}

impl PyRegistry {
    fn index(&self, i: usize) -> PyResult<()> {
        if i < self.inner.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("no indecomposable with index {i}")))
        }
    }
}

#[pymodule]
#[pyo3(name = "ringel_hall")]
fn ringel_hall_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyQuiver>()?;
    m.add_class::<PyRegistry>()?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

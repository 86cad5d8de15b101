use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use frieze_core::cli::{parse_arc, ArcSpec};
use frieze_core::cutglue::{cut_surface, frieze_d};
use frieze_core::documents::{cut_to_json, frieze_to_json, parse_frieze};
use frieze_core::frieze::{equivalent, frieze_a, frieze_a_from_quiddity, validate_frieze, FriezeGrid, FriezeKind};
use frieze_core::mutation::{mutate_frieze_a, mutate_frieze_d};
use frieze_core::oracle::{differential_mutation_check, EnumerationSpec, SurfaceKind};
use frieze_core::render::render_frieze;
use frieze_core::surfaces::{self, PuncturedArc, Triangulated};
use frieze_core::FriezeError;

fn err(e: FriezeError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn punctured_arc(s: &str) -> PyResult<PuncturedArc> {
    match parse_arc(s) {
        Ok(ArcSpec::Punctured(a)) => Ok(a),
        _ => Err(PyValueError::new_err(format!("not a punctured-disk arc: {s:?}"))),
    }
}

#[pyclass(name = "PolygonTriangulation", module = "frieze", skip_from_py_object)]
#[derive(Clone)]
struct PyPolygon {
    inner: surfaces::PolygonTriangulation,
}

#[pymethods]
impl PyPolygon {
    #[new]
    fn new(m: usize, diagonals: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = surfaces::PolygonTriangulation::checked(m, diagonals).map_err(err)?;
        Ok(PyPolygon { inner })
    }

    #[staticmethod]
    fn fan(m: usize, apex: usize) -> Self {
        PyPolygon { inner: surfaces::PolygonTriangulation::fan(m, apex) }
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn diagonals(&self) -> Vec<(usize, usize)> {
        self.inner.diagonals().iter().copied().collect()
    }

    fn quiddity(&self) -> PyResult<Vec<u32>> {
        self.inner.quiddity().map_err(err)
    }

    fn flip(&self, i: usize, j: usize) -> PyResult<Self> {
        Ok(PyPolygon { inner: self.inner.flip((i.min(j), i.max(j))).map_err(err)? })
    }

    fn frieze(&self) -> PyResult<PyFrieze> {
        Ok(PyFrieze { inner: frieze_a(&self.inner).map_err(err)? })
    }

    /// Closed-form mutation of this triangulation's frieze at the diagonal `(i, j)`.
    fn mutate(&self, i: usize, j: usize) -> PyResult<PyFrieze> {
        let f = frieze_a(&self.inner).map_err(err)?;
        let r = mutate_frieze_a(&f, &self.inner, (i.min(j), i.max(j))).map_err(err)?;
        Ok(PyFrieze { inner: r.result })
    }

    fn __repr__(&self) -> String {
        format!("PolygonTriangulation({}, {:?})", self.inner.size(), self.diagonals())
    }
}

#[pyclass(name = "PuncturedTriangulation", module = "frieze", skip_from_py_object)]
#[derive(Clone)]
struct PyPunctured {
    inner: surfaces::PuncturedTriangulation,
}

#[pymethods]
impl PyPunctured {
    /// Arcs are written `radius:v`, `loop:v` or `peripheral:a,b`.
    #[new]
    fn new(n: usize, arcs: Vec<String>) -> PyResult<Self> {
        let arcs = arcs.iter().map(|s| punctured_arc(s)).collect::<PyResult<Vec<_>>>()?;
        let inner = surfaces::PuncturedTriangulation::checked(n, arcs).map_err(err)?;
        Ok(PyPunctured { inner })
    }

    #[staticmethod]
    fn star(n: usize) -> Self {
        PyPunctured { inner: surfaces::PuncturedTriangulation::star(n) }
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn arcs(&self) -> Vec<String> {
        self.inner.arcs().iter().map(|a| a.to_string()).collect()
    }

    fn quiddity(&self) -> PyResult<Vec<u32>> {
        self.inner.quiddity().map_err(err)
    }

    fn flip(&self, arc: &str) -> PyResult<Self> {
        Ok(PyPunctured { inner: self.inner.flip(punctured_arc(arc)?).map_err(err)? })
    }

    fn frieze(&self) -> PyResult<PyFrieze> {
        Ok(PyFrieze { inner: frieze_d(&self.inner).map_err(err)? })
    }

    fn mutate(&self, arc: &str) -> PyResult<PyFrieze> {
        let r = mutate_frieze_d(&self.inner, &punctured_arc(arc)?).map_err(err)?;
        Ok(PyFrieze { inner: r.result })
    }

    /// JSON document of the doubled polygon cut along `radius:v`.
    fn cut(&self, v: usize) -> PyResult<String> {
        let c = cut_surface(&self.inner, &PuncturedArc::Radius(v)).map_err(err)?;
        Ok(cut_to_json(&c).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("PuncturedTriangulation({}, {:?})", self.inner.size(), self.arcs())
    }
}

#[pyclass(name = "Frieze", module = "frieze", skip_from_py_object)]
#[derive(Clone)]
struct PyFrieze {
    inner: FriezeGrid,
}

#[pymethods]
impl PyFrieze {
    #[staticmethod]
    fn from_quiddity(q: Vec<u32>) -> PyResult<Self> {
        Ok(PyFrieze { inner: frieze_a_from_quiddity(&q).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyFrieze { inner: parse_frieze(text).map_err(err)? })
    }

    /// `"A"` or `"D"`.
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            FriezeKind::TypeA(_) => "A",
            FriezeKind::TypeD(_) => "D",
        }
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.kind().rows()
    }

    #[getter]
    fn period(&self) -> usize {
        self.inner.period()
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.inner.rows().to_vec()
    }

    fn entry(&self, row: i64, column: i64) -> BigInt {
        self.inner.entry(row, column)
    }

    fn is_valid(&self) -> bool {
        validate_frieze(&self.inner).is_ok()
    }

    fn equivalent(&self, other: PyRef<'_, PyFrieze>) -> bool {
        equivalent(&self.inner, &other.inner)
    }

    #[pyo3(signature = (columns=None))]
    fn render(&self, columns: Option<usize>) -> String {
        render_frieze(&self.inner, columns.unwrap_or(self.inner.period()))
    }

    fn to_json(&self) -> String {
        frieze_to_json(&self.inner).to_string()
    }

    fn __eq__(&self, other: PyRef<'_, PyFrieze>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Frieze({}, period={})", self.inner.kind(), self.inner.period())
    }
}

/// Differential check over every triangulation of the given size; returns `(checks, failures)`.
#[pyfunction]
#[pyo3(signature = (surface, size, sample=None, seed=0))]
fn verify(surface: &str, size: usize, sample: Option<usize>, seed: u64) -> PyResult<(usize, usize)> {
    let kind = match surface {
        "polygon" => SurfaceKind::Polygon,
        "punctured-disk" => SurfaceKind::PuncturedDisk,
        other => return Err(PyValueError::new_err(format!("unknown surface {other:?}"))),
    };
    let spec = match sample {
        Some(count) => EnumerationSpec::sampled(kind, size, seed, count),
        None => EnumerationSpec::exhaustive(kind, size),
    };
    let reports = differential_mutation_check(&spec).map_err(err)?;
    Ok((reports.len(), reports.iter().filter(|r| !r.pass).count()))
}

#[pymodule]
fn frieze(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolygon>()?;
    m.add_class::<PyPunctured>()?;
    m.add_class::<PyFrieze>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

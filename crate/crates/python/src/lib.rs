//! Python bindings. Field elements cross the boundary as integer indices
//! (`sum c_i p^i` over the coefficient vector).

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

use hullforge::artifact::{
    matrix_to_indices, matrix_to_text, parse_json_matrix, parse_text_matrix, row_space,
    text_field_header, Artifact,
};
use hullforge::atlas::{atlas as atlas_rows_for, sort_rows};
use hullforge::cli::{atlas_table, budget_from_env, TableFormat};
use hullforge::code::{inspect, Certificate, DistanceRecord};
use hullforge::gf::{Elem, FieldRef, GaloisField};
use hullforge::grs::GrsSpec;
use hullforge::hull::{construct_with_dual, dualize, Construction, Params};
use hullforge::{Error, ErrorKind};

create_exception!(hullforge, HullforgeError, PyException);
create_exception!(hullforge, PreconditionError, HullforgeError);
create_exception!(hullforge, CertificationError, HullforgeError);
create_exception!(hullforge, InputError, HullforgeError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.kind() {
        ErrorKind::Precondition => PreconditionError::new_err(msg),
        ErrorKind::Certification => CertificationError::new_err(msg),
        ErrorKind::Input => InputError::new_err(msg),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for hullforge::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn budget(b: Option<u64>) -> PyResult<u64> {
    match b {
        Some(b) => Ok(b),
        None => budget_from_env().py(),
    }
}

fn d_to_py<'py>(py: Python<'py>, d: DistanceRecord) -> PyResult<Bound<'py, PyAny>> {
    match d {
        DistanceRecord::Exact(d) => d.into_bound_py_any(py),
        DistanceRecord::Structural => "structural".into_bound_py_any(py),
        DistanceRecord::Unverified => Ok(py.None().into_bound(py)),
    }
}

fn cert_to_py<'py>(py: Python<'py>, c: &Certificate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", c.n)?;
    d.set_item("k", c.k)?;
    d.set_item("d", d_to_py(py, c.d)?)?;
    d.set_item("hull_dim", c.hull_dim)?;
    d.set_item("is_mds", c.is_mds)?;
    d.set_item("method_notes", &c.method_notes)?;
    Ok(d)
}

fn indices(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.index()).collect()
}

/// A finite field GF(p^m).
#[pyclass(name = "Field", module = "hullforge", frozen, from_py_object)]
#[derive(Clone)]
struct PyField {
    inner: FieldRef,
}

impl PyField {
    fn elem(&self, i: u64) -> PyResult<Elem> {
        self.inner.elem(i).py()
    }
}

#[pymethods]
impl PyField {
    /// `Field(q)` or `Field(p=3, m=4, modulus=[2, 0, 0, 2, 1])`.
    #[new]
    #[pyo3(signature = (q=None, *, p=None, m=None, modulus=None))]
    fn new(q: Option<u64>, p: Option<u32>, m: Option<u32>, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        let inner = match (q, p) {
            (Some(q), None) if modulus.is_none() => GaloisField::of_order(q).py()?,
            (Some(q), _) => {
                let (pp, mm) = hullforge::gf::prime_power(q)
                    .ok_or_else(|| PreconditionError::new_err(format!("q = {q} is not a prime power")))?;
                if p.is_some_and(|p| p as u64 != pp) || m.is_some_and(|m| m != mm) {
                    return Err(PreconditionError::new_err(format!("q = {q} disagrees with p/m")));
                }
                GaloisField::new(pp as u32, mm, modulus.as_deref()).py()?
            }
            (None, Some(p)) => GaloisField::new(p, m.unwrap_or(1), modulus.as_deref()).py()?,
            (None, None) => return Err(InputError::new_err("give q or p")),
        };
        Ok(PyField { inner })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    /// Index of the primitive element.
    #[getter]
    fn generator(&self) -> u32 {
        self.inner.generator().index()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.add(self.elem(a)?, self.elem(b)?).index())
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.sub(self.elem(a)?, self.elem(b)?).index())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.mul(self.elem(a)?, self.elem(b)?).index())
    }

    fn div(&self, a: u64, b: u64) -> PyResult<u32> {
        Ok(self.inner.div(self.elem(a)?, self.elem(b)?).py()?.index())
    }

    fn neg(&self, a: u64) -> PyResult<u32> {
        Ok(self.inner.neg(self.elem(a)?).index())
    }

    fn inv(&self, a: u64) -> PyResult<u32> {
        Ok(self.inner.inv(self.elem(a)?).py()?.index())
    }

    fn pow(&self, a: u64, e: i64) -> PyResult<u32> {
        Ok(self.inner.pow(self.elem(a)?, e).py()?.index())
    }

    fn is_square(&self, a: u64) -> PyResult<bool> {
        Ok(self.inner.is_square(self.elem(a)?))
    }

    /// The canonical square root (the smaller of the two by index).
    fn sqrt(&self, a: u64) -> PyResult<u32> {
        Ok(self.inner.sqrt(self.elem(a)?).py()?.index())
    }

    fn coeffs(&self, a: u64) -> PyResult<Vec<u32>> {
        Ok(self.inner.coeffs(self.elem(a)?))
    }

    fn __len__(&self) -> usize {
        self.inner.order() as usize
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, m={}, modulus={:?})", self.p(), self.m(), self.modulus())
    }
}

/// A generalized Reed–Solomon code given by points, multipliers and dimension.
#[pyclass(name = "GrsSpec", module = "hullforge", frozen)]
struct PyGrsSpec {
    inner: GrsSpec,
}

#[pymethods]
impl PyGrsSpec {
    #[new]
    fn new(field: &PyField, alpha: Vec<u32>, v: Vec<u32>, k: usize) -> PyResult<Self> {
        Ok(PyGrsSpec {
            inner: GrsSpec::from_indices(&field.inner, &alpha, &v, k).py()?,
        })
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField { inner: self.inner.field().clone() }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn alpha(&self) -> Vec<u32> {
        indices(self.inner.alpha())
    }

    #[getter]
    fn v(&self) -> Vec<u32> {
        indices(self.inner.v())
    }

    fn generator(&self) -> Vec<Vec<u32>> {
        matrix_to_indices(&self.inner.generator())
    }

    fn dual(&self) -> PyResult<PyGrsSpec> {
        Ok(PyGrsSpec { inner: self.inner.dual().py()? })
    }

    /// Certificate of the code, using the spec as the MDS witness.
    #[pyo3(signature = (budget=None))]
    fn certify<'py>(&self, py: Python<'py>, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
        let cert = inspect(&self.inner.code(), self::budget(budget)?, Some(&self.inner)).py()?;
        cert_to_py(py, &cert)
    }

    fn __repr__(&self) -> String {
        format!("GrsSpec(q={}, n={}, k={})", self.inner.field().order(), self.n(), self.k())
    }
}

/// A constructed, certified code with a one-dimensional hull.
#[pyclass(name = "HullCode", module = "hullforge", frozen)]
struct PyHullCode {
    inner: hullforge::hull::HullCode,
    budget: u64,
}

#[pymethods]
impl PyHullCode {
    #[getter]
    fn family(&self) -> String {
        self.inner.family_name()
    }

    #[getter]
    fn params(&self) -> String {
        self.inner.params().compact()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    /// Minimum distance: an int, `"structural"`, or None.
    #[getter]
    fn d<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        d_to_py(py, self.cert().d)
    }

    #[getter]
    fn hull_dim(&self) -> usize {
        self.cert().hull_dim
    }

    #[getter]
    fn is_mds(&self) -> bool {
        self.cert().is_mds
    }

    #[getter]
    fn spec(&self) -> PyGrsSpec {
        PyGrsSpec { inner: self.inner.spec.clone() }
    }

    #[getter]
    fn hull_witness(&self) -> Vec<u32> {
        indices(&self.inner.hull_witness)
    }

    fn certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        cert_to_py(py, self.cert())
    }

    fn generator(&self) -> Vec<Vec<u32>> {
        matrix_to_indices(&self.inner.spec.generator())
    }

    fn dual(&self) -> PyResult<PyHullCode> {
        Ok(PyHullCode {
            inner: dualize(&self.inner, self.budget).py()?,
            budget: self.budget,
        })
    }

    /// The JSON artifact written by `hullforge construct`.
    fn to_json(&self) -> String {
        Artifact::from_hull(&self.inner).to_json()
    }

    fn to_text(&self) -> String {
        matrix_to_text(&self.inner.spec.generator())
    }

    fn __repr__(&self) -> String {
        let c = self.cert();
        format!("HullCode({} {}: [{}, {}, {}], hull {})", self.family(), self.params(), c.n, c.k, c.d, c.hull_dim)
    }
}

impl PyHullCode {
    fn cert(&self) -> &Certificate {
        self.inner.cert.as_ref().expect("constructed codes are certified")
    }
}

/// Builds and certifies a code from a named family. Parameters mirror the
/// command-line flags (`N` is the length for families that derive it).
#[pyfunction]
#[pyo3(signature = (
    q, family, *, n=None, N=None, s=1, t=None, r=None, ell=None, variant=None,
    extend=false, dual=false, field=None, budget=None
))]
#[allow(non_snake_case, clippy::too_many_arguments)]
fn construct(
    q: Option<u64>,
    family: &str,
    n: Option<usize>,
    N: Option<usize>,
    s: usize,
    t: Option<usize>,
    r: Option<u32>,
    ell: Option<u32>,
    variant: Option<Bound<'_, PyAny>>,
    extend: bool,
    dual: bool,
    field: Option<PyField>,
    budget: Option<u64>,
) -> PyResult<PyHullCode> {
    let f = match (field, q) {
        (Some(f), _) => f.inner,
        (None, Some(q)) => GaloisField::of_order(q).py()?,
        (None, None) => return Err(InputError::new_err("give q or field")),
    };
    let variant = variant.map(|v| v.str().map(|s| s.to_string())).transpose()?;
    let params = Params {
        q: f.order(),
        n,
        big_n: N,
        s,
        t,
        r,
        ell,
        variant,
        extend,
        dual,
    };
    let c = Construction::from_params(family, &params).py()?;
    let budget = self::budget(budget)?;
    Ok(PyHullCode {
        inner: construct_with_dual(&f, &c, dual, budget).py()?,
        budget,
    })
}

/// Certificate of the row space of `rows` (element indices).
#[pyfunction]
#[pyo3(signature = (field, rows, budget=None))]
fn certify<'py>(py: Python<'py>, field: &PyField, rows: Vec<Vec<u32>>, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let m = hullforge::artifact::matrix_from_indices(&field.inner, &rows).py()?;
    let cert = inspect(&row_space(&m), self::budget(budget)?, None).py()?;
    cert_to_py(py, &cert)
}

/// Verifies a JSON artifact or a text matrix, as `hullforge verify` does.
/// Construction records are re-certified with their hull witness; a failure
/// raises CertificationError. Returns the certificate; `ok` tells whether
/// the code is a one-dimensional-hull MDS code.
#[pyfunction]
#[pyo3(signature = (text, field=None, budget=None))]
fn verify<'py>(py: Python<'py>, text: &str, field: Option<PyField>, budget: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let budget = self::budget(budget)?;
    let art = if text.trim_start().starts_with('{') {
        parse_json_matrix(text).py()?
    } else {
        let f = match (field, text_field_header(text).py()?) {
            (Some(f), _) => f.inner,
            (None, Some(desc)) => desc.build().py()?,
            (None, None) => return Err(InputError::new_err("text matrix without a field")),
        };
        Artifact::from_matrix(&parse_text_matrix(&f, text).py()?)
    };
    let cert = match art.hull_code().py()? {
        Some(mut hc) => hc.certify(budget).py()?.clone(),
        None => inspect(&row_space(&art.generator().py()?), budget, None).py()?,
    };
    let d = cert_to_py(py, &cert)?;
    d.set_item("ok", cert.is_hull_one_mds())?;
    Ok(d)
}

/// The atlas table as CSV (or markdown) text.
#[pyfunction]
#[pyo3(signature = (qs, max_n=24, families=None, format="csv", budget=None))]
fn atlas(qs: Vec<u64>, max_n: usize, families: Option<Vec<String>>, format: &str, budget: Option<u64>) -> PyResult<String> {
    let format = match format {
        "csv" => TableFormat::Csv,
        "markdown" => TableFormat::Markdown,
        other => return Err(InputError::new_err(format!("unknown format {other}"))),
    };
    atlas_table(&qs, max_n, families.as_deref(), self::budget(budget)?, format).py()
}

/// The atlas rows as a list of dicts.
#[pyfunction]
#[pyo3(signature = (qs, max_n=24, families=None, budget=None))]
fn atlas_rows<'py>(
    py: Python<'py>,
    qs: Vec<u64>,
    max_n: usize,
    families: Option<Vec<String>>,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyList>> {
    let budget = self::budget(budget)?;
    let mut rows = Vec::new();
    for q in qs {
        let f = GaloisField::of_order(q).py()?;
        rows.extend(atlas_rows_for(&f, max_n, families.as_deref(), budget));
    }
    sort_rows(&mut rows);
    let out = PyList::empty(py);
    for r in rows {
        let d = PyDict::new(py);
        d.set_item("q", r.q)?;
        d.set_item("family", r.family)?;
        d.set_item("params", r.params)?;
        d.set_item("N", r.n)?;
        d.set_item("K", r.k)?;
        d.set_item("d", d_to_py(py, r.d)?)?;
        d.set_item("certified", r.certified)?;
        d.set_item("reason", r.reason)?;
        out.append(d)?;
    }
    Ok(out)
}

#[pymodule]
#[pyo3(name = "hullforge")]
fn hullforge_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyField>()?;
    m.add_class::<PyGrsSpec>()?;
    m.add_class::<PyHullCode>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(atlas, m)?)?;
    m.add_function(wrap_pyfunction!(atlas_rows, m)?)?;
    m.add("HullforgeError", py.get_type::<HullforgeError>())?;
    m.add("PreconditionError", py.get_type::<PreconditionError>())?;
    m.add("CertificationError", py.get_type::<CertificationError>())?;
    m.add("InputError", py.get_type::<InputError>())?;
    Ok(())
}

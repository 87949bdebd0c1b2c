//! Python bindings: load or build definition bundles, run suites, inspect
//! MHAs and coactions, and construct smash coproducts.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mhcheck::bundle::{Bundle, LoadOptions, Terms};
use mhcheck::cli::{smash_definition, SmashOutcome};
use mhcheck::coaction::{self, Coaction};
use mhcheck::gallery::{make, make::NAMES, GallerySpec};
use mhcheck::mhopf::{self, Mha};
use mhcheck::report::{CheckReport, ReportSet};
use mhcheck::window::Sampling;
use mhcheck::Error;

create_exception!(mhcheck_py, MhcheckError, PyException);
create_exception!(mhcheck_py, PreconditionError, MhcheckError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Usage(_) | Error::Parse { .. } => PyValueError::new_err(e.to_string()),
        other => MhcheckError::new_err(other.to_string()),
    }
}

fn sampling(samples: Option<usize>, seed: u64) -> Sampling {
    Sampling { samples, seed }
}

/// Outcome of one or more suites.
#[pyclass(name = "ReportSet", module = "mhcheck_py", frozen)]
pub struct PyReportSet {
    inner: ReportSet,
}

impl PyReportSet {
    fn new(reports: Vec<CheckReport>) -> PyReportSet {
        PyReportSet {
            inner: ReportSet::new(reports),
        }
    }
}

#[pymethods]
impl PyReportSet {
    /// True when every suite passed or failed as declared.
    #[getter]
    fn ok(&self) -> bool {
        self.inner.status.is_ok()
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.as_str()
    }

    /// (suite, subject, status) for each report.
    fn statuses(&self) -> Vec<(String, String, &'static str)> {
        self.inner
            .reports
            .iter()
            .map(|r| (r.suite.clone(), r.subject.clone(), r.status.as_str()))
            .collect()
    }

    /// Input tuples of every recorded witness, in report order.
    fn witnesses(&self) -> Vec<Vec<String>> {
        self.inner.reports.iter().flat_map(|r| r.witnesses().map(|w| w.inputs.clone())).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.reports.len()
    }

    fn __repr__(&self) -> String {
        format!("<ReportSet {} ({} reports)>", self.status(), self.inner.reports.len())
    }
}

/// A multiplier Hopf algebra from a bundle.
#[pyclass(name = "Mha", module = "mhcheck_py", frozen)]
pub struct PyMha {
    inner: Mha,
}

#[pymethods]
impl PyMha {
    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    #[getter]
    fn is_dense(&self) -> bool {
        self.inner.is_dense()
    }

    /// Labels of the basis, or of the window for rule-backed algebras.
    fn basis(&self) -> Vec<String> {
        self.inner.alg.window().iter().map(|k| self.inner.label(k)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.alg.window().len()
    }

    /// Coassociativity, counit, antipode, covering consistency, Δ homomorphism,
    /// T-bijectivity and regularity.
    #[pyo3(signature = (samples=None, seed=0))]
    fn hopf(&self, samples: Option<usize>, seed: u64) -> PyReportSet {
        PyReportSet::new(mhopf::hopf_suite(&self.inner, &sampling(samples, seed)))
    }

    #[pyo3(signature = (samples=None, seed=0))]
    fn bialgebra(&self, samples: Option<usize>, seed: u64) -> PyReportSet {
        PyReportSet::new(mhopf::bialgebra_suite(&self.inner, &sampling(samples, seed)))
    }

    fn __repr__(&self) -> String {
        format!("<Mha {} over {}>", self.inner.name, self.inner.field())
    }
}

/// A (partial) coaction of A on Y.
#[pyclass(name = "Coaction", module = "mhcheck_py", frozen)]
pub struct PyCoaction {
    inner: Coaction,
}

#[pymethods]
impl PyCoaction {
    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    /// (rank, size) of the matrix of T: Y⊗A → A⊗Y.
    fn t_rank(&self) -> PyResult<(usize, usize)> {
        coaction::t_rank(&self.inner).map_err(to_py)
    }

    /// One of global, partial, symmetric, globality, t_bijective.
    #[pyo3(signature = (suite, samples=None, seed=0))]
    fn check(&self, suite: &str, samples: Option<usize>, seed: u64) -> PyResult<PyReportSet> {
        let s = sampling(samples, seed);
        let cc = &self.inner;
        let report = match suite {
            "global" => coaction::check_global_comodule(cc, &s),
            "partial" => coaction::check_partial_axioms(cc, &s),
            "symmetric" => coaction::check_symmetric_axioms(cc, &s),
            "globality" => coaction::check_globality(cc, &s),
            "t_bijective" => coaction::check_t_bijective(cc, &s),
            other => return Err(PyValueError::new_err(format!("unknown coaction suite {other:?}"))),
        };
        Ok(PyReportSet::new(vec![report]))
    }

    fn __repr__(&self) -> String {
        format!("<Coaction {}>", self.inner.name)
    }
}

/// A definition file with every structure built.
#[pyclass(name = "Bundle", module = "mhcheck_py", frozen)]
pub struct PyBundle {
    inner: Bundle,
}

fn spec_from(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<GallerySpec> {
    let mut spec = GallerySpec::new(name);
    if let Some(params) = params {
        for (k, v) in params.iter() {
            spec = spec.with(&k.extract::<String>()?, v.str()?.to_str()?);
        }
    }
    Ok(spec)
}

#[pymethods]
impl PyBundle {
    /// Parses a definition file; `window` overrides the radius of rule-backed families.
    #[staticmethod]
    #[pyo3(signature = (text, window=None))]
    fn from_json(text: &str, window: Option<i64>) -> PyResult<PyBundle> {
        let inner = Bundle::from_json_str(text, LoadOptions { window }).map_err(to_py)?;
        Ok(PyBundle { inner })
    }

    /// Builds a gallery bundle, e.g. `Bundle.gallery("A_G", group="Z4", subgroup="0,2")`.
    #[staticmethod]
    #[pyo3(signature = (name, **params))]
    fn gallery(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<PyBundle> {
        let doc = make(&spec_from(name, params)?).map_err(to_py)?;
        let inner = Bundle::load(doc, LoadOptions::default()).map_err(to_py)?;
        Ok(PyBundle { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.doc.name.clone()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field.to_string()
    }

    fn to_json(&self) -> String {
        self.inner.doc.to_json()
    }

    fn mha_ids(&self) -> Vec<String> {
        self.inner.mhas.keys().cloned().collect()
    }

    fn coaction_ids(&self) -> Vec<String> {
        self.inner.coactions.keys().cloned().collect()
    }

    fn mha(&self, id: &str) -> PyResult<PyMha> {
        let m = self.inner.mhas.get(id).ok_or_else(|| PyKeyError::new_err(id.to_string()))?;
        Ok(PyMha { inner: m.clone() })
    }

    fn coaction(&self, id: &str) -> PyResult<PyCoaction> {
        let c = self.inner.coactions.get(id).ok_or_else(|| PyKeyError::new_err(id.to_string()))?;
        Ok(PyCoaction { inner: c.clone() })
    }

    /// (suite, target, expect) for the requests selected by `suite` (a name or prefix).
    #[pyo3(signature = (suite=None))]
    fn requests(&self, suite: Option<&str>) -> PyResult<Vec<(String, String, String)>> {
        let reqs = self.inner.requests(suite).map_err(to_py)?;
        Ok(reqs
            .into_iter()
            .map(|r| (r.suite, r.target, format!("{:?}", r.expect).to_lowercase()))
            .collect())
    }

    /// Runs the requested suites, as `mhcheck verify` does.
    #[pyo3(signature = (suite=None, samples=None, seed=0))]
    fn verify(&self, py: Python<'_>, suite: Option<&str>, samples: Option<usize>, seed: u64) -> PyResult<PyReportSet> {
        let reqs = self.inner.requests(suite).map_err(to_py)?;
        let bundle = &self.inner;
        let reports = py.detach(|| bundle.run(&reqs, &sampling(samples, seed)));
        Ok(PyReportSet::new(reports))
    }

    /// The smash coproduct C_b as a new bundle with one dense MHA "smash".
    /// Raises PreconditionError with the failing report as text when A is not
    /// commutative or the coaction is not a partial comodule bialgebra.
    #[pyo3(signature = (coaction=None, b=None, seed=0))]
    fn smash(&self, coaction: Option<&str>, b: Option<&str>, seed: u64) -> PyResult<PyBundle> {
        let b: Option<Terms> = match b {
            Some(text) => Some(serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("b: {e}")))?),
            None => None,
        };
        match smash_definition(&self.inner, coaction, b.as_ref(), &sampling(None, seed)).map_err(to_py)? {
            SmashOutcome::Built { doc, .. } => Ok(PyBundle {
                inner: Bundle::load(doc, LoadOptions::default()).map_err(to_py)?,
            }),
            SmashOutcome::Unmet(report) => Err(PreconditionError::new_err(report.to_text())),
        }
    }

    fn __repr__(&self) -> String {
        format!("<Bundle {} over {}>", self.inner.doc.name, self.inner.field)
    }
}

/// Names accepted by `Bundle.gallery`.
#[pyfunction]
fn gallery_names() -> Vec<&'static str> {
    NAMES.to_vec()
}

/// The definition file of a gallery bundle as JSON text.
#[pyfunction]
#[pyo3(signature = (name, **params))]
fn gallery_json(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<String> {
    Ok(make(&spec_from(name, params)?).map_err(to_py)?.to_json())
}

#[pymodule]
fn mhcheck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBundle>()?;
    m.add_class::<PyMha>()?;
    m.add_class::<PyCoaction>()?;
    m.add_class::<PyReportSet>()?;
    m.add_function(wrap_pyfunction!(gallery_names, m)?)?;
    m.add_function(wrap_pyfunction!(gallery_json, m)?)?;
    m.add("MhcheckError", m.py().get_type::<MhcheckError>())?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    Ok(())
}

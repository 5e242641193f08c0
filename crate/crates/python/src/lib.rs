//! Python bindings. Rationals cross the boundary as strings such as `"-3/4"`.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use liecorr::collection::{self, MlsDecomposition};
use liecorr::format;
use liecorr::group::{self, GroupElement};
use liecorr::lie::{self as lie_mod};
use liecorr::lyndon;
use liecorr::models::{self, ModelVector, SCLieAlgebra};
use liecorr::scalar::{parse_rational, Rational};
use liecorr::terms::{self, MixedTerm};
use liecorr::verify::{self, VerifyOptions};
use liecorr::{TruncatedSeries, Word};

create_exception!(pyliecorr, LiecorrError, PyException);

fn err(e: liecorr::Error) -> PyErr {
    LiecorrError::new_err(format!("{}: {e}", e.kind()))
}

fn rationals(xs: &[String]) -> PyResult<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s).map_err(err)).collect()
}

fn vector(xs: &[String]) -> PyResult<ModelVector> {
    Ok(ModelVector::new(rationals(xs)?))
}

fn strings(v: &ModelVector) -> Vec<String> {
    format::vector_to_strings(v)
}

/// Truncated noncommutative power series with rational coefficients.
#[pyclass(name = "Series", module = "pyliecorr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(TruncatedSeries<Rational>);

#[pymethods]
impl PySeries {
    /// `terms` maps words (lists of letters) to coefficient strings.
    #[new]
    #[pyo3(signature = (generators, truncation, terms = Vec::new()))]
    fn new(
        generators: usize,
        truncation: usize,
        terms: Vec<(Vec<usize>, String)>,
    ) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(w, c)| Ok((Word::new(w), parse_rational(&c).map_err(err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        TruncatedSeries::from_terms(generators, truncation, terms)
            .map(PySeries)
            .map_err(err)
    }

    #[staticmethod]
    fn generator(generators: usize, truncation: usize, i: usize) -> Self {
        PySeries(TruncatedSeries::generator(generators, truncation, i))
    }

    #[staticmethod]
    fn one(generators: usize, truncation: usize) -> Self {
        PySeries(TruncatedSeries::one(generators, truncation))
    }

    /// Reads a JSON or text series document.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let doc = format::parse_series_doc(text).map_err(err)?;
        format::series_from_doc(&doc).map(PySeries).map_err(err)
    }

    fn to_json(&self) -> String {
        format::to_json(&format::series_to_doc(&self.0))
    }

    fn to_text(&self) -> String {
        format::series_doc_to_text(&format::series_to_doc(&self.0))
    }

    #[getter]
    fn generators(&self) -> usize {
        self.0.generators()
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.0.truncation()
    }

    fn terms(&self) -> Vec<(Vec<usize>, String)> {
        self.0
            .iter()
            .map(|(w, c)| (w.letters().to_vec(), c.to_string()))
            .collect()
    }

    fn coeff(&self, word: Vec<usize>) -> String {
        self.0.coeff(&Word::new(word)).to_string()
    }

    /// Smallest degree in the support, `None` for zero.
    fn valuation(&self) -> Option<usize> {
        self.0.valuation().finite()
    }

    fn __add__(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.add(&other.0).map(PySeries).map_err(err)
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.sub(&other.0).map(PySeries).map_err(err)
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.mul(&other.0).map(PySeries).map_err(err)
    }

    fn __neg__(&self) -> PySeries {
        PySeries(self.0.neg())
    }

    fn scale(&self, r: &str) -> PyResult<PySeries> {
        Ok(PySeries(self.0.scale(&parse_rational(r).map_err(err)?)))
    }

    fn bracket(&self, other: &PySeries) -> PyResult<PySeries> {
        self.0.bracket(&other.0).map(PySeries).map_err(err)
    }

    fn truncate(&self, n: usize) -> PySeries {
        PySeries(self.0.truncate(n))
    }

    fn exp(&self) -> PyResult<PySeries> {
        group::exp(&self.0)
            .map(|g| PySeries(g.into_series()))
            .map_err(err)
    }

    fn log(&self) -> PyResult<PySeries> {
        let g = GroupElement::new(self.0.clone()).map_err(err)?;
        Ok(PySeries(group::log(&g)))
    }

    fn power(&self, r: &str) -> PyResult<PySeries> {
        let g = GroupElement::new(self.0.clone()).map_err(err)?;
        Ok(PySeries(
            g.pow(&parse_rational(r).map_err(err)?).into_series(),
        ))
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.0)
    }
}

/// Element of the truncated free Lie algebra in Lyndon coordinates.
#[pyclass(name = "LieElement", module = "pyliecorr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLie(liecorr::LieElement<Rational>);

#[pymethods]
impl PyLie {
    #[new]
    #[pyo3(signature = (generators, truncation, coords = Vec::new()))]
    fn new(
        generators: usize,
        truncation: usize,
        coords: Vec<(Vec<usize>, String)>,
    ) -> PyResult<Self> {
        let coords = coords
            .into_iter()
            .map(|(w, c)| Ok((Word::new(w), parse_rational(&c).map_err(err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        liecorr::LieElement::from_coords(generators, truncation, coords)
            .map(PyLie)
            .map_err(err)
    }

    #[staticmethod]
    fn generator(generators: usize, truncation: usize, i: usize) -> Self {
        PyLie(liecorr::LieElement::generator(generators, truncation, i))
    }

    /// Converts a series, failing unless it is a Lie element.
    #[staticmethod]
    fn from_series(s: &PySeries) -> PyResult<Self> {
        lie_mod::series_to_lie(&s.0).map(PyLie).map_err(err)
    }

    fn to_series(&self) -> PySeries {
        PySeries(self.0.to_series())
    }

    fn to_json(&self) -> String {
        format::to_json(&format::lie_to_doc(&self.0))
    }

    fn coords(&self) -> Vec<(Vec<usize>, String)> {
        self.0
            .coords()
            .iter()
            .map(|(w, c)| (w.letters().to_vec(), c.to_string()))
            .collect()
    }

    fn __add__(&self, other: &PyLie) -> PyResult<PyLie> {
        self.0.add(&other.0).map(PyLie).map_err(err)
    }

    fn __sub__(&self, other: &PyLie) -> PyResult<PyLie> {
        self.0.sub(&other.0).map(PyLie).map_err(err)
    }

    fn __neg__(&self) -> PyLie {
        PyLie(self.0.neg())
    }

    fn scale(&self, r: &str) -> PyResult<PyLie> {
        Ok(PyLie(self.0.scale(&parse_rational(r).map_err(err)?)))
    }

    fn bracket(&self, other: &PyLie) -> PyResult<PyLie> {
        self.0.bracket(&other.0).map(PyLie).map_err(err)
    }

    fn exp_ad(&self, other: &PyLie) -> PyResult<PyLie> {
        self.0.exp_ad(&other.0).map(PyLie).map_err(err)
    }

    fn __eq__(&self, other: &PyLie) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("LieElement({})", self.0)
    }
}

/// Nilpotent Lie algebra over ℚ given by structure constants.
#[pyclass(name = "Algebra", module = "pyliecorr", frozen, skip_from_py_object)]
struct PyAlgebra(SCLieAlgebra);

#[pymethods]
impl PyAlgebra {
    /// `brackets` lists `(i, j, coeffs)` with `[e_i, e_j] = Σ coeffs[k] e_k`.
    #[new]
    #[pyo3(signature = (dimension, brackets = Vec::new(), labels = None))]
    fn new(
        dimension: usize,
        brackets: Vec<(usize, usize, Vec<String>)>,
        labels: Option<Vec<String>>,
    ) -> PyResult<Self> {
        let entries = brackets
            .into_iter()
            .map(|(i, j, c)| {
                Ok(models::BracketEntry {
                    i,
                    j,
                    coeffs: rationals(&c)?,
                })
            })
            .collect::<PyResult<Vec<_>>>()?;
        SCLieAlgebra::new(dimension, labels, &entries)
            .map(PyAlgebra)
            .map_err(err)
    }

    /// `heisenberg`, `abelian<d>` or `free-<m>-<c>`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        format::builtin_algebra(name)
            .map(PyAlgebra)
            .ok_or_else(|| LiecorrError::new_err(format!("Parse: unknown algebra {name:?}")))
    }

    #[staticmethod]
    fn free_nilpotent(m: usize, c: usize) -> Self {
        PyAlgebra(SCLieAlgebra::free_nilpotent(m, c))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: format::AlgebraDoc = format::from_json(text).map_err(err)?;
        format::algebra_from_doc(&doc).map(PyAlgebra).map_err(err)
    }

    fn to_json(&self) -> String {
        format::to_json(&format::algebra_to_doc(&self.0))
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn nilpotency_class(&self) -> usize {
        self.0.class()
    }

    fn lower_central_dims(&self) -> Vec<usize> {
        self.0
            .lower_central_series()
            .iter()
            .map(|s| s.dim())
            .collect()
    }

    fn bracket(&self, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
        let (a, b) = (vector(&a)?, vector(&b)?);
        self.0.check_vector(&a).map_err(err)?;
        self.0.check_vector(&b).map_err(err)?;
        Ok(strings(&self.0.bracket(&a, &b)))
    }

    /// Group product of `Gr(A)`.
    fn gr_mul(&self, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
        let (a, b) = (vector(&a)?, vector(&b)?);
        self.0.check_vector(&a).map_err(err)?;
        self.0.check_vector(&b).map_err(err)?;
        Ok(strings(&self.0.gr_mul(&a, &b)))
    }

    /// Checks that the group operations alone reproduce this algebra.
    fn round_trip(&self) -> bool {
        models::lie_from_group_ops(&self.0).is_ok_and(|b| b == self.0)
    }
}

#[pyfunction]
fn bch(a: &PyLie, b: &PyLie) -> PyResult<PyLie> {
    group::bch(&a.0, &b.0).map(PyLie).map_err(err)
}

/// Ordered Lyndon-commutator factors `(word, exponent)` of a group-like series.
#[pyfunction]
fn collect(q: &PySeries) -> PyResult<Vec<(Vec<usize>, String)>> {
    let g = GroupElement::new(q.0.clone()).map_err(err)?;
    let d = collection::collect(&g).map_err(err)?;
    Ok(d.factors()
        .iter()
        .map(|(w, c)| (w.letters().to_vec(), c.to_string()))
        .collect())
}

#[pyfunction]
fn expand(
    factors: Vec<(Vec<usize>, String)>,
    generators: usize,
    truncation: usize,
) -> PyResult<PySeries> {
    let factors = factors
        .into_iter()
        .map(|(w, c)| Ok((Word::new(w), parse_rational(&c).map_err(err)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let d = MlsDecomposition::new(factors).map_err(err)?;
    collection::expand(&d, generators, truncation)
        .map(|g| PySeries(g.into_series()))
        .map_err(err)
}

#[pyfunction]
fn lyndon_words(m: usize, max_degree: usize) -> Vec<Vec<usize>> {
    lyndon::enumerate_lyndon(m, max_degree)
        .into_iter()
        .map(Word::into_letters)
        .collect()
}

#[pyfunction]
fn verify_hall_petresco(n: usize, c: usize) -> PyResult<bool> {
    if n < 2 || c < 2 {
        return Err(err(liecorr::Error::TruncationTooSmall {
            got: n.min(c),
            need: 2,
        }));
    }
    Ok(collection::verify_hall_petresco(n, c))
}

/// Compiles a mixed term such as `"x0 * [x0, x1]"`.
#[pyfunction]
fn term_to_lie(term: &str, generators: usize, truncation: usize) -> PyResult<PyLie> {
    let t = MixedTerm::parse(term).map_err(err)?;
    terms::term_to_lie(&t, generators, truncation)
        .map(PyLie)
        .map_err(err)
}

/// Solves `g₁ f^{λ₁} ⋯ g_n f^{λ_n} = 1` in `Gr(A)`.
#[pyfunction]
fn solve_group_equation(
    algebra: &PyAlgebra,
    gs: Vec<Vec<String>>,
    lambdas: Vec<String>,
) -> PyResult<Vec<String>> {
    let gs = gs.iter().map(|g| vector(g)).collect::<PyResult<Vec<_>>>()?;
    for g in &gs {
        algebra.0.check_vector(g).map_err(err)?;
    }
    let ls = rationals(&lambdas)?;
    models::solve_group_equation(&algebra.0, &gs, &ls)
        .map(|f| strings(&f))
        .map_err(err)
}

/// Runs a property suite; returns `(passed, failed, first_failure)`.
#[pyfunction]
#[pyo3(signature = (suite, seed = liecorr::random::DEFAULT_SEED, cases = 100))]
fn run_suite(suite: &str, seed: u64, cases: usize) -> PyResult<(usize, usize, Option<String>)> {
    let opts = VerifyOptions {
        seed,
        cases,
        ..VerifyOptions::default()
    };
    let r = verify::run_suite(suite, &opts).map_err(err)?;
    Ok((r.passed, r.failed, r.first_failure))
}

#[pymodule]
fn pyliecorr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LiecorrError", m.py().get_type::<LiecorrError>())?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyLie>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(bch, m)?)?;
    m.add_function(wrap_pyfunction!(collect, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(lyndon_words, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hall_petresco, m)?)?;
    m.add_function(wrap_pyfunction!(term_to_lie, m)?)?;
    m.add_function(wrap_pyfunction!(solve_group_equation, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}

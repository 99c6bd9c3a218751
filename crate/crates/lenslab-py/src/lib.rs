//! Python bindings: the main types (categories, functors, lenses) and the
//! operations over them, driven in-process. Values cross the boundary as
//! wrapped immutable handles; JSON documents use the same on-disk format as
//! the CLI, so the two interoperate file-for-file.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lenslab::constructions as cons;
use lenslab::io::{parse_document, serialize_document, Document};
use lenslab::lens as lens_ops;
use lenslab::oracle;
use lenslab::{fixtures, seeds};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An explicit finite category, validated on construction.
#[pyclass(name = "Category", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCategory {
    inner: lenslab::FinCat,
}

/// A functor between finite categories, validated on construction.
#[pyclass(name = "Functor", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFunctor {
    inner: lenslab::fincat::Functor,
}

/// A delta lens: a functor with a lawful lifting table.
#[pyclass(name = "Lens", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLens {
    inner: lenslab::Lens,
}

#[pymethods]
impl PyCategory {
    /// Parse a category document (the same JSON format the CLI reads).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_document(text, None).map_err(err)? {
            Document::Category(c) => Ok(PyCategory { inner: c }),
            other => Err(err(format!("expected a category document, found {}", other.kind()))),
        }
    }

    fn to_json(&self) -> String {
        serialize_document(&Document::Category(self.inner.clone()))
    }

    fn objects(&self) -> Vec<String> {
        self.inner.objects().iter().map(|o| o.as_str().to_owned()).collect()
    }

    fn morphisms(&self) -> Vec<(String, String, String)> {
        self.inner
            .morphisms()
            .iter()
            .map(|m| {
                (m.name.as_str().to_owned(), m.src.as_str().to_owned(), m.tgt.as_str().to_owned())
            })
            .collect()
    }

    fn is_discrete(&self) -> bool {
        self.inner.is_discrete()
    }

    fn is_thin(&self) -> bool {
        self.inner.is_thin()
    }

    fn opposite(&self) -> Self {
        PyCategory { inner: self.inner.opposite() }
    }

    fn to_dot(&self) -> PyResult<String> {
        lenslab::dot::export_dot(&Document::Category(self.inner.clone())).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Category({} objects, {} morphisms)",
            self.inner.objects().len(),
            self.inner.morphisms().len()
        )
    }
}

#[pymethods]
impl PyFunctor {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_document(text, None).map_err(err)? {
            Document::Functor(f) => Ok(PyFunctor { inner: f }),
            other => Err(err(format!("expected a functor document, found {}", other.kind()))),
        }
    }

    #[staticmethod]
    fn identity(cat: &PyCategory) -> Self {
        PyFunctor { inner: lenslab::fincat::Functor::identity(&cat.inner) }
    }

    fn to_json(&self) -> String {
        serialize_document(&Document::Functor(self.inner.clone()))
    }

    fn source(&self) -> PyCategory {
        PyCategory { inner: self.inner.source().clone() }
    }

    fn target(&self) -> PyCategory {
        PyCategory { inner: self.inner.target().clone() }
    }

    fn on_object(&self, obj: &str) -> PyResult<String> {
        let key = lenslab::ObjId::from(obj);
        if !self.inner.source().has_object(&key) {
            return Err(err(format!("unknown object {obj:?}")));
        }
        Ok(self.inner.on_object(&key).as_str().to_owned())
    }

    fn is_discrete_opfibration(&self) -> bool {
        lens_ops::is_discrete_opfibration(&self.inner).holds
    }

    fn is_cosieve(&self) -> bool {
        lens_ops::is_cosieve(&self.inner)
    }

    /// The unique lens structure on a discrete opfibration.
    fn to_lens(&self) -> PyResult<PyLens> {
        lens_ops::lens_from_dof(&self.inner).map(|l| PyLens { inner: l }).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Functor({} -> {} objects)",
            self.inner.source().objects().len(),
            self.inner.target().objects().len()
        )
    }
}

#[pymethods]
impl PyLens {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_document(text, None).map_err(err)? {
            Document::Lens(l) => Ok(PyLens { inner: l }),
            other => Err(err(format!("expected a lens document, found {}", other.kind()))),
        }
    }

    #[staticmethod]
    fn identity(cat: &PyCategory) -> Self {
        PyLens { inner: lenslab::Lens::identity(&cat.inner) }
    }

    fn to_json(&self) -> String {
        serialize_document(&Document::Lens(self.inner.clone()))
    }

    fn functor(&self) -> PyFunctor {
        PyFunctor { inner: self.inner.functor().clone() }
    }

    fn source(&self) -> PyCategory {
        PyCategory { inner: self.inner.source().clone() }
    }

    fn target(&self) -> PyCategory {
        PyCategory { inner: self.inner.target().clone() }
    }

    /// The chosen lift of a codomain morphism at an object of the source.
    fn lift(&self, at: &str, over: &str) -> PyResult<String> {
        let key = (lenslab::ObjId::from(at), lenslab::MorId::from(over));
        self.inner
            .lift_table()
            .get(&key)
            .map(|m| m.as_str().to_owned())
            .ok_or_else(|| err(format!("no lift at ({at}, {over})")))
    }

    /// Sequential composition: `self` then `other`.
    fn then(&self, other: &PyLens) -> PyResult<PyLens> {
        self.inner.then(&other.inner).map(|l| PyLens { inner: l }).map_err(err)
    }

    fn is_mono(&self) -> bool {
        lens_ops::is_mono_lens(&self.inner)
    }

    fn is_epi(&self) -> bool {
        lens_ops::is_epi_lens(&self.inner)
    }

    fn is_iso(&self) -> bool {
        lens_ops::is_iso_lens(&self.inner)
    }

    /// Factor into a surjective-on-objects lens followed by a cosieve;
    /// returns `(epi, image, mono)`.
    fn factorise(&self) -> (PyLens, PyCategory, PyLens) {
        let fact = cons::factorise_lens(&self.inner);
        (
            PyLens { inner: fact.epi },
            PyCategory { inner: fact.image },
            PyLens { inner: fact.mono },
        )
    }

    /// Round-trip through the span presentation; always reproduces the
    /// lens exactly.
    fn triangle_roundtrip(&self) -> PyResult<PyLens> {
        let t = lens_ops::triangle_representation(&self.inner);
        lens_ops::lens_from_triangle(&t).map(|l| PyLens { inner: l }).map_err(err)
    }

    fn to_dot(&self) -> PyResult<String> {
        lenslab::dot::export_dot(&Document::Lens(self.inner.clone())).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Lens({} -> {} objects, {} lift rows)",
            self.inner.source().objects().len(),
            self.inner.target().objects().len(),
            self.inner.lift_table().len()
        )
    }
}

/// Named seed category from the bundled family.
#[pyfunction]
fn seed(name: &str) -> PyResult<PyCategory> {
    let cat = match name {
        "zero" => seeds::initial(),
        "one" => seeds::terminal(),
        "d2" => seeds::discrete_two(),
        "arrow2" => seeds::walking_arrow(),
        "square_poset" => seeds::square_poset(),
        "chain3" => seeds::chain3(),
        "parallel_pair" => seeds::parallel_pair(),
        "bool" => seeds::bool_poset(),
        "codesign_domain" => fixtures::codesign_domain(),
        other => return Err(err(format!("unknown seed {other:?}"))),
    };
    Ok(PyCategory { inner: cat })
}

#[pyfunction]
fn terminal_lens(cat: &PyCategory) -> PyLens {
    PyLens { inner: cons::terminal_lens(&cat.inner) }
}

#[pyfunction]
fn initial_lens(cat: &PyCategory) -> PyLens {
    PyLens { inner: cons::initial_lens(&cat.inner) }
}

/// Imported product cone: `(apex, proj_left, proj_right)`.
#[pyfunction]
fn imported_product(a: &PyCategory, b: &PyCategory) -> (PyCategory, PyLens, PyLens) {
    let cone = cons::imported_product(&a.inner, &b.inner);
    (
        PyCategory { inner: cone.apex.clone() },
        PyLens { inner: cone.legs[0].clone() },
        PyLens { inner: cone.legs[1].clone() },
    )
}

/// Imported pullback cone of a cospan: `(apex, proj_left, proj_right)`.
#[pyfunction]
fn imported_pullback(f: &PyLens, g: &PyLens) -> PyResult<(PyCategory, PyLens, PyLens)> {
    if f.inner.target() != g.inner.target() {
        return Err(err("imported pullback needs a common codomain"));
    }
    let cone = cons::imported_pullback(&f.inner, &g.inner);
    Ok((
        PyCategory { inner: cone.apex.clone() },
        PyLens { inner: cone.legs[0].clone() },
        PyLens { inner: cone.legs[1].clone() },
    ))
}

/// Equalise a parallel pair: `(object, inclusion)`.
#[pyfunction]
fn equalise(f: &PyLens, g: &PyLens) -> PyResult<(PyCategory, PyLens)> {
    if f.inner.source() != g.inner.source() || f.inner.target() != g.inner.target() {
        return Err(err("equaliser needs a parallel pair"));
    }
    let eq = cons::equaliser_lens(&f.inner, &g.inner);
    Ok((PyCategory { inner: eq.object }, PyLens { inner: eq.inclusion }))
}

/// Coproduct of two lenses with a common codomain:
/// `(coproduct, inj_left, inj_right, mediator)`.
#[pyfunction]
fn coproduct(f: &PyLens, g: &PyLens) -> PyResult<(PyCategory, PyLens, PyLens, PyLens)> {
    if f.inner.target() != g.inner.target() {
        return Err(err("coproduct mediator needs a common codomain"));
    }
    let result = cons::coproduct_lens(&f.inner, &g.inner);
    Ok((
        PyCategory { inner: result.coproduct },
        PyLens { inner: result.inj_left },
        PyLens { inner: result.inj_right },
        PyLens { inner: result.mediator },
    ))
}

fn bounds_from(max_objects: usize, max_morphisms: usize) -> oracle::Bounds {
    oracle::Bounds::new(max_objects, max_morphisms)
}

/// All lenses between two categories, in deterministic order.
#[pyfunction]
#[pyo3(signature = (a, b, max_objects = 4, max_morphisms = 12))]
fn enumerate_lenses(
    a: &PyCategory,
    b: &PyCategory,
    max_objects: usize,
    max_morphisms: usize,
) -> PyResult<Vec<PyLens>> {
    oracle::enumerate_lenses(&a.inner, &b.inner, &bounds_from(max_objects, max_morphisms))
        .map(|ls| ls.into_iter().map(|l| PyLens { inner: l }).collect())
        .map_err(err)
}

/// Count of functors between two categories.
#[pyfunction]
#[pyo3(signature = (a, b, max_objects = 4, max_morphisms = 12))]
fn count_functors(
    a: &PyCategory,
    b: &PyCategory,
    max_objects: usize,
    max_morphisms: usize,
) -> PyResult<usize> {
    oracle::enumerate_functors(&a.inner, &b.inner, &bounds_from(max_objects, max_morphisms))
        .map(|fs| fs.len())
        .map_err(err)
}

fn report_dict<'py>(py: Python<'py>, report: &oracle::OracleReport) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    let property = match report.property {
        oracle::PropertyTag::ProductUp => "product-UP",
        oracle::PropertyTag::PullbackUp => "pullback-UP",
        oracle::PropertyTag::EqualiserUp => "equaliser-UP",
        oracle::PropertyTag::CoproductUp => "coproduct-UP",
        oracle::PropertyTag::MonoCancel => "mono-cancel",
        oracle::PropertyTag::EpiCancel => "epi-cancel",
        oracle::PropertyTag::Uniqueness => "uniqueness",
        oracle::PropertyTag::Existence => "existence",
    };
    out.set_item("property", property)?;
    out.set_item("holds", report.verdict == oracle::Verdict::Holds)?;
    out.set_item("search_size", report.search_size)?;
    if let Some(w) = &report.witness {
        out.set_item("witness_context", w.context.clone())?;
        out.set_item(
            "witness",
            w.lenses.iter().map(|l| PyLens { inner: l.clone() }).collect::<Vec<_>>(),
        )?;
    }
    Ok(out)
}

/// Check the product universal property of the imported product of two
/// categories over the bundled test apexes.
#[pyfunction]
#[pyo3(signature = (a, b, max_objects = 4, max_morphisms = 12))]
fn check_universal_product<'py>(
    py: Python<'py>,
    a: &PyCategory,
    b: &PyCategory,
    max_objects: usize,
    max_morphisms: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let bounds = bounds_from(max_objects, max_morphisms);
    let cone = cons::imported_product(&a.inner, &b.inner);
    let apexes = seeds::test_apexes(&oracle::Bounds::default());
    let report = oracle::check_universal_product(&cone, &apexes, &bounds).map_err(err)?;
    report_dict(py, &report)
}

/// Left-cancellation verdict over the bundled test apexes, asserted to
/// agree with the structural predicate.
#[pyfunction]
fn brute_force_mono<'py>(py: Python<'py>, lens: &PyLens) -> PyResult<Bound<'py, PyDict>> {
    let bounds = oracle::Bounds::default();
    let apexes = seeds::test_apexes(&bounds);
    let report = oracle::brute_force_mono(&lens.inner, &apexes, &bounds).map_err(err)?;
    if (report.verdict == oracle::Verdict::Holds) != lens_ops::is_mono_lens(&lens.inner) {
        return Err(err("structural mono predicate disagrees with cancellation"));
    }
    report_dict(py, &report)
}

/// Right-cancellation verdict over the bundled test apexes.
#[pyfunction]
fn brute_force_epi<'py>(py: Python<'py>, lens: &PyLens) -> PyResult<Bound<'py, PyDict>> {
    let bounds = oracle::Bounds::default();
    let apexes = seeds::test_apexes(&bounds);
    let report = oracle::brute_force_epi(&lens.inner, &apexes, &bounds).map_err(err)?;
    if (report.verdict == oracle::Verdict::Holds) != lens_ops::is_epi_lens(&lens.inner) {
        return Err(err("structural epi predicate disagrees with cancellation"));
    }
    report_dict(py, &report)
}

/// The standard co-design opinion: `(domain, opinion, feasible, infeasible)`.
#[pyfunction]
fn codesign_example<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
    let p = fixtures::build_codesign_example();
    let out = PyDict::new(py);
    out.set_item("domain", PyCategory { inner: p.domain().clone() })?;
    out.set_item(
        "feasible",
        p.feasible().iter().map(|o| o.as_str().to_owned()).collect::<Vec<_>>(),
    )?;
    out.set_item(
        "infeasible",
        p.infeasible().iter().map(|o| o.as_str().to_owned()).collect::<Vec<_>>(),
    )?;
    out.set_item("opinion", PyLens { inner: p.opinion })?;
    Ok(out)
}

/// The editor stack: `(state, mode, keyboard, state_lens, mode_lens)`.
#[pyfunction]
fn state_machine_example<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
    let stack = fixtures::build_state_machine_example();
    let out = PyDict::new(py);
    out.set_item("state", PyCategory { inner: stack.state.clone() })?;
    out.set_item("mode", PyCategory { inner: stack.mode.clone() })?;
    out.set_item("keyboard", PyCategory { inner: stack.keyboard.clone() })?;
    out.set_item("state_lens", PyLens { inner: stack.state_lens.clone() })?;
    out.set_item("mode_lens", PyLens { inner: stack.mode_lens.clone() })?;
    out.set_item("composite", PyLens { inner: stack.composite() })?;
    Ok(out)
}

/// The boot-machine lens used by the factorisation demo.
#[pyfunction]
fn bios_os_example() -> PyLens {
    PyLens { inner: fixtures::bios_os_lens() }
}

#[pymodule]
fn lenslab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyCategory>()?;
    m.add_class::<PyFunctor>()?;
    m.add_class::<PyLens>()?;
    m.add_function(wrap_pyfunction!(seed, m)?)?;
    m.add_function(wrap_pyfunction!(terminal_lens, m)?)?;
    m.add_function(wrap_pyfunction!(initial_lens, m)?)?;
    m.add_function(wrap_pyfunction!(imported_product, m)?)?;
    m.add_function(wrap_pyfunction!(imported_pullback, m)?)?;
    m.add_function(wrap_pyfunction!(equalise, m)?)?;
    m.add_function(wrap_pyfunction!(coproduct, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_lenses, m)?)?;
    m.add_function(wrap_pyfunction!(count_functors, m)?)?;
    m.add_function(wrap_pyfunction!(check_universal_product, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_mono, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_epi, m)?)?;
    m.add_function(wrap_pyfunction!(codesign_example, m)?)?;
    m.add_function(wrap_pyfunction!(state_machine_example, m)?)?;
    m.add_function(wrap_pyfunction!(bios_os_example, m)?)?;
    Ok(())
}

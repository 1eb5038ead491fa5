//! Python bindings. Elements carry their group, so arithmetic needs no
//! group argument; mixing elements of different groups raises `ValueError`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use groupsmith::constructions::{
    dihedral, lemma7_subgroup, lemma8_construct, named_group_capped, prop1_embedding, WreathGroup,
};
use groupsmith::dihedral::{minus_one_is_square_mod_p, theorem1_trace, DihedralCopy};
use groupsmith::equations::{adjoin_nth_root, levin_solve, solve_in_group, PositiveEquation};
use groupsmith::group::DEFAULT_CLOSURE_CAP;
use groupsmith::universe::{min_overgroup_search, EmbeddingKind};
use groupsmith::{Element, Group, GroupError, Subgroup};

pyo3::create_exception!(groupsmith, ResourceCapError, PyRuntimeError);
pyo3::create_exception!(groupsmith, FalsifiedError, PyRuntimeError);

fn err(e: GroupError) -> PyErr {
    let msg = format!("{}: {e}", e.kind());
    match e {
        GroupError::ResourceCap(_) | GroupError::ClosureTooLarge { .. } => ResourceCapError::new_err(msg),
        GroupError::Falsified(_) | GroupError::LevinViolation(_) => FalsifiedError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

#[pyclass(name = "Group", module = "groupsmith", frozen, from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: Group,
}

#[pyclass(name = "Element", module = "groupsmith", frozen, from_py_object)]
#[derive(Clone)]
struct PyElement {
    group: Group,
    inner: Element,
}

impl PyGroup {
    fn wrap(&self, e: Element) -> PyElement {
        PyElement {
            group: self.inner.clone(),
            inner: e,
        }
    }
}

fn wrap(group: &Group, e: Element) -> PyElement {
    PyElement {
        group: group.clone(),
        inner: e,
    }
}

#[pymethods]
impl PyGroup {
    /// Named group such as "S3", "D7", "Z6" or "A4".
    #[new]
    #[pyo3(signature = (spec, cap = None))]
    fn new(spec: &str, cap: Option<usize>) -> PyResult<Self> {
        let inner = named_group_capped(spec, cap.unwrap_or(DEFAULT_CLOSURE_CAP)).map_err(err)?;
        Ok(PyGroup { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
    }

    fn identity(&self) -> PyElement {
        self.wrap(self.inner.identity())
    }

    fn generators(&self) -> Vec<PyElement> {
        self.inner.generators().iter().map(|g| self.wrap(g.clone())).collect()
    }

    /// All elements in the canonical order; the identity comes first.
    fn elements(&self) -> Vec<PyElement> {
        self.inner.enumerate().into_iter().map(|g| self.wrap(g)).collect()
    }

    fn element(&self, text: &str) -> PyResult<PyElement> {
        Ok(self.wrap(self.inner.parse_element(text).map_err(err)?))
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    /// Wreath product with Z_n.
    fn wreath(&self, n: usize) -> PyResult<PyGroup> {
        let w = WreathGroup::new(&self.inner, n).map_err(err)?;
        Ok(PyGroup {
            inner: w.group().clone(),
        })
    }
}

impl PyElement {
    fn same_group(&self, other: &PyElement) -> PyResult<()> {
        if self.group.id() == other.group.id() {
            Ok(())
        } else {
            Err(PyValueError::new_err("elements belong to different groups"))
        }
    }
}

#[pymethods]
impl PyElement {
    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup {
            inner: self.group.clone(),
        }
    }

    fn __str__(&self) -> String {
        self.group.render(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Element({:?} in {})", self.group.render(&self.inner), self.group.name())
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.same_group(other)?;
        Ok(wrap(&self.group, self.group.mul(&self.inner, &other.inner)))
    }

    fn __pow__(&self, e: i64, _modulo: Option<i64>) -> PyElement {
        wrap(&self.group, self.group.pow(&self.inner, e))
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.group.id() == other.group.id() && self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn inverse(&self) -> PyElement {
        wrap(&self.group, self.group.inverse(&self.inner))
    }

    fn order(&self) -> usize {
        self.group.element_order(&self.inner)
    }
}

/// Root of `g` in G wr Z2 together with the diagonal image of `g`.
#[pyfunction]
fn levin_root(g: &PyElement) -> PyResult<(PyElement, PyElement)> {
    let w = WreathGroup::new(&g.group, 2).map_err(err)?;
    let x = w.levin_root(&g.inner).map_err(err)?;
    Ok((wrap(w.group(), x), wrap(w.group(), w.diag_embed(&g.inner))))
}

/// n-th root of `g` in G wr Z_n together with the image of `g`.
#[pyfunction]
fn nth_root(g: &PyElement, n: usize) -> PyResult<(PyElement, PyElement)> {
    let (w, emb, x) = adjoin_nth_root(&g.group, &g.inner, n).map_err(err)?;
    Ok((wrap(w.group(), x), wrap(w.group(), emb.apply(&g.inner))))
}

/// Subgroup generated by the diagonal copy of G and the root of `g`.
#[pyfunction]
fn lemma7<'py>(py: Python<'py>, g: &PyElement) -> PyResult<Bound<'py, PyDict>> {
    let h = lemma7_subgroup(&g.group, &g.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("order", h.order())?;
    d.set_item("commutator_order", h.commutator.order())?;
    d.set_item("root", wrap(h.wreath.group(), h.root.clone()))?;
    Ok(d)
}

/// Inversion subgroup over the subgroup generated by `gens`, and the quotient when it is normal.
#[pyfunction]
fn lemma8<'py>(py: Python<'py>, group: &PyGroup, gens: Vec<PyElement>) -> PyResult<Bound<'py, PyDict>> {
    if gens.iter().any(|e| e.group.id() != group.inner.id()) {
        return Err(PyValueError::new_err("generators must belong to the group"));
    }
    let elems: Vec<Element> = gens.into_iter().map(|e| e.inner).collect();
    let n = group.inner.generate(&elems);
    let out = lemma8_construct(&group.inner, &n).map_err(err)?;
    let wr = &out.k.wreath;
    let d = PyDict::new(py);
    d.set_item("k_order", out.k.subgroup.order())?;
    d.set_item("k_normal", out.normality)?;
    d.set_item(
        "witness",
        out.witness.as_ref().map(|(k, w)| (wr.render(k), wr.render(w))),
    )?;
    d.set_item("quotient_order", out.quotient.as_ref().map(|q| q.group().order()))?;
    d.set_item("embedding_injective", out.quotient.as_ref().map(|q| q.embedding_injective()))?;
    Ok(d)
}

/// Overgroup chosen by the strategy search, with the root of `g` in it.
#[pyfunction]
fn prop1_embed<'py>(py: Python<'py>, g: &PyElement) -> PyResult<Bound<'py, PyDict>> {
    let e = prop1_embedding(&g.group, &g.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("strategy", e.strategy.to_string())?;
    d.set_item("order", e.group.order())?;
    d.set_item("root", wrap(&e.group, e.root.clone()))?;
    d.set_item("image", wrap(&e.group, e.embedding.apply(&g.inner)))?;
    Ok(d)
}

/// Solves g1*x*...*gn*x = 1. Returns `(x, verified)`; x lives in G wr Z_n
/// unless n = 1.
#[pyfunction]
#[pyo3(signature = (coefficients, cap = None))]
fn solve_positive(coefficients: Vec<PyElement>, cap: Option<u128>) -> PyResult<(PyElement, bool)> {
    let group = coefficients
        .first()
        .map(|c| c.group.clone())
        .ok_or_else(|| PyValueError::new_err("need at least one coefficient"))?;
    let eq = PositiveEquation::new(&group, coefficients.into_iter().map(|c| c.inner).collect()).map_err(err)?;
    let sol = levin_solve(&eq, cap, None).map_err(err)?;
    let ok = eq.is_solution(&sol.embedding, &sol.x);
    Ok((wrap(&sol.overgroup, sol.x), ok))
}

/// Least solution inside G itself, if any.
#[pyfunction]
fn solve_in(coefficients: Vec<PyElement>) -> PyResult<Option<PyElement>> {
    let group = coefficients
        .first()
        .map(|c| c.group.clone())
        .ok_or_else(|| PyValueError::new_err("need at least one coefficient"))?;
    let eq = PositiveEquation::new(&group, coefficients.into_iter().map(|c| c.inner).collect()).map_err(err)?;
    Ok(solve_in_group(&eq).map(|x| wrap(&group, x)))
}

/// Trace of the dihedral lower-bound argument for a root of `element` in D_p wr Z2, as JSON.
#[pyfunction]
#[pyo3(signature = (p, element = "s"))]
fn theorem1_json(p: usize, element: &str) -> PyResult<String> {
    let d = dihedral(p).map_err(err)?;
    let g = d.parse_element(element).map_err(err)?;
    let w = WreathGroup::new(&d, 2).map_err(err)?;
    let diag = Subgroup::from_elements(&w, d.enumerate().iter().map(|y| w.diag_embed(y))).map_err(err)?;
    let copy = DihedralCopy::identify(&diag).map_err(err)?;
    let x = w.levin_root(&g).map_err(err)?;
    let t = theorem1_trace(&copy, &x).map_err(err)?;
    serde_json::to_string(&t).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Exhaustive S_m search for square roots of a reflection of D_p, as JSON.
#[pyfunction]
#[pyo3(signature = (p, m, kind = "natural", cap = 1000))]
fn search_json(p: usize, m: usize, kind: &str, cap: usize) -> PyResult<String> {
    let kind: EmbeddingKind = kind.parse().map_err(err)?;
    let r = min_overgroup_search(p, m, kind, cap, 0, true).map_err(err)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
fn minus_one_is_square(p: u64) -> PyResult<bool> {
    minus_one_is_square_mod_p(p).map_err(err)
}

#[pymodule]
#[pyo3(name = "groupsmith")]
fn groupsmith_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyElement>()?;
    m.add("ResourceCapError", m.py().get_type::<ResourceCapError>())?;
    m.add("FalsifiedError", m.py().get_type::<FalsifiedError>())?;
    m.add_function(wrap_pyfunction!(levin_root, m)?)?;
    m.add_function(wrap_pyfunction!(nth_root, m)?)?;
    m.add_function(wrap_pyfunction!(lemma7, m)?)?;
    m.add_function(wrap_pyfunction!(lemma8, m)?)?;
    m.add_function(wrap_pyfunction!(prop1_embed, m)?)?;
    m.add_function(wrap_pyfunction!(solve_positive, m)?)?;
    m.add_function(wrap_pyfunction!(solve_in, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_json, m)?)?;
    m.add_function(wrap_pyfunction!(search_json, m)?)?;
    m.add_function(wrap_pyfunction!(minus_one_is_square, m)?)?;
    Ok(())
}

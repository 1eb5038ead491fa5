//! Finite groups behind one contract, over three backends.
//!
//! * dense Cayley tables (16-bit indices),
//! * structured wreath products `G ≀ Zₙ` over a table-backed base,
//! * permutation closures.
//!
//! A [`Group`] is an immutable, cheaply cloned handle. Every [`Element`]
//! carries the id of the group that produced it, and combining elements of
//! different groups is a structural error.

mod embedding;
mod structure;
mod subgroup;
mod table;
mod wreath;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

pub use embedding::Embedding;
pub use structure::{AxiomReport, Quotient};
pub use subgroup::{Generated, Subgroup};
pub(crate) use table::{dihedral_label, CayleyTable, Notation};
pub(crate) use wreath::WreathLaw;

/// Default cap on the size of any materialized closure or table.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Largest order a dense table can index.
pub const MAX_TABLE_ORDER: usize = u16::MAX as usize;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Base coordinates of a wreath element.
pub type BaseTuple = SmallVec<[u16; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Payload {
    Index(u16),
    /// `(f, k)`: ordered by shift first, then lexicographically by `f`.
    Wreath { shift: u16, base: BaseTuple },
    Perm(Permutation),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element {
    group: u64,
    payload: Payload,
}

impl Element {
    pub(crate) fn new(group: u64, payload: Payload) -> Self {
        Element { group, payload }
    }

    pub fn group_id(&self) -> u64 {
        self.group
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub(crate) fn index(&self) -> u16 {
        match self.payload {
            Payload::Index(i) => i,
            _ => panic!("element is not table-backed"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    DenseTable,
    WreathStructured,
    PermClosure,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::DenseTable => "dense-table",
            BackendKind::WreathStructured => "wreath-structured",
            BackendKind::PermClosure => "perm-closure",
        })
    }
}

pub(crate) enum Backend {
    Table(CayleyTable),
    Wreath(WreathLaw),
    Perm(PermClosure),
}

pub(crate) struct PermClosure {
    degree: usize,
    elements: Vec<Permutation>,
}

struct GroupData {
    id: u64,
    name: String,
    order: usize,
    identity: Element,
    generators: Vec<Element>,
    backend: Backend,
}

#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("id", &self.0.id)
            .field("name", &self.0.name)
            .field("order", &self.0.order)
            .field("backend", &self.backend_kind())
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Group {}

impl Group {
    fn assemble(
        name: String,
        order: usize,
        backend: Backend,
        identity: impl FnOnce(u64) -> Element,
        generators: impl FnOnce(u64) -> Vec<Element>,
    ) -> Group {
        let id = NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed);
        Group(Arc::new(GroupData {
            id,
            name,
            order,
            identity: identity(id),
            generators: generators(id),
            backend,
        }))
    }

    pub(crate) fn from_table(name: impl Into<String>, table: CayleyTable, gens: Vec<u16>) -> Group {
        let order = table.order();
        let identity = table.identity();
        Group::assemble(
            name.into(),
            order,
            Backend::Table(table),
            |id| Element::new(id, Payload::Index(identity)),
            |id| {
                gens.into_iter()
                    .map(|g| Element::new(id, Payload::Index(g)))
                    .collect()
            },
        )
    }

    /// Dense-table group generated by permutations of a common degree.
    ///
    /// Elements are numbered breadth-first from the identity, multiplying by
    /// the generators in sorted order; each layer is sorted by image array.
    pub fn from_permutations(degree: usize, gens: &[Permutation], cap: usize) -> Result<Group> {
        let table = CayleyTable::from_permutations(degree, gens, cap)?;
        let mut sorted: Vec<Permutation> = gens.to_vec();
        sorted.sort();
        sorted.dedup();
        let gen_idx = sorted
            .iter()
            .filter(|p| !p.is_identity())
            .map(|p| table.perm_index(p).expect("generator lies in its closure"))
            .collect();
        let name = format!("<{}>", {
            let names: Vec<String> = sorted.iter().map(|p| p.to_cycle_string(1)).collect();
            names.join(", ")
        });
        Ok(Group::from_table(name, table, gen_idx))
    }

    /// Permutation-closure group: elements are permutations, enumerated once.
    pub fn perm_closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Group> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::precondition(format!(
                    "generator {g} has degree {} not {degree}",
                    g.degree()
                )));
            }
        }
        let mut elements = closure_of_permutations(degree, gens, cap)?;
        elements.sort();
        let order = elements.len();
        let mut gens: Vec<Permutation> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        gens.sort();
        gens.dedup();
        let name = format!(
            "perm<{}>",
            gens.iter().map(|p| p.to_cycle_string(1)).collect::<Vec<_>>().join(", ")
        );
        Ok(Group::assemble(
            name,
            order,
            Backend::Perm(PermClosure { degree, elements }),
            |id| Element::new(id, Payload::Perm(Permutation::identity(degree))),
            |id| gens.iter().map(|p| Element::new(id, Payload::Perm(*p))).collect(),
        ))
    }

    pub(crate) fn from_wreath(law: WreathLaw) -> Group {
        let name = format!("{} wr Z{}", law.base().name(), law.arity());
        let order = law.order_usize().expect("wreath order checked by caller");
        let identity = law.identity_payload();
        let gens = law.generator_payloads();
        Group::assemble(
            name,
            order,
            Backend::Wreath(law),
            |id| Element::new(id, identity),
            |id| gens.into_iter().map(|p| Element::new(id, p)).collect(),
        )
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> Element {
        self.0.identity.clone()
    }

    pub fn generators(&self) -> &[Element] {
        &self.0.generators
    }

    pub fn backend_kind(&self) -> BackendKind {
        match self.0.backend {
            Backend::Table(_) => BackendKind::DenseTable,
            Backend::Wreath(_) => BackendKind::WreathStructured,
            Backend::Perm(_) => BackendKind::PermClosure,
        }
    }

    pub(crate) fn table(&self) -> Option<&CayleyTable> {
        match &self.0.backend {
            Backend::Table(t) => Some(t),
            _ => None,
        }
    }

    pub(crate) fn wreath_law(&self) -> Option<&WreathLaw> {
        match &self.0.backend {
            Backend::Wreath(w) => Some(w),
            _ => None,
        }
    }

    fn check(&self, a: &Element) -> Result<()> {
        if a.group != self.0.id {
            return Err(GroupError::ForeignElement {
                expected: self.0.id,
                found: a.group,
            });
        }
        Ok(())
    }

    fn expect_own(&self, a: &Element) {
        if let Err(e) = self.check(a) {
            panic!("{e}");
        }
    }

    /// Whether `a` belongs to this group with a valid payload.
    pub fn contains(&self, a: &Element) -> bool {
        if a.group != self.0.id {
            return false;
        }
        match (&self.0.backend, &a.payload) {
            (Backend::Table(t), Payload::Index(i)) => (*i as usize) < t.order(),
            (Backend::Wreath(w), Payload::Wreath { shift, base }) => w.is_valid(*shift, base),
            (Backend::Perm(p), Payload::Perm(x)) => p.elements.binary_search(x).is_ok(),
            _ => false,
        }
    }

    /// Checked product; fails when either operand belongs to another group.
    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// Product `a·b`.
    ///
    /// Panics when an operand belongs to another group; use [`Group::try_mul`]
    /// to get the error instead.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.expect_own(a);
        self.expect_own(b);
        self.mul_unchecked(a, b)
    }

    fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        let payload = match (&self.0.backend, &a.payload, &b.payload) {
            (Backend::Table(t), Payload::Index(x), Payload::Index(y)) => Payload::Index(t.mul(*x, *y)),
            (
                Backend::Wreath(w),
                Payload::Wreath { shift: k1, base: f1 },
                Payload::Wreath { shift: k2, base: f2 },
            ) => w.mul(*k1, f1, *k2, f2),
            (Backend::Perm(_), Payload::Perm(x), Payload::Perm(y)) => Payload::Perm(x.then(y)),
            _ => panic!("payload does not match backend"),
        };
        Element::new(self.0.id, payload)
    }

    pub fn try_inverse(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inverse(a))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.expect_own(a);
        let payload = match (&self.0.backend, &a.payload) {
            (Backend::Table(t), Payload::Index(x)) => Payload::Index(t.inv(*x)),
            (Backend::Wreath(w), Payload::Wreath { shift, base }) => w.inverse(*shift, base),
            (Backend::Perm(_), Payload::Perm(x)) => Payload::Perm(x.inverse()),
            _ => panic!("payload does not match backend"),
        };
        Element::new(self.0.id, payload)
    }

    /// `aᵉ` for any integer exponent.
    pub fn pow(&self, a: &Element, e: i64) -> Element {
        let mut base = if e < 0 { self.inverse(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `aᵏ = 1`.
    pub fn element_order(&self, a: &Element) -> usize {
        let id = self.identity();
        let mut k = 1;
        let mut x = a.clone();
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// `x^y = y⁻¹·x·y`.
    pub fn conjugate(&self, x: &Element, y: &Element) -> Element {
        self.mul(&self.mul(&self.inverse(y), x), y)
    }

    /// `[a, b] = a⁻¹·b⁻¹·a·b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ai = self.inverse(a);
        let bi = self.inverse(b);
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    /// All elements in canonical (sorted) order.
    pub fn enumerate(&self) -> Vec<Element> {
        let id = self.0.id;
        match &self.0.backend {
            Backend::Table(t) => (0..t.order() as u16)
                .map(|i| Element::new(id, Payload::Index(i)))
                .collect(),
            Backend::Wreath(w) => w.enumerate().map(|p| Element::new(id, p)).collect(),
            Backend::Perm(p) => p
                .elements
                .iter()
                .map(|x| Element::new(id, Payload::Perm(*x)))
                .collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|a| gens.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Table element by index (dense-table groups only).
    pub fn element_at(&self, index: usize) -> Option<Element> {
        let t = self.table()?;
        (index < t.order()).then(|| Element::new(self.0.id, Payload::Index(index as u16)))
    }

    /// The permutation realizing `a`, when the group carries one.
    pub fn permutation_of(&self, a: &Element) -> Option<Permutation> {
        if a.group != self.0.id {
            return None;
        }
        match (&self.0.backend, &a.payload) {
            (Backend::Table(t), Payload::Index(i)) => t.perm(*i),
            (Backend::Perm(_), Payload::Perm(p)) => Some(*p),
            _ => None,
        }
    }

    /// Element realized by a permutation, when the group carries permutations.
    pub fn element_from_permutation(&self, p: &Permutation) -> Option<Element> {
        match &self.0.backend {
            Backend::Table(t) => t
                .perm_index(p)
                .map(|i| Element::new(self.0.id, Payload::Index(i))),
            Backend::Perm(c) => c
                .elements
                .binary_search(p)
                .ok()
                .map(|_| Element::new(self.0.id, Payload::Perm(*p))),
            Backend::Wreath(_) => None,
        }
    }

    /// Permutation degree for groups that carry permutations.
    pub fn degree(&self) -> Option<usize> {
        match &self.0.backend {
            Backend::Table(t) => t.degree(),
            Backend::Perm(p) => Some(p.degree),
            Backend::Wreath(_) => None,
        }
    }

    /// Canonical name of an element in this group's notation.
    pub fn render(&self, a: &Element) -> String {
        self.expect_own(a);
        match (&self.0.backend, &a.payload) {
            (Backend::Table(t), Payload::Index(i)) => t.label(*i).to_string(),
            (Backend::Wreath(w), Payload::Wreath { shift, base }) => w.render(*shift, base),
            (Backend::Perm(_), Payload::Perm(p)) => p.to_cycle_string(1),
            _ => unreachable!(),
        }
    }

    /// Inverse of [`Group::render`], accepting the documented spelling variants.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let payload = match &self.0.backend {
            Backend::Table(t) => Payload::Index(t.parse(text)?),
            Backend::Wreath(w) => w.parse(text)?,
            Backend::Perm(c) => {
                let p = Permutation::parse_cycles(text, c.degree, 1)?;
                if c.elements.binary_search(&p).is_err() {
                    return Err(GroupError::parse(0, format!("{text} is not in {}", self.name())));
                }
                Payload::Perm(p)
            }
        };
        Ok(Element::new(self.0.id, payload))
    }

    /// Breadth-first closure of `gens` under right multiplication.
    ///
    /// Returns `Err(partial)` once the set reaches `cap` elements.
    pub(crate) fn closure(&self, gens: &[Element], cap: Option<usize>) -> std::result::Result<Vec<Element>, usize> {
        let id = self.identity();
        let mut gens: Vec<Element> = gens.iter().filter(|g| **g != id).cloned().collect();
        gens.sort();
        gens.dedup();
        let mut seen: HashSet<Element> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            for g in &gens {
                let next = self.mul_unchecked(&cur, g);
                if seen.insert(next.clone()) {
                    if let Some(cap) = cap {
                        if seen.len() >= cap {
                            return Err(seen.len());
                        }
                    }
                    queue.push(next);
                }
            }
        }
        queue.sort();
        Ok(queue)
    }
}

/// Breadth-first closure of raw permutations, aborting at `cap`.
pub(crate) fn closure_of_permutations(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let mut gens: Vec<Permutation> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
    gens.sort();
    gens.dedup();
    let id = Permutation::identity(degree);
    let mut seen = HashSet::new();
    seen.insert(id);
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head];
        head += 1;
        for g in &gens {
            let next = cur.then(g);
            if seen.insert(next) {
                if seen.len() > cap {
                    return Err(GroupError::ClosureTooLarge {
                        cap,
                        partial: seen.len(),
                    });
                }
                queue.push(next);
            }
        }
    }
    Ok(queue)
}

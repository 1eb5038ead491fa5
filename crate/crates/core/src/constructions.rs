//! Named group families, cyclic wreath products, and the economical
//! overgroups in which a chosen element acquires a square root.

use std::collections::HashMap;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::group::{
    BaseTuple, CayleyTable, Element, Embedding, Group, Notation, Payload, Quotient, Subgroup, WreathLaw,
    DEFAULT_CLOSURE_CAP,
};
use crate::perm::{Permutation, MAX_DEGREE};

/// Largest wreath order accepted by default (`n·|G|ⁿ`).
pub const DEFAULT_WREATH_CAP: u128 = 10_000_000;

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 || n > crate::group::MAX_TABLE_ORDER {
        return Err(GroupError::precondition(format!("cyclic order {n} out of range")));
    }
    let gens = if n > 1 { vec![1] } else { vec![] };
    Ok(Group::from_table(format!("Z{n}"), CayleyTable::cyclic(n), gens))
}

/// `D_p` acting on the vertices `0..p` of a regular `p`-gon: `r = (0 1 … p−1)`,
/// `s: i ↦ −i`. Elements are labelled `r^k` and `s*r^k` (meaning `s·rᵏ`).
pub fn dihedral(p: usize) -> Result<Group> {
    if p < 3 {
        return Err(GroupError::precondition(format!("dihedral D{p} needs p >= 3")));
    }
    if p > MAX_DEGREE {
        return Err(GroupError::precondition(format!("dihedral D{p} exceeds degree {MAX_DEGREE}")));
    }
    let (r, s) = dihedral_generators(p);
    let table = CayleyTable::from_permutations(p, &[r, s], DEFAULT_CLOSURE_CAP)?;
    let mut labels = vec![String::new(); table.order()];
    for refl in [false, true] {
        for k in 0..p {
            let base = if refl { s } else { Permutation::identity(p) };
            let perm = base.then(&r.pow(k as u64));
            let idx = table.perm_index(&perm).expect("normal form lies in the group");
            labels[idx as usize] = crate::group::dihedral_label(refl, k);
        }
    }
    let mut gens: Vec<u16> = [r, s].iter().map(|g| table.perm_index(g).unwrap()).collect();
    gens.sort_unstable();
    let table = table.relabel(labels, Notation::Dihedral { p });
    Ok(Group::from_table(format!("D{p}"), table, gens))
}

pub(crate) fn dihedral_generators(p: usize) -> (Permutation, Permutation) {
    let r: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    let s: Vec<usize> = (0..p).map(|i| (p - i) % p).collect();
    (
        Permutation::from_images(&r).unwrap(),
        Permutation::from_images(&s).unwrap(),
    )
}

pub fn symmetric(m: usize, cap: usize) -> Result<Group> {
    if m == 0 || m > MAX_DEGREE {
        return Err(GroupError::precondition(format!("S{m} out of range")));
    }
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(Permutation::from_cycles(m, &[vec![0, 1]])?);
        gens.push(Permutation::from_cycles(m, &[(0..m).collect()])?);
    }
    let table = CayleyTable::from_permutations(m, &gens, cap)?;
    Ok(named_perm_group(format!("S{m}"), table, &gens))
}

pub fn alternating(m: usize, cap: usize) -> Result<Group> {
    if m == 0 || m > MAX_DEGREE {
        return Err(GroupError::precondition(format!("A{m} out of range")));
    }
    let gens: Vec<Permutation> = (2..m)
        .map(|k| Permutation::from_cycles(m, &[vec![0, 1, k]]))
        .collect::<Result<_>>()?;
    let table = CayleyTable::from_permutations(m, &gens, cap)?;
    Ok(named_perm_group(format!("A{m}"), table, &gens))
}

fn named_perm_group(name: String, table: CayleyTable, gens: &[Permutation]) -> Group {
    let mut idx: Vec<u16> = gens
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| table.perm_index(g).unwrap())
        .collect();
    idx.sort_unstable();
    idx.dedup();
    Group::from_table(name, table, idx)
}

pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let table = CayleyTable::direct_product(a, b)?;
    let nb = b.order();
    let ea = a.identity().payload().clone();
    let eb = b.identity().payload().clone();
    let idx = |p: &Payload| match p {
        Payload::Index(i) => *i as usize,
        _ => unreachable!(),
    };
    let mut gens: Vec<u16> = Vec::new();
    for g in a.generators() {
        gens.push((idx(g.payload()) * nb + idx(&eb)) as u16);
    }
    for g in b.generators() {
        gens.push((idx(&ea) * nb + idx(g.payload())) as u16);
    }
    gens.sort_unstable();
    gens.dedup();
    Ok(Group::from_table(format!("{}x{}", a.name(), b.name()), table, gens))
}

/// Parses `Z<n> | D<p> | S<m> | A<m> | <spec>x<spec>` with the default cap.
pub fn named_group(spec: &str) -> Result<Group> {
    named_group_capped(spec, DEFAULT_CLOSURE_CAP)
}

pub fn named_group_capped(spec: &str, cap: usize) -> Result<Group> {
    let mut offset = 0;
    let mut acc: Option<Group> = None;
    for factor in spec.split('x') {
        let g = parse_factor(factor, offset, cap)?;
        acc = Some(match acc {
            None => g,
            Some(prev) => direct_product(&prev, &g)?,
        });
        offset += factor.len() + 1;
    }
    let g = acc.expect("split yields at least one piece");
    if g.order() > cap {
        return Err(GroupError::ClosureTooLarge {
            cap,
            partial: g.order(),
        });
    }
    Ok(g)
}

fn parse_factor(text: &str, offset: usize, cap: usize) -> Result<Group> {
    let t = text.trim();
    let mut chars = t.chars();
    let family = chars
        .next()
        .ok_or_else(|| GroupError::parse(offset, "empty group factor"))?;
    let digits = chars.as_str();
    if !matches!(family, 'Z' | 'D' | 'S' | 'A') {
        return Err(GroupError::parse(
            offset,
            format!("unsupported group family '{t}' (expected Z, D, S or A)"),
        ));
    }
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(GroupError::parse(offset + 1, format!("expected a number after '{family}'")));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| GroupError::parse(offset + 1, "number out of range"))?;
    let wrap = |e: GroupError| match e {
        GroupError::Precondition(m) => GroupError::parse(offset, m),
        other => other,
    };
    match family {
        'Z' => cyclic(n).map_err(wrap),
        'D' => dihedral(n).map_err(wrap),
        'S' => symmetric(n, cap).map_err(wrap),
        'A' => alternating(n, cap).map_err(wrap),
        _ => unreachable!(),
    }
}

/// `G ≀ Zₙ` with the structured backend.
#[derive(Clone, Debug)]
pub struct WreathGroup {
    group: Group,
}

impl Deref for WreathGroup {
    type Target = Group;

    fn deref(&self) -> &Group {
        &self.group
    }
}

impl WreathGroup {
    pub fn new(base: &Group, arity: usize) -> Result<Self> {
        WreathGroup::with_cap(base, arity, DEFAULT_WREATH_CAP)
    }

    pub fn with_cap(base: &Group, arity: usize, cap: u128) -> Result<Self> {
        if arity < 2 {
            return Err(GroupError::precondition(format!("wreath arity {arity} must be >= 2")));
        }
        let law = WreathLaw::new(base.clone(), arity)?;
        match law.order_u128() {
            Some(o) if o <= cap && usize::try_from(o).is_ok() => {}
            _ => {
                return Err(GroupError::ResourceCap(format!(
                    "{} wr Z{arity} has order above {cap}",
                    base.name()
                )))
            }
        }
        Ok(WreathGroup {
            group: Group::from_wreath(law),
        })
    }

    /// Recovers the wreath view of a group built by [`WreathGroup::new`].
    pub fn from_group(group: &Group) -> Option<Self> {
        group.wreath_law().map(|_| WreathGroup { group: group.clone() })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    fn law(&self) -> &WreathLaw {
        self.group.wreath_law().expect("wreath backend")
    }

    pub fn base(&self) -> &Group {
        self.law().base()
    }

    pub fn arity(&self) -> usize {
        self.law().arity()
    }

    /// `(f, k)` from base coordinates.
    pub fn element(&self, coords: &[Element], shift: usize) -> Result<Element> {
        if coords.len() != self.arity() {
            return Err(GroupError::precondition(format!(
                "expected {} coordinates, got {}",
                self.arity(),
                coords.len()
            )));
        }
        let mut base = BaseTuple::new();
        for c in coords {
            if !self.base().contains(c) {
                return Err(GroupError::ForeignElement {
                    expected: self.base().id(),
                    found: c.group_id(),
                });
            }
            base.push(match c.payload() {
                Payload::Index(i) => *i,
                _ => unreachable!(),
            });
        }
        Ok(Element::new(
            self.group.id(),
            Payload::Wreath {
                shift: (shift % self.arity()) as u16,
                base,
            },
        ))
    }

    /// `(f, k)` split into base elements and shift.
    pub fn coordinates(&self, x: &Element) -> (Vec<Element>, usize) {
        assert!(self.group.contains(x), "element is not in this wreath product");
        match x.payload() {
            Payload::Wreath { shift, base } => (
                base.iter()
                    .map(|&i| self.base().element_at(i as usize).unwrap())
                    .collect(),
                *shift as usize,
            ),
            _ => unreachable!(),
        }
    }

    /// `g ↦ ((g, …, g), 0)`.
    pub fn diag_embed(&self, g: &Element) -> Element {
        let coords = vec![g.clone(); self.arity()];
        self.element(&coords, 0).expect("base element")
    }

    pub fn diag_embedding(&self) -> Embedding {
        Embedding::from_fn(self.base(), &self.group, |g| self.diag_embed(g))
    }

    /// Pure shift `((1, …, 1), 1)`.
    pub fn shift(&self) -> Element {
        let e = self.base().identity();
        self.element(&vec![e; self.arity()], 1).unwrap()
    }

    /// `x = ((g, 1, …, 1), 1)`, checked to satisfy `xⁿ = diag(g)`.
    pub fn levin_root(&self, g: &Element) -> Result<Element> {
        let mut coords = vec![self.base().identity(); self.arity()];
        coords[0] = g.clone();
        let x = self.element(&coords, 1)?;
        let power = self.group.pow(&x, self.arity() as i64);
        if power != self.diag_embed(g) {
            return Err(GroupError::falsified(format!(
                "levin root {} has {}-th power {}, expected diagonal of {}",
                self.group.render(&x),
                self.arity(),
                self.group.render(&power),
                self.base().render(g)
            )));
        }
        Ok(x)
    }
}

/// Convenience for `WreathGroup::new`.
pub fn wreath_cyclic(base: &Group, n: usize) -> Result<WreathGroup> {
    WreathGroup::new(base, n)
}

/// The subgroup of `G ≀ Z₂` generated by the diagonal copy of `G` and the
/// square root of `g`.
#[derive(Clone, Debug)]
pub struct Lemma7 {
    pub wreath: WreathGroup,
    /// `C = [⟨⟨g⟩⟩, G]` inside `G`.
    pub commutator: Subgroup,
    pub subgroup: Subgroup,
    pub root: Element,
}

impl Lemma7 {
    pub fn order(&self) -> usize {
        self.subgroup.order()
    }
}

/// `{(f,0) : f₀f₁⁻¹ ∈ C} ∪ {(f,1) : f₀f₁⁻¹ ∈ gC}`, enumerated over `G ≀ Z₂`.
pub fn lemma7_formula_set(wreath: &WreathGroup, g: &Element, commutator: &Subgroup) -> Vec<Element> {
    assert_eq!(wreath.arity(), 2);
    let base = wreath.base();
    let g_inv = base.inverse(g);
    let mut out: Vec<Element> = wreath
        .enumerate()
        .into_iter()
        .filter(|x| {
            let (f, k) = wreath.coordinates(x);
            let d = base.mul(&f[0], &base.inverse(&f[1]));
            if k == 0 {
                commutator.contains(&d)
            } else {
                commutator.contains(&base.mul(&g_inv, &d))
            }
        })
        .collect();
    out.sort();
    out
}

pub fn lemma7_subgroup(group: &Group, g: &Element) -> Result<Lemma7> {
    if !group.contains(g) {
        return Err(GroupError::ForeignElement {
            expected: group.id(),
            found: g.group_id(),
        });
    }
    let wreath = WreathGroup::new(group, 2)?;
    let whole = Subgroup::whole(group);
    let closure = group.normal_closure(g);
    let commutator = group.mutual_commutator(&closure, &whole);
    let root = wreath.levin_root(g)?;

    let formula = lemma7_formula_set(&wreath, g, &commutator);
    let mut gens: Vec<Element> = group.generators().iter().map(|h| wreath.diag_embed(h)).collect();
    gens.push(root.clone());
    let generated = wreath.generate(&gens);

    if generated.elements() != formula.as_slice() {
        return Err(GroupError::falsified(format!(
            "closed-form set has {} elements but the generated subgroup has {}",
            formula.len(),
            generated.order()
        )));
    }
    let expected = 2 * group.order() * commutator.order();
    if generated.order() != expected {
        return Err(GroupError::falsified(format!(
            "|H| = {} but 2|G||C| = {expected}",
            generated.order()
        )));
    }
    Ok(Lemma7 {
        wreath,
        commutator,
        subgroup: generated,
        root,
    })
}

/// `K = {((x, x⁻¹), 0) : x ∈ N}` inside `G ≀ Z₂`.
#[derive(Clone, Debug)]
pub struct InversionSubgroupK {
    pub wreath: WreathGroup,
    pub normal: Subgroup,
    pub subgroup: Subgroup,
}

/// The quotient `(G ≀ Z₂)/K` with the induced map from `G`.
#[derive(Clone, Debug)]
pub struct Lemma8Quotient {
    pub quotient: Quotient,
    pub embedding: Embedding,
    wreath: WreathGroup,
}

impl Lemma8Quotient {
    pub fn group(&self) -> &Group {
        self.quotient.group()
    }

    pub fn embedding_injective(&self) -> bool {
        self.embedding.is_injective()
    }

    /// Image of the root of `g`, checked to square to the image of `g`.
    pub fn root_image(&self, g: &Element) -> Result<Element> {
        let root = self.wreath.levin_root(g)?;
        let image = self.quotient.project(&root);
        let q = self.quotient.group();
        if q.mul(&image, &image) != self.embedding.apply(g) {
            return Err(GroupError::falsified(format!(
                "image of the root of {} does not square to the image of g",
                self.wreath.base().render(g)
            )));
        }
        Ok(image)
    }
}

#[derive(Clone, Debug)]
pub struct Lemma8Outcome {
    pub k: InversionSubgroupK,
    pub normality: bool,
    /// `(k, w)` with `k^w ∉ K`, when normality fails.
    pub witness: Option<(Element, Element)>,
    pub quotient: Option<Lemma8Quotient>,
}

pub fn lemma8_construct(group: &Group, normal: &Subgroup) -> Result<Lemma8Outcome> {
    if normal.parent() != group {
        return Err(GroupError::precondition("N must be a subgroup of G"));
    }
    if !normal.is_abelian() {
        return Err(GroupError::precondition("N is not abelian"));
    }
    if let Some((h, x)) = group.normality_witness(normal) {
        return Err(GroupError::precondition(format!(
            "N is not normal in G: {}^{} leaves N",
            group.render(&h),
            group.render(&x)
        )));
    }
    let wreath = WreathGroup::new(group, 2)?;
    let k_elems: Vec<Element> = normal
        .elements()
        .iter()
        .map(|x| wreath.element(&[x.clone(), group.inverse(x)], 0))
        .collect::<Result<_>>()?;
    let k = Subgroup::from_elements(&wreath, k_elems)?;

    let mut witness = None;
    'outer: for w in wreath.generators() {
        for x in k.elements() {
            if !k.contains(&wreath.conjugate(x, w)) {
                witness = Some((x.clone(), w.clone()));
                break 'outer;
            }
        }
    }
    let normality = witness.is_none();
    let quotient = if normality {
        let quotient = wreath.quotient(&k)?;
        let embedding = Embedding::from_fn(group, quotient.group(), |g| quotient.project(&wreath.diag_embed(g)));
        Some(Lemma8Quotient {
            quotient,
            embedding,
            wreath: wreath.clone(),
        })
    } else {
        None
    };
    Ok(Lemma8Outcome {
        k: InversionSubgroupK {
            wreath,
            normal: normal.clone(),
            subgroup: k,
        },
        normality,
        witness,
        quotient,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prop1Strategy {
    Lemma7Subgroup,
    Lemma8Quotient,
    Fallback,
}

impl std::fmt::Display for Prop1Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Prop1Strategy::Lemma7Subgroup => "lemma7-subgroup",
            Prop1Strategy::Lemma8Quotient => "lemma8-quotient",
            Prop1Strategy::Fallback => "fallback",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Prop1Embedding {
    pub group: Group,
    pub embedding: Embedding,
    pub root: Element,
    pub strategy: Prop1Strategy,
}

/// Overgroup of `G` in which `g` is a square, of order `≤ |G|²` whenever
/// one of the subgroup or quotient strategies applies.
pub fn prop1_embedding(group: &Group, g: &Element) -> Result<Prop1Embedding> {
    let bound = group.order() * group.order();

    let lemma7 = lemma7_subgroup(group, g)?;
    if lemma7.order() <= bound && lemma7.order() <= crate::group::MAX_TABLE_ORDER {
        let (h, into_wreath) = lemma7.subgroup.to_group("H")?;
        let back: HashMap<Element, Element> = into_wreath.inverse_table();
        let embedding = Embedding::from_fn(group, &h, |x| back[&lemma7.wreath.diag_embed(x)].clone());
        let root = back[&lemma7.root].clone();
        return finish(h, embedding, root, g, Prop1Strategy::Lemma7Subgroup);
    }

    if let Some(found) = prop1_quotient_strategy(group, g)? {
        return Ok(found);
    }

    let root = lemma7.wreath.levin_root(g)?;
    let embedding = lemma7.wreath.diag_embedding();
    finish(lemma7.wreath.group().clone(), embedding, root, g, Prop1Strategy::Fallback)
}

/// The quotient strategy on its own: `(G ≀ Z₂)/K` for the first odd
/// abelian normal `N` (central candidates first) whose `K` is normal and
/// whose quotient has order at most `|G|²`.
pub fn prop1_quotient_strategy(group: &Group, g: &Element) -> Result<Option<Prop1Embedding>> {
    let bound = group.order() * group.order();
    let mut candidates = group.odd_normal_candidates(true);
    for n in group.odd_normal_candidates(false) {
        if !candidates.contains(&n) {
            candidates.push(n);
        }
    }
    for n in candidates {
        let outcome = lemma8_construct(group, &n)?;
        if let Some(q) = outcome.quotient {
            if q.group().order() <= bound && q.embedding_injective() {
                let root = q.root_image(g)?;
                let h = q.group().clone();
                return finish(h, q.embedding.clone(), root, g, Prop1Strategy::Lemma8Quotient).map(Some);
            }
        }
    }
    Ok(None)
}

fn finish(
    h: Group,
    embedding: Embedding,
    root: Element,
    g: &Element,
    strategy: Prop1Strategy,
) -> Result<Prop1Embedding> {
    if h.mul(&root, &root) != embedding.apply(g) {
        return Err(GroupError::falsified(format!("{strategy} root does not square to g")));
    }
    Ok(Prop1Embedding {
        group: h,
        embedding,
        root,
        strategy,
    })
}

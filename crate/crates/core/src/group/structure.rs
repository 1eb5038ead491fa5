//! Subgroup machinery and structural queries shared by every construction.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CayleyTable, Element, Generated, Group, Payload, Subgroup};
use crate::error::{GroupError, Result};

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_AXIOM_ORDER: usize = 200;
/// Random triples checked above [`EXHAUSTIVE_AXIOM_ORDER`].
pub const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub order: usize,
    pub associativity_triples: usize,
    pub exhaustive: bool,
}

/// `G/N` as a dense table, with the projection from `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    parent: Group,
    normal: Subgroup,
    group: Group,
    projection: HashMap<Element, u16>,
    representatives: Vec<Element>,
}

impl Quotient {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.normal
    }

    /// Coset of `e`, as an element of the quotient group.
    pub fn project(&self, e: &Element) -> Element {
        let idx = *self
            .projection
            .get(e)
            .unwrap_or_else(|| panic!("element is not in the parent of this quotient"));
        Element::new(self.group.id(), Payload::Index(idx))
    }

    /// Least element of each coset, in coset-index order.
    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }
}

impl Group {
    /// Least subgroup containing `gens`, or `AtLeast(cap)` once the closure
    /// reaches `cap` elements.
    pub fn subgroup_generated(&self, gens: &[Element], cap: Option<usize>) -> Result<Generated> {
        for g in gens {
            self.check(g)?;
        }
        Ok(match self.closure(gens, cap) {
            Ok(elements) => Generated::Subgroup(Subgroup::from_sorted(self, elements)),
            Err(partial) => Generated::AtLeast(partial),
        })
    }

    /// Uncapped [`Group::subgroup_generated`].
    pub fn generate(&self, gens: &[Element]) -> Subgroup {
        match self.subgroup_generated(gens, None) {
            Ok(Generated::Subgroup(s)) => s,
            Ok(Generated::AtLeast(_)) => unreachable!("uncapped closure"),
            Err(e) => panic!("{e}"),
        }
    }

    /// Conjugacy class of `g`, sorted.
    pub fn conjugacy_class(&self, g: &Element) -> Vec<Element> {
        let mut seen: HashSet<Element> = HashSet::from([g.clone()]);
        let mut queue = vec![g.clone()];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            head += 1;
            for y in self.generators() {
                let c = self.conjugate(&cur, y);
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        queue.sort();
        queue
    }

    /// `⟨⟨g⟩⟩`: the subgroup generated by all conjugates of `g`.
    pub fn normal_closure(&self, g: &Element) -> Subgroup {
        self.generate(&self.conjugacy_class(g))
    }

    /// `[A, B]`: generated by all `a⁻¹b⁻¹ab` with `a ∈ A`, `b ∈ B`.
    pub fn mutual_commutator(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms: HashSet<Element> = HashSet::new();
        for x in a.elements() {
            for y in b.elements() {
                comms.insert(self.commutator(x, y));
            }
        }
        let comms: Vec<Element> = comms.into_iter().collect();
        self.generate(&comms)
    }

    /// First `(h, x)` in canonical order with `h^x ∉ H`, over generators `x`.
    pub fn normality_witness(&self, h: &Subgroup) -> Option<(Element, Element)> {
        for x in self.generators() {
            for e in h.elements() {
                if !h.contains(&self.conjugate(e, x)) {
                    return Some((e.clone(), x.clone()));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_witness(h).is_none()
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let elems = self
            .enumerate()
            .into_iter()
            .filter(|z| gens.iter().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted(self, elems)
    }

    /// Classes ordered by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Element>> {
        let mut assigned: HashSet<Element> = HashSet::new();
        let mut classes = Vec::new();
        for e in self.enumerate() {
            if assigned.contains(&e) {
                continue;
            }
            let class = self.conjugacy_class(&e);
            assigned.extend(class.iter().cloned());
            classes.push(class);
        }
        classes
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems = a.elements().iter().filter(|e| b.contains(e)).cloned().collect();
        Subgroup::from_sorted(self, elems)
    }

    /// `H^x = x⁻¹Hx`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, x: &Element) -> Subgroup {
        let mut elems: Vec<Element> = h.elements().iter().map(|e| self.conjugate(e, x)).collect();
        elems.sort();
        Subgroup::from_sorted(self, elems)
    }

    /// Stabilizer of `H` under conjugation.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems = self
            .enumerate()
            .into_iter()
            .filter(|x| h.elements().iter().all(|e| h.contains(&self.conjugate(e, x))))
            .collect();
        Subgroup::from_sorted(self, elems)
    }

    /// `G/N` for normal `N`; errors with a violating pair otherwise.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if n.parent() != self {
            return Err(GroupError::precondition("subgroup belongs to another group"));
        }
        if let Some((h, x)) = self.normality_witness(n) {
            return Err(GroupError::NotNormal {
                element: self.render(&h),
                by: self.render(&x),
            });
        }
        let mut projection: HashMap<Element, u16> = HashMap::new();
        let mut reps = Vec::new();
        for e in self.enumerate() {
            if projection.contains_key(&e) {
                continue;
            }
            let idx = reps.len() as u16;
            for c in n.left_coset(&e) {
                projection.insert(c, idx);
            }
            reps.push(e);
        }
        let k = reps.len();
        let mut mul = vec![0u16; k * k];
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                mul[i * k + j] = projection[&self.mul(a, b)];
            }
        }
        let labels = reps.iter().map(|r| format!("{}N", self.render(r))).collect();
        let identity = projection[&self.identity()];
        let table = CayleyTable::from_raw(k, mul, identity, labels);
        let mut gens: Vec<u16> = self
            .generators()
            .iter()
            .map(|g| projection[g])
            .filter(|&i| i != identity)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        let group = Group::from_table(format!("{}/N", self.name()), table, gens);
        Ok(Quotient {
            parent: self.clone(),
            normal: n.clone(),
            group,
            projection,
            representatives: reps,
        })
    }

    /// Every `x` with `xⁿ = g`, by exhaustive scan.
    pub fn roots_in_group(&self, g: &Element, n: u32) -> Result<Vec<Element>> {
        self.check(g)?;
        if n < 2 {
            return Err(GroupError::precondition("root degree must be at least 2"));
        }
        Ok(self
            .enumerate()
            .into_iter()
            .filter(|x| self.pow(x, n as i64) == *g)
            .collect())
    }

    /// `g^((k+1)/2)` for odd element order `k`.
    pub fn internal_odd_sqrt(&self, g: &Element) -> Result<Element> {
        self.check(g)?;
        let k = self.element_order(g);
        if k % 2 == 0 {
            return Err(GroupError::NoInternalRoot { order: k });
        }
        let x = self.pow(g, ((k + 1) / 2) as i64);
        debug_assert_eq!(self.mul(&x, &x), *g);
        Ok(x)
    }

    /// Smallest nontrivial abelian normal subgroup of odd order among the
    /// normal closures of odd-order elements; ties broken by element set.
    pub fn find_odd_abelian_normal(&self) -> Option<Subgroup> {
        self.odd_normal_candidates(false).into_iter().next()
    }

    /// Like [`Group::find_odd_abelian_normal`], restricted to the center.
    pub fn find_odd_central(&self) -> Option<Subgroup> {
        self.odd_normal_candidates(true).into_iter().next()
    }

    /// All distinct candidates, smallest first.
    pub fn odd_normal_candidates(&self, central: bool) -> Vec<Subgroup> {
        let pool = if central {
            self.center().elements().to_vec()
        } else {
            self.enumerate()
        };
        let mut found: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<Vec<Element>> = HashSet::new();
        for g in pool {
            let k = self.element_order(&g);
            if k == 1 || k % 2 == 0 {
                continue;
            }
            let n = self.normal_closure(&g);
            if n.order() % 2 == 1 && n.is_abelian() && seen.insert(n.elements().to_vec()) {
                found.push(n);
            }
        }
        found.sort();
        found
    }

    /// Checks closure, identity, inverses, the Latin-square property and
    /// associativity (exhaustive up to order 200, sampled above).
    pub fn check_axioms(&self, seed: u64) -> Result<AxiomReport> {
        let elems = self.enumerate();
        let n = elems.len();
        if n != self.order() {
            return Err(GroupError::falsified(format!(
                "enumeration yields {n} elements, order is {}",
                self.order()
            )));
        }
        let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let id = self.identity();
        let mut table = vec![0usize; n * n];
        for (i, a) in elems.iter().enumerate() {
            if self.mul(&id, a) != *a || self.mul(a, &id) != *a {
                return Err(GroupError::falsified(format!("identity fails at {}", self.render(a))));
            }
            let inv = self.inverse(a);
            if self.mul(a, &inv) != id || self.mul(&inv, a) != id {
                return Err(GroupError::falsified(format!("inverse fails at {}", self.render(a))));
            }
            let mut row_seen = vec![false; n];
            for (j, b) in elems.iter().enumerate() {
                let c = self.mul(a, b);
                let Some(&k) = index.get(&c) else {
                    return Err(GroupError::falsified("product escapes the group"));
                };
                if row_seen[k] {
                    return Err(GroupError::falsified(format!("row {} repeats an entry", self.render(a))));
                }
                row_seen[k] = true;
                table[i * n + j] = k;
            }
        }
        for j in 0..n {
            let mut col_seen = vec![false; n];
            for i in 0..n {
                let k = table[i * n + j];
                if col_seen[k] {
                    return Err(GroupError::falsified(format!(
                        "column {} repeats an entry",
                        self.render(&elems[j])
                    )));
                }
                col_seen[k] = true;
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]];
        let (triples, exhaustive) = if n <= EXHAUSTIVE_AXIOM_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::falsified("associativity fails"));
                        }
                    }
                }
            }
            (n * n * n, true)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::falsified("associativity fails"));
                }
            }
            (SAMPLED_TRIPLES, false)
        };
        Ok(AxiomReport {
            order: n,
            associativity_triples: triples,
            exhaustive,
        })
    }
}

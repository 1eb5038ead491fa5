use std::cmp::Ordering;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use super::{CayleyTable, Element, Embedding, Group};
use crate::error::{GroupError, Result};

/// A subgroup stored as its canonical sorted element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Group,
    elements: Vec<Element>,
}

/// Result of a capped generation request.
#[derive(Clone, Debug)]
pub enum Generated {
    Subgroup(Subgroup),
    /// The closure reached the cap; only a lower bound on its size is known.
    AtLeast(usize),
}

impl Generated {
    pub fn subgroup(self) -> Option<Subgroup> {
        match self {
            Generated::Subgroup(s) => Some(s),
            Generated::AtLeast(_) => None,
        }
    }
}

impl Subgroup {
    /// Wraps a sorted, deduplicated element list known to be a subgroup.
    pub(crate) fn from_sorted(parent: &Group, elements: Vec<Element>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        assert!(
            parent.order() % elements.len() == 0,
            "Lagrange: |H| = {} does not divide |G| = {}",
            elements.len(),
            parent.order()
        );
        Subgroup {
            parent: parent.clone(),
            elements,
        }
    }

    /// Validates that `elements` form a subgroup of `parent`.
    pub fn from_elements(parent: &Group, elements: impl IntoIterator<Item = Element>) -> Result<Subgroup> {
        let mut elements: Vec<Element> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        for e in &elements {
            if !parent.contains(e) {
                return Err(GroupError::precondition("element outside the parent group"));
            }
        }
        let set: HashSet<&Element> = elements.iter().collect();
        if !set.contains(&parent.identity()) {
            return Err(GroupError::precondition("subset does not contain the identity"));
        }
        for a in &elements {
            if !set.contains(&parent.inverse(a)) {
                return Err(GroupError::precondition(format!(
                    "subset not closed under inverse at {}",
                    parent.render(a)
                )));
            }
            for b in &elements {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(GroupError::precondition(format!(
                        "subset not closed: {} * {}",
                        parent.render(a),
                        parent.render(b)
                    )));
                }
            }
        }
        Ok(Subgroup::from_sorted(parent, elements))
    }

    pub fn whole(parent: &Group) -> Subgroup {
        Subgroup::from_sorted(parent, parent.enumerate())
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup::from_sorted(parent, vec![parent.identity()])
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elements.binary_search(e).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Left coset `x·H` as a sorted list.
    pub fn left_coset(&self, x: &Element) -> Vec<Element> {
        let mut v: Vec<Element> = self.elements.iter().map(|h| self.parent.mul(x, h)).collect();
        v.sort();
        v
    }

    /// Materializes the subgroup as a dense-table group.
    ///
    /// Labels come from the parent's notation; the returned embedding maps
    /// the new group back into the parent.
    pub fn to_group(&self, name: impl Into<String>) -> Result<(Group, Embedding)> {
        let labels = self.elements.iter().map(|e| self.parent.render(e)).collect();
        let table = CayleyTable::from_elements(&self.parent, &self.elements, labels)?;
        let gens = greedy_generators(table.order(), |gens| closure_mask(&table, gens));
        let group = Group::from_table(name, table, gens);
        let images = group
            .enumerate()
            .into_iter()
            .zip(self.elements.iter().cloned())
            .collect();
        let embedding = Embedding::from_map(&group, &self.parent, images);
        Ok((group, embedding))
    }
}

fn closure_mask(table: &CayleyTable, gens: &[u16]) -> Vec<bool> {
    let n = table.order();
    let mut seen = vec![false; n];
    let e = table.identity();
    seen[e as usize] = true;
    let mut queue = vec![e];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head];
        head += 1;
        for &g in gens {
            let nxt = table.mul(cur, g);
            if !seen[nxt as usize] {
                seen[nxt as usize] = true;
                queue.push(nxt);
            }
        }
    }
    seen
}

/// Picks generators in index order, skipping anything already generated.
fn greedy_generators(order: usize, closure: impl Fn(&[u16]) -> Vec<bool>) -> Vec<u16> {
    let mut gens: Vec<u16> = Vec::new();
    let mut covered = closure(&gens);
    for i in 0..order {
        if !covered[i] {
            gens.push(i as u16);
            covered = closure(&gens);
        }
    }
    gens
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.id().hash(state);
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then by canonical element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parent
            .id()
            .cmp(&other.parent.id())
            .then(self.elements.len().cmp(&other.elements.len()))
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

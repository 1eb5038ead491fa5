use std::collections::HashMap;

use super::{Element, Group};

/// An explicit map between two finite groups, stored element by element.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Group,
    target: Group,
    images: HashMap<Element, Element>,
}

impl Embedding {
    pub(crate) fn from_map(source: &Group, target: &Group, images: HashMap<Element, Element>) -> Self {
        debug_assert_eq!(images.len(), source.order());
        Embedding {
            source: source.clone(),
            target: target.clone(),
            images,
        }
    }

    /// Tabulates `f` over every element of `source`.
    pub fn from_fn(source: &Group, target: &Group, f: impl Fn(&Element) -> Element) -> Self {
        let images = source.enumerate().into_iter().map(|e| {
            let img = f(&e);
            (e, img)
        });
        Embedding::from_map(source, target, images.collect())
    }

    pub fn identity(group: &Group) -> Self {
        Embedding::from_fn(group, group, |e| e.clone())
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn try_apply(&self, e: &Element) -> Option<&Element> {
        self.images.get(e)
    }

    /// Image of `e`; panics if `e` is not an element of the source group.
    pub fn apply(&self, e: &Element) -> Element {
        match self.images.get(e) {
            Some(x) => x.clone(),
            None => panic!("element is not in the source of this embedding"),
        }
    }

    /// Source element mapping to `e`, if any (first in canonical order).
    pub fn preimage(&self, e: &Element) -> Option<Element> {
        self.images
            .iter()
            .filter(|(_, v)| *v == e)
            .map(|(k, _)| k.clone())
            .min()
    }

    /// Inverse lookup table for injective maps.
    pub fn inverse_table(&self) -> HashMap<Element, Element> {
        self.images.iter().map(|(k, v)| (v.clone(), k.clone())).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.values().all(|v| seen.insert(v))
    }

    /// `f(a·s) = f(a)·f(s)` for all `a` and every generator `s`, which
    /// forces `f(a·b) = f(a)·f(b)` for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let (src, dst) = (&self.source, &self.target);
        self.images.iter().all(|(a, fa)| {
            src.generators().iter().all(|s| {
                let lhs = &self.images[&src.mul(a, s)];
                *lhs == dst.mul(fa, &self.images[s])
            })
        }) && self.images[&src.identity()] == dst.identity()
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Embedding {
        Embedding::from_fn(&self.source, &other.target, |e| other.apply(&self.apply(e)))
    }
}

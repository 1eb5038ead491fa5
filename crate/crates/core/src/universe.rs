//! Exhaustive searches for square roots of a dihedral reflection inside
//! symmetric groups, recording the order of every overgroup `⟨D_p, x⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dihedral::is_prime;
use crate::error::{GroupError, Result};
use crate::group::closure_of_permutations;
use crate::perm::{LexPermutations, Permutation, MAX_DEGREE};

/// Largest `m` for which all of `Sₘ` is scanned.
pub const MAX_SEARCH_DEGREE: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingKind {
    /// On the vertices `0..p` of a `p`-gon, fixing the remaining points.
    Natural,
    /// Right-regular action on the `2p` elements.
    Regular,
    /// The natural action repeated on two blocks `0..p` and `p..2p`.
    Doubled,
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingKind::Natural => "natural",
            EmbeddingKind::Regular => "regular",
            EmbeddingKind::Doubled => "doubled",
        })
    }
}

impl FromStr for EmbeddingKind {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(EmbeddingKind::Natural),
            "regular" => Ok(EmbeddingKind::Regular),
            "doubled" => Ok(EmbeddingKind::Doubled),
            _ => Err(GroupError::parse(0, format!("unknown embedding kind '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralEmbedding {
    pub p: usize,
    pub m: usize,
    pub kind: EmbeddingKind,
    pub r: Permutation,
    pub s: Permutation,
    /// `s·rⁱ` for `i = 0..p`.
    pub reflections: Vec<Permutation>,
}

impl DihedralEmbedding {
    pub fn generators(&self) -> [Permutation; 2] {
        [self.r, self.s]
    }
}

pub fn embed_dihedral(p: usize, m: usize, kind: EmbeddingKind) -> Result<DihedralEmbedding> {
    if p < 3 || !is_prime(p as u64) {
        return Err(GroupError::precondition(format!("p = {p} is not an odd prime")));
    }
    let needed = match kind {
        EmbeddingKind::Natural => p,
        EmbeddingKind::Regular | EmbeddingKind::Doubled => 2 * p,
    };
    if m < needed || m > MAX_DEGREE {
        return Err(GroupError::precondition(format!(
            "{kind} embedding of D{p} needs {needed} <= m <= {MAX_DEGREE}, got m = {m}"
        )));
    }
    let rot = |i: usize| (i + 1) % p;
    let refl = |i: usize| (p - i) % p;
    let (r_img, s_img): (Vec<usize>, Vec<usize>) = match kind {
        EmbeddingKind::Natural => (
            (0..m).map(|i| if i < p { rot(i) } else { i }).collect(),
            (0..m).map(|i| if i < p { refl(i) } else { i }).collect(),
        ),
        EmbeddingKind::Doubled => {
            let on_blocks = |f: &dyn Fn(usize) -> usize| -> Vec<usize> {
                (0..m)
                    .map(|i| match i {
                        i if i < p => f(i),
                        i if i < 2 * p => p + f(i - p),
                        i => i,
                    })
                    .collect()
            };
            (on_blocks(&rot), on_blocks(&refl))
        }
        EmbeddingKind::Regular => {
            // Point a·p + k stands for sᵃ·rᵏ; right multiplication by r
            // bumps k, by s flips a and negates k (rᵏ·s = s·r⁻ᵏ).
            let by_r = |i: usize| if i < 2 * p { (i / p) * p + rot(i % p) } else { i };
            let by_s = |i: usize| if i < 2 * p { (1 - i / p) * p + refl(i % p) } else { i };
            ((0..m).map(by_r).collect(), (0..m).map(by_s).collect())
        }
    };
    let r = Permutation::from_images(&r_img)?;
    let s = Permutation::from_images(&s_img)?;
    let reflections = (0..p).map(|i| s.then(&r.pow(i as u64))).collect();
    Ok(DihedralEmbedding {
        p,
        m,
        kind,
        r,
        s,
        reflections,
    })
}

/// Every `x ∈ Sₘ` with `x² = g`, in lexicographic order of image arrays.
pub fn square_roots_in_sm(m: usize, g: &Permutation) -> Result<Vec<Permutation>> {
    check_search_degree(m, g)?;
    Ok(LexPermutations::new(m).filter(|x| x.square() == *g).collect())
}

/// As [`square_roots_in_sm`], split by the image of point 0 across the
/// rayon pool; the output order is the same.
pub fn square_roots_in_sm_par(m: usize, g: &Permutation) -> Result<Vec<Permutation>> {
    check_search_degree(m, g)?;
    let chunks: Vec<Vec<Permutation>> = (0..m)
        .into_par_iter()
        .map(|first| LexPermutations::with_first(m, first).filter(|x| x.square() == *g).collect())
        .collect();
    Ok(chunks.concat())
}

fn check_search_degree(m: usize, g: &Permutation) -> Result<()> {
    if g.degree() != m {
        return Err(GroupError::precondition(format!("g has degree {} not {m}", g.degree())));
    }
    if m > MAX_SEARCH_DEGREE {
        return Err(GroupError::ResourceCap(format!(
            "scanning S{m} exceeds the search degree limit {MAX_SEARCH_DEGREE}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosureOrder {
    Exact(usize),
    AtLeast(usize),
}

impl ClosureOrder {
    /// Lower bound on the order.
    pub fn bound(self) -> usize {
        match self {
            ClosureOrder::Exact(k) | ClosureOrder::AtLeast(k) => k,
        }
    }

    fn sort_key(self) -> (usize, bool) {
        match self {
            ClosureOrder::Exact(k) => (k, false),
            ClosureOrder::AtLeast(k) => (k, true),
        }
    }
}

impl fmt::Display for ClosureOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureOrder::Exact(k) => write!(f, "{k}"),
            ClosureOrder::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

impl Serialize for ClosureOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Order of `⟨gens⟩`, or `AtLeast(cap)` once the closure reaches `cap` elements.
pub fn closure_order_capped(degree: usize, gens: &[Permutation], cap: usize) -> ClosureOrder {
    let cap = cap.max(1);
    match closure_of_permutations(degree, gens, cap - 1) {
        Ok(elems) => ClosureOrder::Exact(elems.len()),
        Err(_) => ClosureOrder::AtLeast(cap),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every observed overgroup has order at least `4p²`.
    Holds,
    Violated,
    /// No square roots in this universe.
    Vacuous,
    /// Some closure stopped at a cap below `4p²`.
    Inconclusive,
    /// `p ≡ 1 (mod 4)`: reported without a verdict.
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Vacuous => "vacuous",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub p: usize,
    pub m: usize,
    pub kind: EmbeddingKind,
    /// Index `i` of the target reflection `s·rⁱ`.
    pub reflection_index: usize,
    pub reflection: String,
    pub generators: Vec<String>,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistogramEntry {
    pub order: ClosureOrder,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimum {
    pub order: ClosureOrder,
    /// Lexicographically first root attaining the minimum, 0-based cycles.
    pub witness: String,
    #[serde(skip)]
    pub witness_perm: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: SearchParams,
    pub roots: usize,
    pub histogram: Vec<HistogramEntry>,
    pub minimum: Option<Minimum>,
    pub bound: usize,
    pub below_bound: usize,
    pub verdict: Verdict,
}

impl SearchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,count\n");
        for e in &self.histogram {
            out += &format!("{},{}\n", e.order, e.count);
        }
        out
    }

    pub fn render_text(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "D{} in S{} ({}), g = {}, cap {}\nroots: {}\n",
            p.p, p.m, p.kind, p.reflection, p.cap, self.roots
        );
        for e in &self.histogram {
            out += &format!("  order {:>8}: {}\n", e.order.to_string(), e.count);
        }
        match &self.minimum {
            Some(min) => out += &format!("minimum {} at x = {}\n", min.order, min.witness),
            None => out += "minimum: none\n",
        }
        out += &format!("bound {} (4p^2): {} below, verdict {}\n", self.bound, self.below_bound, self.verdict);
        out
    }
}

/// Fixes the reflection `s·rⁱ` (`i = reflection_index`), scans `Sₘ` for its
/// square roots `x`, and records `|⟨r, s, x⟩|` capped at `cap`.
pub fn min_overgroup_search(
    p: usize,
    m: usize,
    kind: EmbeddingKind,
    cap: usize,
    reflection_index: usize,
    parallel: bool,
) -> Result<SearchReport> {
    let emb = embed_dihedral(p, m, kind)?;
    let g = *emb
        .reflections
        .get(reflection_index)
        .ok_or_else(|| GroupError::precondition(format!("reflection index {reflection_index} >= p")))?;
    let gens = emb.generators();
    let order_of = |x: &Permutation| closure_order_capped(m, &[gens[0], gens[1], *x], cap);
    let (roots, orders): (Vec<Permutation>, Vec<ClosureOrder>) = if parallel {
        let roots = square_roots_in_sm_par(m, &g)?;
        let orders = roots.par_iter().map(order_of).collect();
        (roots, orders)
    } else {
        let roots = square_roots_in_sm(m, &g)?;
        let orders = roots.iter().map(order_of).collect();
        (roots, orders)
    };

    let mut counts: BTreeMap<(usize, bool), (ClosureOrder, usize)> = BTreeMap::new();
    for o in &orders {
        counts.entry(o.sort_key()).or_insert((*o, 0)).1 += 1;
    }
    let histogram = counts
        .into_values()
        .map(|(order, count)| HistogramEntry { order, count })
        .collect();
    let minimum = orders
        .iter()
        .zip(&roots)
        .min_by_key(|(o, _)| o.sort_key())
        .map(|(o, x)| Minimum {
            order: *o,
            witness: x.to_cycle_string(0),
            witness_perm: *x,
        });

    let bound = 4 * p * p;
    let below_bound = orders
        .iter()
        .filter(|o| matches!(o, ClosureOrder::Exact(k) if *k < bound))
        .count();
    let inconclusive = orders
        .iter()
        .any(|o| matches!(o, ClosureOrder::AtLeast(c) if *c < bound));
    let verdict = if p % 4 != 3 {
        Verdict::NotApplicable
    } else if roots.is_empty() {
        Verdict::Vacuous
    } else if below_bound > 0 {
        Verdict::Violated
    } else if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Holds
    };

    Ok(SearchReport {
        params: SearchParams {
            p,
            m,
            kind,
            reflection_index,
            reflection: g.to_cycle_string(0),
            generators: gens.iter().map(|x| x.to_cycle_string(0)).collect(),
            cap,
        },
        roots: roots.len(),
        histogram,
        minimum,
        bound,
        below_bound,
        verdict,
    })
}

#[cfg(test)]
mod tests;

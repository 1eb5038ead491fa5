//! Positive equations `g₁·x·g₂·x⋯gₙ·x = 1` and their solution in cyclic
//! wreath products.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::constructions::{WreathGroup, DEFAULT_WREATH_CAP};
use crate::error::{GroupError, Result};
use crate::group::{Element, Embedding, Group};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveEquation {
    group: Group,
    coeffs: Vec<Element>,
}

impl PositiveEquation {
    pub fn new(group: &Group, coeffs: Vec<Element>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(GroupError::precondition("a positive equation needs degree >= 1"));
        }
        for c in &coeffs {
            if !group.contains(c) {
                return Err(GroupError::ForeignElement {
                    expected: group.id(),
                    found: c.group_id(),
                });
            }
        }
        Ok(PositiveEquation {
            group: group.clone(),
            coeffs,
        })
    }

    /// Coefficients separated by `*x*`, with a trailing `*x*` or `*x`:
    /// `"(1 2)*x*()*x*"` has degree 2.
    pub fn parse(group: &Group, text: &str) -> Result<Self> {
        let body = text.trim_end();
        let body = body
            .strip_suffix("*x*")
            .or_else(|| body.strip_suffix("*x"))
            .ok_or_else(|| GroupError::parse(body.len(), "equation must end with '*x*' or '*x'"))?;
        let mut coeffs = Vec::new();
        let mut offset = 0;
        for piece in body.split("*x*") {
            let c = group.parse_element(piece.trim()).map_err(|e| match e {
                GroupError::Parse { position, message } => GroupError::Parse {
                    position: offset + position,
                    message,
                },
                other => other,
            })?;
            coeffs.push(c);
            offset += piece.len() + 3;
        }
        PositiveEquation::new(group, coeffs)
    }

    /// Seeded uniform coefficients.
    pub fn random<R: Rng + ?Sized>(group: &Group, degree: usize, rng: &mut R) -> Result<Self> {
        let elems = group.enumerate();
        let coeffs = (0..degree).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        PositiveEquation::new(group, coeffs)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coefficients(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn render(&self) -> String {
        self.coeffs.iter().map(|c| format!("{}*x*", self.group.render(c))).collect()
    }

    /// `embed(g₁)·x·embed(g₂)·x⋯embed(gₙ)·x` in the target of `embed`.
    pub fn evaluate(&self, embed: &Embedding, x: &Element) -> Element {
        let h = embed.target();
        self.coeffs.iter().fold(h.identity(), |acc, g| {
            let acc = h.mul(&acc, &embed.apply(g));
            h.mul(&acc, x)
        })
    }

    pub fn is_solution(&self, embed: &Embedding, x: &Element) -> bool {
        self.evaluate(embed, x) == embed.target().identity()
    }
}

impl fmt::Display for PositiveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Least element of `G` in canonical order solving `eq` inside `G`.
pub fn solve_in_group(eq: &PositiveEquation) -> Option<Element> {
    let embed = Embedding::identity(&eq.group);
    eq.group.enumerate().into_iter().find(|x| eq.is_solution(&embed, x))
}

#[derive(Clone, Debug)]
pub struct LevinSolution {
    /// `G ≀ Zₙ`, or `G` itself for degree 1.
    pub overgroup: Group,
    pub embedding: Embedding,
    pub x: Element,
    pub wreath: Option<WreathGroup>,
}

/// Indexed copy of the coefficient group for the inner search loop.
struct Dense {
    elems: Vec<Element>,
    mul: Vec<u16>,
    order: usize,
    id: u16,
}

impl Dense {
    fn new(g: &Group) -> Self {
        let elems = g.enumerate();
        let order = elems.len();
        let rank: HashMap<&Element, u16> = elems.iter().enumerate().map(|(i, e)| (e, i as u16)).collect();
        let mut mul = vec![0u16; order * order];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * order + j] = rank[&g.mul(a, b)];
            }
        }
        let id = rank[&g.identity()];
        Dense { elems, mul, order, id }
    }

    #[inline]
    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    fn rank(&self, e: &Element) -> u16 {
        self.elems.binary_search(e).expect("element of the coefficient group") as u16
    }
}

/// Search plan for one shift `k`: coordinate `i` of the product is
/// `g₁·f(i)·g₂·f(i−k)⋯gₙ·f(i−(n−1)k)` and becomes checkable once the
/// largest position it reads has been assigned.
struct Plan {
    reads: Vec<Vec<usize>>,
    ready_at: Vec<Vec<usize>>,
}

impl Plan {
    fn new(n: usize, k: usize) -> Self {
        let reads: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + n * n - j * k) % n).collect())
            .collect();
        let mut ready_at = vec![Vec::new(); n];
        for (i, r) in reads.iter().enumerate() {
            ready_at[*r.iter().max().unwrap()].push(i);
        }
        Plan { reads, ready_at }
    }
}

struct Searcher<'a> {
    dense: &'a Dense,
    coeffs: Vec<u16>,
    plan: Plan,
}

impl Searcher<'_> {
    fn coordinate_ok(&self, f: &[u16], i: usize) -> bool {
        let mut acc = self.dense.id;
        for (g, &pos) in self.coeffs.iter().zip(&self.plan.reads[i]) {
            acc = self.dense.mul(self.dense.mul(acc, *g), f[pos]);
        }
        acc == self.dense.id
    }

    fn step_ok(&self, f: &[u16], pos: usize) -> bool {
        self.plan.ready_at[pos].iter().all(|&i| self.coordinate_ok(f, i))
    }

    /// Depth-first in lexicographic order from position `pos`; `visit`
    /// returns `true` to stop.
    fn walk(&self, f: &mut Vec<u16>, visit: &mut dyn FnMut(&[u16]) -> bool) -> bool {
        let pos = f.len();
        if pos == self.plan.reads.len() {
            return visit(f);
        }
        for v in 0..self.dense.order as u16 {
            f.push(v);
            if self.step_ok(f, pos) && self.walk(f, visit) {
                f.pop();
                return true;
            }
            f.pop();
        }
        false
    }

    fn first_from(&self, f0: u16) -> Option<Vec<u16>> {
        let mut f = vec![f0];
        if !self.step_ok(&f, 0) {
            return None;
        }
        let mut found = None;
        self.walk(&mut f, &mut |sol| {
            found = Some(sol.to_vec());
            true
        });
        found
    }
}

fn check_cap(eq: &PositiveEquation, cap: u128) -> Result<()> {
    let n = eq.degree() as u32;
    let size = (eq.group.order() as u128)
        .checked_pow(n)
        .and_then(|p| p.checked_mul(n as u128));
    match size {
        Some(s) if s <= cap => Ok(()),
        _ => Err(GroupError::ResourceCap(format!(
            "search space {}·|{}|^{} exceeds cap {cap}",
            n,
            eq.group.name(),
            n
        ))),
    }
}

fn degree_one(eq: &PositiveEquation) -> Result<LevinSolution> {
    let g = &eq.group;
    let x = g.inverse(&eq.coeffs[0]);
    let embedding = Embedding::identity(g);
    if !eq.is_solution(&embedding, &x) {
        return Err(GroupError::LevinViolation(format!("{} is not solved by its inverse coefficient", eq)));
    }
    Ok(LevinSolution {
        overgroup: g.clone(),
        embedding,
        x,
        wreath: None,
    })
}

/// First solution of `eq` in `G ≀ Zₙ` in lexicographic `(k, f)` order,
/// verified by full evaluation. `workers = None` uses the global pool.
pub fn levin_solve(eq: &PositiveEquation, cap: Option<u128>, workers: Option<usize>) -> Result<LevinSolution> {
    let cap = cap.unwrap_or(DEFAULT_WREATH_CAP);
    check_cap(eq, cap)?;
    let n = eq.degree();
    if n == 1 {
        return degree_one(eq);
    }
    let wreath = WreathGroup::with_cap(&eq.group, n, cap)?;
    let dense = Dense::new(&eq.group);
    let coeffs: Vec<u16> = eq.coeffs.iter().map(|c| dense.rank(c)).collect();

    let search = || {
        (0..n).find_map(|k| {
            let searcher = Searcher {
                dense: &dense,
                coeffs: coeffs.clone(),
                plan: Plan::new(n, k),
            };
            (0..dense.order as u16)
                .into_par_iter()
                .find_map_first(|f0| searcher.first_from(f0))
                .map(|f| (k, f))
        })
    };
    let found = crate::with_workers(workers, search)?;
    let (k, f) = found.ok_or_else(|| GroupError::LevinViolation(format!("no solution of {eq} in the wreath product")))?;

    let coords: Vec<Element> = f.iter().map(|&i| dense.elems[i as usize].clone()).collect();
    let x = wreath.element(&coords, k)?;
    let embedding = wreath.diag_embedding();
    if !eq.is_solution(&embedding, &x) {
        return Err(GroupError::LevinViolation(format!(
            "candidate {} fails full evaluation of {eq}",
            wreath.render(&x)
        )));
    }
    Ok(LevinSolution {
        overgroup: wreath.group().clone(),
        embedding,
        x,
        wreath: Some(wreath),
    })
}

/// Every solution of `eq` in `G ≀ Zₙ` (`n ≥ 2`), in lexicographic `(k, f)` order.
pub fn levin_solutions(eq: &PositiveEquation, cap: Option<u128>) -> Result<(WreathGroup, Vec<Element>)> {
    let cap = cap.unwrap_or(DEFAULT_WREATH_CAP);
    check_cap(eq, cap)?;
    let n = eq.degree();
    let wreath = WreathGroup::with_cap(&eq.group, n, cap)?;
    let dense = Dense::new(&eq.group);
    let coeffs: Vec<u16> = eq.coeffs.iter().map(|c| dense.rank(c)).collect();
    let mut out = Vec::new();
    for k in 0..n {
        let searcher = Searcher {
            dense: &dense,
            coeffs: coeffs.clone(),
            plan: Plan::new(n, k),
        };
        let mut sols: Vec<Vec<u16>> = Vec::new();
        searcher.walk(&mut Vec::with_capacity(n), &mut |f| {
            sols.push(f.to_vec());
            false
        });
        for f in sols {
            let coords: Vec<Element> = f.iter().map(|&i| dense.elems[i as usize].clone()).collect();
            out.push(wreath.element(&coords, k)?);
        }
    }
    Ok((wreath, out))
}

/// `G ≀ Zₙ` with the closed-form root of `g`.
pub fn adjoin_nth_root(group: &Group, g: &Element, n: usize) -> Result<(WreathGroup, Embedding, Element)> {
    adjoin_nth_root_capped(group, g, n, DEFAULT_WREATH_CAP)
}

pub fn adjoin_nth_root_capped(group: &Group, g: &Element, n: usize, cap: u128) -> Result<(WreathGroup, Embedding, Element)> {
    if n < 2 {
        return Err(GroupError::precondition(format!("root degree {n} must be >= 2")));
    }
    let wreath = WreathGroup::with_cap(group, n, cap)?;
    let x = wreath.levin_root(g)?;
    let embedding = wreath.diag_embedding();
    Ok((wreath, embedding, x))
}

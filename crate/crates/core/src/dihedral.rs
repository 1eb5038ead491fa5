//! Dihedral subgroups `D_p` of a finite group and the lower-bound argument
//! for adjoining a square root of a reflection.
//!
//! Everything here recomputes its facts from the groups involved; nothing
//! is taken on trust from callers. Checks that the argument guarantees
//! become [`GroupError::Falsified`] when they fail.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::group::{Element, Group, Subgroup};
use crate::perm::Permutation;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether `−1` is a square modulo the odd prime `p`, by scanning residues.
pub fn minus_one_is_square_mod_p(p: u64) -> Result<bool> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(GroupError::precondition(format!("{p} is not an odd prime")));
    }
    Ok((1..p).any(|t| t * t % p == p - 1))
}

/// A subgroup isomorphic to `D_p`, `p` an odd prime, split into its
/// rotations and reflections.
#[derive(Clone, Debug)]
pub struct DihedralCopy {
    subgroup: Subgroup,
    p: usize,
    rotations: Subgroup,
    reflections: Vec<Element>,
}

impl DihedralCopy {
    pub fn identify(subgroup: &Subgroup) -> Result<Self> {
        let g = subgroup.parent();
        let order = subgroup.order();
        let p = order / 2;
        if order % 2 != 0 || p % 2 == 0 || !is_prime(p as u64) {
            return Err(GroupError::precondition(format!(
                "subgroup of order {order} is not dihedral of order 2p with p an odd prime"
            )));
        }
        let (rot, refl): (Vec<Element>, Vec<Element>) = subgroup
            .elements()
            .iter()
            .cloned()
            .partition(|e| p % g.element_order(e) == 0);
        if rot.len() != p || refl.iter().any(|e| g.element_order(e) != 2) {
            return Err(GroupError::precondition(format!(
                "subgroup of order {order} is not dihedral"
            )));
        }
        Ok(DihedralCopy {
            subgroup: subgroup.clone(),
            p,
            rotations: Subgroup::from_elements(g, rot)?,
            reflections: refl,
        })
    }

    /// `⟨r, s⟩` inside `ambient`.
    pub fn from_generators(ambient: &Group, r: &Element, s: &Element) -> Result<Self> {
        DihedralCopy::identify(&ambient.generate(&[r.clone(), s.clone()]))
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn ambient(&self) -> &Group {
        self.subgroup.parent()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rotations(&self) -> &Subgroup {
        &self.rotations
    }

    pub fn reflections(&self) -> &[Element] {
        &self.reflections
    }

    pub fn is_reflection(&self, e: &Element) -> bool {
        self.reflections.binary_search(e).is_ok()
    }

    /// The same copy inside a group containing it, through `map`.
    fn transport(&self, target: &Group, map: impl Fn(&Element) -> Element) -> Result<Self> {
        let elems = self.subgroup.elements().iter().map(map);
        DihedralCopy::identify(&Subgroup::from_elements(target, elems)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma2Verdict {
    Normal,
    MeetsInReflection,
}

fn check_root(copy: &DihedralCopy, x: &Element) -> Result<Element> {
    let ambient = copy.ambient();
    if !ambient.contains(x) {
        return Err(GroupError::precondition("x is not in the ambient group"));
    }
    let g = ambient.mul(x, x);
    if !copy.is_reflection(&g) {
        return Err(GroupError::precondition(format!(
            "x² = {} is not a reflection of the dihedral subgroup",
            ambient.render(&g)
        )));
    }
    Ok(g)
}

fn generated_by_copy_and(copy: &DihedralCopy, x: &Element) -> Subgroup {
    let mut gens: Vec<Element> = copy.subgroup.elements().to_vec();
    gens.push(x.clone());
    copy.ambient().generate(&gens)
}

/// Either `G ◁ G̃` or `G ∩ Gˣ = ⟨x²⟩`, for `G̃ = ⟨G, x⟩` and `x²` a reflection.
pub fn lemma2_check(copy: &DihedralCopy, x: &Element) -> Result<Lemma2Verdict> {
    let ambient = copy.ambient();
    let g = check_root(copy, x)?;
    if generated_by_copy_and(copy, x).order() != ambient.order() {
        return Err(GroupError::precondition("the ambient group is not generated by G and x"));
    }
    let conj = ambient.conjugate_subgroup(&copy.subgroup, x);
    let meet = ambient.intersection(&copy.subgroup, &conj);
    if meet == copy.subgroup {
        if !ambient.is_normal(&copy.subgroup) {
            return Err(GroupError::falsified("G = G^x but G is not normal in <G, x>"));
        }
        return Ok(Lemma2Verdict::Normal);
    }
    if meet == ambient.generate(&[g.clone()]) {
        return Ok(Lemma2Verdict::MeetsInReflection);
    }
    Err(GroupError::falsified(format!(
        "G ∩ G^x has order {}, neither G nor <{}>",
        meet.order(),
        ambient.render(&g)
    )))
}

/// No reflection of a normal `D_p`, `p ≡ 3 (mod 4)`, is a square in the
/// ambient group. Scans every element.
pub fn lemma3_check(copy: &DihedralCopy) -> Result<bool> {
    let ambient = copy.ambient();
    if copy.p % 4 != 3 {
        return Err(GroupError::precondition(format!("p = {} is not 3 mod 4", copy.p)));
    }
    if !ambient.is_normal(&copy.subgroup) {
        return Err(GroupError::precondition("the dihedral subgroup is not normal"));
    }
    for y in ambient.enumerate() {
        let sq = ambient.mul(&y, &y);
        if copy.is_reflection(&sq) {
            return Err(GroupError::falsified(format!(
                "{} squares to the reflection {}",
                ambient.render(&y),
                ambient.render(&sq)
            )));
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeColor {
    /// Intersection of order 2.
    Green,
    /// Intersection of order `p`.
    Yellow,
    /// Trivial intersection.
    Red,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ColorCensus {
    pub green: usize,
    pub yellow: usize,
    pub red: usize,
}

/// Conjugates of a dihedral copy with edges coloured by intersection size.
/// Vertex 0 is the copy itself.
#[derive(Clone, Debug)]
pub struct ConjugateGraph {
    copy: DihedralCopy,
    vertices: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    colors: Vec<Option<EdgeColor>>,
}

pub fn build_conjugate_graph(copy: &DihedralCopy) -> Result<ConjugateGraph> {
    let ambient = copy.ambient();
    let mut vertices = vec![copy.subgroup.clone()];
    let mut index = HashMap::from([(copy.subgroup.clone(), 0)]);
    let mut head = 0;
    while head < vertices.len() {
        let v = vertices[head].clone();
        head += 1;
        for h in ambient.generators() {
            let w = ambient.conjugate_subgroup(&v, h);
            if !index.contains_key(&w) {
                index.insert(w.clone(), vertices.len());
                vertices.push(w);
            }
        }
    }
    let n = vertices.len();
    let p = copy.p;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let sizes: Vec<usize> = pairs
        .par_iter()
        .map(|&(i, j)| meet_size(vertices[i].elements(), vertices[j].elements()))
        .collect();
    let mut colors = vec![None; n * n];
    for (&(i, j), &size) in pairs.iter().zip(&sizes) {
        let c = match size {
            1 => EdgeColor::Red,
            2 => EdgeColor::Green,
            s if s == p => EdgeColor::Yellow,
            s => {
                return Err(GroupError::falsified(format!(
                    "unexpected intersection size {s} between conjugates {i} and {j}"
                )))
            }
        };
        colors[i * n + j] = Some(c);
        colors[j * n + i] = Some(c);
    }
    Ok(ConjugateGraph {
        copy: copy.clone(),
        vertices,
        index,
        colors,
    })
}

fn meet_size(a: &[Element], b: &[Element]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

impl ConjugateGraph {
    pub fn copy(&self) -> &DihedralCopy {
        &self.copy
    }

    pub fn ambient(&self) -> &Group {
        self.copy.ambient()
    }

    pub fn p(&self) -> usize {
        self.copy.p
    }

    pub fn vertices(&self) -> &[Subgroup] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `None` on the diagonal.
    pub fn color(&self, u: usize, v: usize) -> Option<EdgeColor> {
        self.colors[u * self.len() + v]
    }

    pub fn census(&self) -> ColorCensus {
        let mut c = ColorCensus::default();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                match self.color(u, v) {
                    Some(EdgeColor::Green) => c.green += 1,
                    Some(EdgeColor::Yellow) => c.yellow += 1,
                    Some(EdgeColor::Red) => c.red += 1,
                    None => {}
                }
            }
        }
        c
    }

    pub fn degree(&self, u: usize, color: EdgeColor) -> usize {
        (0..self.len()).filter(|&v| self.color(u, v) == Some(color)).count()
    }

    /// Overwrites one edge colour; for building negative fixtures.
    pub fn recolored(&self, u: usize, v: usize, color: EdgeColor) -> ConjugateGraph {
        let mut g = self.clone();
        let n = g.len();
        g.colors[u * n + v] = Some(color);
        g.colors[v * n + u] = Some(color);
        g
    }

    /// `u ↦ uʸ` on vertex indices.
    pub fn vertex_permutation(&self, y: &Element) -> Vec<usize> {
        let ambient = self.ambient();
        self.vertices
            .iter()
            .map(|v| {
                let w = ambient.conjugate_subgroup(v, y);
                self.index[&w]
            })
            .collect()
    }

    /// Whether conjugation by `y` preserves every edge colour.
    pub fn is_color_automorphism(&self, y: &Element) -> bool {
        let pi = self.vertex_permutation(y);
        let n = self.len();
        (0..n).all(|u| (0..n).all(|v| self.color(u, v) == self.color(pi[u], pi[v])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// From the cycle decomposition: one transposition short per cycle.
    pub fn of_images(images: &[usize]) -> Parity {
        let mut seen = vec![false; images.len()];
        let mut transpositions = 0;
        for start in 0..images.len() {
            let mut len = 0usize;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = images[i];
                len += 1;
            }
            transpositions += len.saturating_sub(1);
        }
        Parity::from_count(transpositions)
    }

    /// From the inversion count of the image sequence.
    pub fn by_inversions(images: &[usize]) -> Parity {
        let mut inversions = 0;
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i] > images[j] {
                    inversions += 1;
                }
            }
        }
        Parity::from_count(inversions)
    }

    pub fn of_permutation(p: &Permutation) -> Parity {
        if p.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn from_count(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexAction {
    pub images: Vec<usize>,
    pub parity: Parity,
    pub fixed_points: usize,
    /// For a reflection of the base copy on a complete green graph with
    /// `p + 1` vertices: whether it fixes exactly two vertices and is odd
    /// (`p ≡ 3 mod 4`) or even (`p ≡ 1 mod 4`) as the transposition count predicts.
    pub reflection_check: Option<bool>,
}

pub fn conjugation_parity(graph: &ConjugateGraph, y: &Element) -> VertexAction {
    let images = graph.vertex_permutation(y);
    let parity = Parity::of_images(&images);
    let fixed_points = images.iter().enumerate().filter(|(i, v)| *i == **v).count();
    let p = graph.p();
    let census = graph.census();
    let complete_green = graph.len() == p + 1 && census.yellow == 0 && census.red == 0;
    let reflection_check = (complete_green && graph.copy.is_reflection(y)).then(|| {
        let expected = if ((p - 1) / 2) % 2 == 1 { Parity::Odd } else { Parity::Even };
        fixed_points == 2 && parity == expected
    });
    VertexAction {
        images,
        parity,
        fixed_points,
        reflection_check,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum YellowCensus {
    /// Red edges present; the component analysis does not apply.
    RedEdgePresent { red: usize },
    Checked {
        u: usize,
        v: usize,
        green_degrees: Vec<usize>,
        /// `p = (v − 1)·u`, checked when the base vertex has exactly `p` green edges.
        p_equation: Option<bool>,
    },
}

/// Yellow components are cliques of one common size `u`, green degrees
/// are multiples of `p` equal to `(v − 1)·u`, and with a root `x` given the
/// base vertex has a green edge.
pub fn lemma5_lemma6_checks(graph: &ConjugateGraph, x: Option<&Element>) -> Result<YellowCensus> {
    let census = graph.census();
    if census.red > 0 {
        return Ok(YellowCensus::RedEdgePresent { red: census.red });
    }
    let n = graph.len();
    let p = graph.p();
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for b in 0..n {
                if comp[b] == usize::MAX && graph.color(a, b) == Some(EdgeColor::Yellow) {
                    comp[b] = id;
                    members.push(b);
                }
            }
        }
        components.push(members);
    }
    for c in &components {
        for (i, &a) in c.iter().enumerate() {
            for &b in &c[i + 1..] {
                if graph.color(a, b) != Some(EdgeColor::Yellow) {
                    return Err(GroupError::falsified(format!(
                        "yellow component is not complete: vertices {a} and {b}"
                    )));
                }
            }
        }
    }
    let u = components[0].len();
    if let Some(c) = components.iter().find(|c| c.len() != u) {
        return Err(GroupError::falsified(format!(
            "yellow components of sizes {u} and {} (vertex {})",
            c.len(),
            c[0]
        )));
    }
    let v = components.len();
    let green_degrees: Vec<usize> = (0..n).map(|a| graph.degree(a, EdgeColor::Green)).collect();
    for (a, &d) in green_degrees.iter().enumerate() {
        if d % p != 0 {
            return Err(GroupError::falsified(format!("vertex {a} has green degree {d}, not a multiple of {p}")));
        }
        if d != (v - 1) * u {
            return Err(GroupError::falsified(format!(
                "vertex {a} has green degree {d} but (v-1)u = {}",
                (v - 1) * u
            )));
        }
    }
    if let Some(x) = x {
        let conj = graph.ambient().conjugate_subgroup(&graph.copy.subgroup, x);
        let target = graph
            .vertex_of(&conj)
            .ok_or_else(|| GroupError::precondition("G^x is not a vertex of the graph"))?;
        if graph.color(0, target) != Some(EdgeColor::Green) {
            return Err(GroupError::falsified("the edge (G, G^x) is not green"));
        }
        if green_degrees[0] == 0 {
            return Err(GroupError::falsified("the base vertex has no green edge"));
        }
    }
    let p_equation = (green_degrees[0] == p).then(|| p == (v - 1) * u);
    if p_equation == Some(false) {
        return Err(GroupError::falsified(format!("p = {p} but (v-1)u = {}", (v - 1) * u)));
    }
    Ok(YellowCensus::Checked {
        u,
        v,
        green_degrees,
        p_equation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    RedEdge,
    LargeK,
    V2Up,
    Vp1U1,
    NormalSubgroup,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::RedEdge => "red-edge",
            CaseTag::LargeK => "large-K",
            CaseTag::V2Up => "v2-up",
            CaseTag::Vp1U1 => "vp1-u1",
            CaseTag::NormalSubgroup => "normal-subgroup",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityRecord {
    pub element: String,
    pub role: String,
    pub vertex_parity: Parity,
    pub fixed_points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub p: usize,
    pub ambient_order: usize,
    pub base_order: usize,
    /// The trace ran on `⟨G, x⟩` rather than the group supplied.
    pub restricted: bool,
    pub conjugates: usize,
    pub normalizer_order: usize,
    pub lemma2: Lemma2Verdict,
    pub census: ColorCensus,
    pub yellow: Option<YellowCensus>,
    pub case: CaseTag,
    pub bound: usize,
    pub bound_holds: bool,
    pub parity: Vec<ParityRecord>,
    pub steps: Vec<TraceStep>,
}

impl Theorem1Report {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "p = {}  |G~| = {}  |G| = {}  |K| = {}  restricted = {}\n",
            self.p, self.ambient_order, self.base_order, self.conjugates, self.restricted
        );
        out += &format!(
            "census: green {} yellow {} red {}  case {}\n",
            self.census.green, self.census.yellow, self.census.red, self.case
        );
        for s in &self.steps {
            out += &format!("[{}] {}: {}\n", if s.passed { "ok" } else { "FAIL" }, s.name, s.detail);
        }
        out += &format!(
            "bound |G~| >= |G|^2: {} >= {} {}\n",
            self.ambient_order,
            self.bound,
            if self.bound_holds { "holds" } else { "VIOLATED" }
        );
        out
    }
}

/// Replays the lower-bound argument for `x² = g`, `g` a reflection of a
/// dihedral copy with `p ≡ 3 (mod 4)`, and reports every intermediate fact.
pub fn theorem1_trace(copy: &DihedralCopy, x: &Element) -> Result<Theorem1Report> {
    if copy.p % 4 != 3 {
        return Err(GroupError::precondition(format!("p = {} is not 3 mod 4", copy.p)));
    }
    check_root(copy, x)?;
    let generated = generated_by_copy_and(copy, x);
    let restricted = generated.order() != copy.ambient().order();
    let (copy, x) = if restricted {
        restrict(copy, x, &generated)?
    } else {
        (copy.clone(), x.clone())
    };
    let ambient = copy.ambient().clone();
    let g = ambient.mul(&x, &x);
    let p = copy.p;
    let order = ambient.order();
    let base_order = 2 * p;
    let mut steps = Vec::new();
    let mut step = |name: &str, passed: bool, detail: String| {
        steps.push(TraceStep {
            name: name.to_string(),
            passed,
            detail,
        });
    };

    let lemma2 = lemma2_check(&copy, &x)?;
    step("lemma2", true, format!("{lemma2:?}"));
    if lemma2 == Lemma2Verdict::Normal {
        lemma3_check(&copy)?;
        return Err(GroupError::falsified(
            "G is normal in <G, x> yet x² is a reflection and no reflection is a square",
        ));
    }

    let graph = build_conjugate_graph(&copy)?;
    let k = graph.len();
    let normalizer = ambient.normalizer(copy.subgroup());
    let orbit_ok = order == k * normalizer.order();
    step(
        "lemma4",
        orbit_ok && order >= k * base_order,
        format!("|G~| = {order} = |K|·|St| = {k}·{}; |K|·|G| = {}", normalizer.order(), k * base_order),
    );
    if !orbit_ok {
        return Err(GroupError::falsified("orbit-stabilizer count disagrees"));
    }
    let auto = ambient.generators().iter().all(|h| graph.is_color_automorphism(h));
    step("color-automorphism", auto, "conjugation by each generator preserves colours".into());
    if !auto {
        return Err(GroupError::falsified("conjugation does not preserve edge colours"));
    }

    let census = graph.census();
    let yellow = lemma5_lemma6_checks(&graph, Some(&x))?;
    let green0 = graph.degree(0, EdgeColor::Green);
    let case = if census.red > 0 {
        let r = (1..k).find(|&v| graph.color(0, v) == Some(EdgeColor::Red));
        let detail = match r {
            Some(v) => format!("G ∩ G^h trivial for vertex {v}: |G~| >= |G|·|G^h| = {}", base_order * base_order),
            None => format!("{} red edges away from the base vertex", census.red),
        };
        step("red-edge", true, detail);
        CaseTag::RedEdge
    } else if green0 >= 2 * p {
        step("large-K", k > 2 * p, format!("green degree {green0} >= 2p, |K| = {k} > {}", 2 * p));
        CaseTag::LargeK
    } else {
        match &yellow {
            YellowCensus::Checked { u, v, .. } if *v == 2 && *u == p => {
                step("v2-up", k == 2 * p, format!("v = 2, u = p, |K| = {k}"));
                CaseTag::V2Up
            }
            YellowCensus::Checked { u, v, .. } if *v == p + 1 && *u == 1 => {
                step("vp1-u1", k == p + 1, format!("v = p + 1, u = 1, |K| = {k}"));
                CaseTag::Vp1U1
            }
            other => {
                return Err(GroupError::falsified(format!(
                    "green degree {green0} with yellow census {other:?} fits no case"
                )))
            }
        }
    };
    if let YellowCensus::Checked { u, v, .. } = &yellow {
        step("lemma5", true, format!("yellow cliques of size u = {u}, v = {v}"));
        step("lemma6", true, format!("green degree of G = {green0}, a multiple of {p}"));
    }

    let act_x = conjugation_parity(&graph, &x);
    let act_g = conjugation_parity(&graph, &g);
    let squared: Vec<usize> = act_x.images.iter().map(|&i| act_x.images[i]).collect();
    let parity_ok = squared == act_g.images && act_g.parity == Parity::Even;
    step(
        "parity",
        parity_ok,
        format!(
            "conjugation by g = x² acts on K as the square of x's action: {}",
            act_g.parity
        ),
    );
    if !parity_ok {
        return Err(GroupError::falsified("conjugation by x² is not an even vertex permutation"));
    }
    if case == CaseTag::Vp1U1 && act_g.reflection_check == Some(true) && act_g.parity == Parity::Odd {
        return Err(GroupError::falsified("a reflection acts oddly on K yet is a square"));
    }
    let parity = vec![
        ParityRecord {
            element: ambient.render(&x),
            role: "x".into(),
            vertex_parity: act_x.parity,
            fixed_points: act_x.fixed_points,
        },
        ParityRecord {
            element: ambient.render(&g),
            role: "g = x^2".into(),
            vertex_parity: act_g.parity,
            fixed_points: act_g.fixed_points,
        },
    ];

    let bound = base_order * base_order;
    let bound_holds = order >= bound;
    step("bound", bound_holds, format!("{order} >= {bound}"));
    if !bound_holds {
        return Err(GroupError::falsified(format!("|G~| = {order} < |G|² = {bound}")));
    }
    Ok(Theorem1Report {
        p,
        ambient_order: order,
        base_order,
        restricted,
        conjugates: k,
        normalizer_order: normalizer.order(),
        lemma2,
        census,
        yellow: Some(yellow),
        case,
        bound,
        bound_holds,
        parity,
        steps,
    })
}

/// Moves the copy and `x` into a standalone group `⟨G, x⟩`.
fn restrict(copy: &DihedralCopy, x: &Element, sub: &Subgroup) -> Result<(DihedralCopy, Element)> {
    let ambient = copy.ambient();
    let name = format!("<G,x> in {}", ambient.name());
    if let Some(deg) = ambient.degree() {
        let perm = |e: &Element| ambient.permutation_of(e).expect("permutation backend");
        let mut gens: Vec<Permutation> = copy.subgroup.elements().iter().map(perm).collect();
        gens.push(perm(x));
        let h = Group::perm_closure(deg, &gens, sub.order())?;
        let map = |e: &Element| h.element_from_permutation(&perm(e)).expect("element of <G, x>");
        let x2 = map(x);
        return Ok((copy.transport(&h, map)?, x2));
    }
    let (h, emb) = sub.to_group(name)?;
    let back = emb.inverse_table();
    let map = |e: &Element| back[e].clone();
    let x2 = map(x);
    Ok((copy.transport(&h, map)?, x2))
}

#[cfg(test)]
mod tests;

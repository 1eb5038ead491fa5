use proptest::prelude::*;

use super::*;
use crate::constructions::{lemma7_subgroup, named_group, WreathGroup};

fn el(g: &Group, s: &str) -> Element {
    g.parse_element(s).unwrap()
}

/// The small subgroup over `D_p` for the reflection `s`, materialized as its
/// own group, with the diagonal copy of `D_p` and the square root inside it.
fn small_overgroup(p: usize) -> (DihedralCopy, Element, Group) {
    let d = named_group(&format!("D{p}")).unwrap();
    let s = el(&d, "s");
    let h = lemma7_subgroup(&d, &s).unwrap();
    let (hg, emb) = h.subgroup.to_group("H").unwrap();
    let back = emb.inverse_table();
    let copy_elems = d.enumerate().into_iter().map(|e| back[&h.wreath.diag_embed(&e)].clone());
    let copy = DihedralCopy::identify(&Subgroup::from_elements(&hg, copy_elems).unwrap()).unwrap();
    let x = back[&h.root].clone();
    (copy, x, hg)
}

#[test]
fn minus_one_residues() {
    assert!(!minus_one_is_square_mod_p(7).unwrap());
    assert!(minus_one_is_square_mod_p(5).unwrap());
    assert!(minus_one_is_square_mod_p(13).unwrap());
    assert!(minus_one_is_square_mod_p(9).is_err());
    assert!(minus_one_is_square_mod_p(2).is_err());
    assert!(minus_one_is_square_mod_p(1).is_err());
}

#[test]
fn minus_one_square_iff_one_mod_four_below_1000() {
    for p in (3u64..1000).step_by(2).filter(|&p| is_prime(p)) {
        // Euler's criterion: (−1)^((p−1)/2) ≡ 1.
        let euler = (p - 1) / 2 % 2 == 0;
        assert_eq!(minus_one_is_square_mod_p(p).unwrap(), euler, "p = {p}");
        assert_eq!(euler, p % 4 == 1);
    }
}

#[test]
fn identify_rejects_non_dihedral() {
    let z6 = named_group("Z6").unwrap();
    assert!(DihedralCopy::identify(&Subgroup::whole(&z6)).is_err());
    let s4 = named_group("S4").unwrap();
    assert!(DihedralCopy::identify(&Subgroup::whole(&s4)).is_err());
    let d7 = named_group("D7").unwrap();
    let c = DihedralCopy::identify(&Subgroup::whole(&d7)).unwrap();
    assert_eq!(c.p(), 7);
    assert_eq!(c.reflections().len(), 7);
    assert!(c.is_reflection(&el(&d7, "s*r^3")));
}

#[test]
fn lemma2_on_small_overgroup_over_d7() {
    let (copy, x, hg) = small_overgroup(7);
    assert_eq!(hg.order(), 196);
    assert_eq!(lemma2_check(&copy, &x).unwrap(), Lemma2Verdict::MeetsInReflection);
    assert!(!hg.is_normal(copy.subgroup()));
    let meet = hg.intersection(copy.subgroup(), &hg.conjugate_subgroup(copy.subgroup(), &x));
    assert_eq!(meet.order(), 2);
    assert!(meet.contains(&hg.mul(&x, &x)));
}

#[test]
fn lemma2_on_restricted_wreath_d3() {
    let d3 = named_group("D3").unwrap();
    let w = WreathGroup::new(&d3, 2).unwrap();
    let x = w.levin_root(&el(&d3, "s")).unwrap();
    let mut gens: Vec<Element> = d3.enumerate().iter().map(|e| w.diag_embed(e)).collect();
    gens.push(x.clone());
    let sub = w.generate(&gens);
    let (h, emb) = sub.to_group("<G,x>").unwrap();
    let back = emb.inverse_table();
    let copy_elems = d3.enumerate().into_iter().map(|e| back[&w.diag_embed(&e)].clone());
    let copy = DihedralCopy::identify(&Subgroup::from_elements(&h, copy_elems).unwrap()).unwrap();
    assert_eq!(lemma2_check(&copy, &back[&x]).unwrap(), Lemma2Verdict::MeetsInReflection);
}

#[test]
fn lemma2_preconditions() {
    let (copy, x, hg) = small_overgroup(7);
    let rotation = copy.rotations().elements()[1].clone();
    assert!(matches!(lemma2_check(&copy, &hg.identity()), Err(GroupError::Precondition(_))));
    assert!(matches!(lemma2_check(&copy, &rotation), Err(GroupError::Precondition(_))));
    // x³ squares to g³ = g as well.
    assert!(lemma2_check(&copy, &hg.pow(&x, 3)).is_ok());
    // Ambient larger than <G, x>.
    let d7 = named_group("D7").unwrap();
    let w = WreathGroup::new(&d7, 2).unwrap();
    let copy_w = DihedralCopy::identify(&Subgroup::from_elements(
        &w,
        d7.enumerate().iter().map(|e| w.diag_embed(e)),
    ).unwrap()).unwrap();
    let xw = w.levin_root(&el(&d7, "s")).unwrap();
    assert!(matches!(lemma2_check(&copy_w, &xw), Err(GroupError::Precondition(_))));
}

#[test]
fn lemma3_examples() {
    let d7z2 = named_group("D7xZ2").unwrap();
    let copy_elems: Vec<Element> = d7z2
        .enumerate()
        .into_iter()
        .filter(|e| d7z2.render(e).ends_with("|0)"))
        .collect();
    assert_eq!(copy_elems.len(), 14);
    let copy = DihedralCopy::identify(&Subgroup::from_elements(&d7z2, copy_elems).unwrap()).unwrap();
    assert!(lemma3_check(&copy).unwrap());
    let d7 = named_group("D7").unwrap();
    assert!(lemma3_check(&DihedralCopy::identify(&Subgroup::whole(&d7)).unwrap()).unwrap());
    let d5 = named_group("D5").unwrap();
    assert!(matches!(
        lemma3_check(&DihedralCopy::identify(&Subgroup::whole(&d5)).unwrap()),
        Err(GroupError::Precondition(_))
    ));
    // Not normal.
    let (copy, _, _) = small_overgroup(7);
    assert!(matches!(lemma3_check(&copy), Err(GroupError::Precondition(_))));
}

fn check_graph_invariants(graph: &ConjugateGraph) {
    let ambient = graph.ambient();
    let normalizer = ambient.normalizer(graph.copy().subgroup());
    assert_eq!(graph.len() * normalizer.order(), ambient.order());
    let p = graph.p();
    for u in 0..graph.len() {
        assert_eq!(graph.color(u, u), None);
        for v in 0..graph.len() {
            assert_eq!(graph.color(u, v), graph.color(v, u));
            if u != v {
                let size = ambient.intersection(&graph.vertices()[u], &graph.vertices()[v]).order();
                let expected = match graph.color(u, v).unwrap() {
                    EdgeColor::Green => 2,
                    EdgeColor::Yellow => p,
                    EdgeColor::Red => 1,
                };
                assert_eq!(size, expected);
            }
        }
    }
    for y in ambient.enumerate() {
        assert!(graph.is_color_automorphism(&y));
    }
}

#[test]
fn graph_on_small_overgroup_over_d7() {
    let (copy, x, hg) = small_overgroup(7);
    let graph = build_conjugate_graph(&copy).unwrap();
    check_graph_invariants(&graph);
    let normalizer = hg.normalizer(copy.subgroup());
    assert_eq!(graph.len(), hg.order() / normalizer.order());
    let census = lemma5_lemma6_checks(&graph, Some(&x)).unwrap();
    match census {
        YellowCensus::Checked { u, v, green_degrees, .. } => {
            assert!(green_degrees.iter().all(|d| *d > 0 && d % 7 == 0));
            assert_eq!(green_degrees[0], (v - 1) * u);
        }
        YellowCensus::RedEdgePresent { .. } => {}
    }
}

#[test]
fn single_vertex_graphs() {
    let d7 = named_group("D7").unwrap();
    let copy = DihedralCopy::identify(&Subgroup::whole(&d7)).unwrap();
    let graph = build_conjugate_graph(&copy).unwrap();
    assert_eq!(graph.len(), 1);
    assert_eq!(graph.census(), ColorCensus::default());
    assert_eq!(
        lemma5_lemma6_checks(&graph, None).unwrap(),
        YellowCensus::Checked {
            u: 1,
            v: 1,
            green_degrees: vec![0],
            p_equation: None
        }
    );

    let d7z2 = named_group("D7xZ2").unwrap();
    let elems = d7z2.enumerate().into_iter().filter(|e| d7z2.render(e).ends_with("|0)"));
    let copy = DihedralCopy::identify(&Subgroup::from_elements(&d7z2, elems).unwrap()).unwrap();
    assert_eq!(build_conjugate_graph(&copy).unwrap().len(), 1);
}

/// `S3 ≀ Z2` with the copy in the first coordinate: two conjugates meeting
/// trivially, swapped by the shift.
fn two_vertex_graph() -> (ConjugateGraph, Element) {
    let d3 = named_group("D3").unwrap();
    let w = WreathGroup::new(&d3, 2).unwrap();
    let e = d3.identity();
    let elems = d3.enumerate().into_iter().map(|a| w.element(&[a, e.clone()], 0).unwrap());
    let copy = DihedralCopy::identify(&Subgroup::from_elements(&w, elems).unwrap()).unwrap();
    (build_conjugate_graph(&copy).unwrap(), w.shift())
}

#[test]
fn conjugation_parity_examples() {
    let (graph, shift) = two_vertex_graph();
    assert_eq!(graph.len(), 2);
    assert_eq!(graph.color(0, 1), Some(EdgeColor::Red));
    let act = conjugation_parity(&graph, &shift);
    assert_eq!(act.images, vec![1, 0]);
    assert_eq!(act.parity, Parity::Odd);
    assert_eq!(act.fixed_points, 0);
    assert_eq!(lemma5_lemma6_checks(&graph, None).unwrap(), YellowCensus::RedEdgePresent { red: 1 });

    let (graph, _, hg) = {
        let (copy, x, hg) = small_overgroup(7);
        (build_conjugate_graph(&copy).unwrap(), x, hg)
    };
    let id = conjugation_parity(&graph, &hg.identity());
    assert_eq!(id.parity, Parity::Even);
    assert_eq!(id.fixed_points, graph.len());
    assert_eq!(id.reflection_check, None);
}

#[test]
fn recolored_fixture_is_caught() {
    let (copy, x, _) = small_overgroup(7);
    let graph = build_conjugate_graph(&copy).unwrap();
    let census = graph.census();
    assert!(census.yellow > 0 || census.green > 0);
    // Turn one green edge from the base vertex yellow: breaks clique or degree structure.
    let target = (1..graph.len()).find(|&v| graph.color(0, v) == Some(EdgeColor::Green)).unwrap();
    let bad = graph.recolored(0, target, EdgeColor::Yellow);
    assert!(matches!(lemma5_lemma6_checks(&bad, Some(&x)), Err(GroupError::Falsified(_))));
}

#[test]
fn trace_small_overgroup_over_d3_meets_bound_exactly() {
    let (copy, x, hg) = small_overgroup(3);
    assert_eq!(hg.order(), 36);
    let report = theorem1_trace(&copy, &x).unwrap();
    assert_eq!(report.ambient_order, 36);
    assert_eq!(report.bound, 36);
    assert!(report.bound_holds);
    assert!(!report.restricted);
    assert!(report.steps.iter().all(|s| s.passed));
    assert_eq!(report.lemma2, Lemma2Verdict::MeetsInReflection);
    assert!(report.parity.iter().any(|r| r.role.starts_with('g') && r.vertex_parity == Parity::Even));
}

#[test]
fn trace_restricts_wreath_d7() {
    let d7 = named_group("D7").unwrap();
    let w = WreathGroup::new(&d7, 2).unwrap();
    let copy = DihedralCopy::identify(
        &Subgroup::from_elements(&w, d7.enumerate().iter().map(|e| w.diag_embed(e))).unwrap(),
    )
    .unwrap();
    let x = w.levin_root(&el(&d7, "s")).unwrap();
    let report = theorem1_trace(&copy, &x).unwrap();
    assert!(report.restricted);
    assert_eq!(report.bound, 196);
    assert!(report.ambient_order >= 196);
    assert!(report.render_text().contains(">= 196"));
}

#[test]
fn trace_preconditions() {
    let (copy, x, hg) = small_overgroup(3);
    let x2 = hg.mul(&x, &x);
    assert!(matches!(theorem1_trace(&copy, &x2), Err(GroupError::Precondition(_))));
    let d5 = named_group("D5").unwrap();
    let copy5 = DihedralCopy::identify(&Subgroup::whole(&d5)).unwrap();
    assert!(matches!(theorem1_trace(&copy5, &d5.identity()), Err(GroupError::Precondition(_))));
}

#[test]
fn trace_on_permutation_overgroup() {
    // D3 doubled on six points: r = (0 1 2)(3 4 5), s = (1 2)(4 5), and a
    // root of s swapping the blocks.
    let r = Permutation::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
    let s = Permutation::from_cycles(6, &[vec![1, 2], vec![4, 5]]).unwrap();
    let sym = crate::constructions::symmetric(6, 1000).unwrap();
    let re = sym.element_from_permutation(&r).unwrap();
    let se = sym.element_from_permutation(&s).unwrap();
    let copy = DihedralCopy::from_generators(&sym, &re, &se).unwrap();
    let x = sym
        .enumerate()
        .into_iter()
        .find(|y| sym.mul(y, y) == se && sym.generate(&[re.clone(), se.clone(), y.clone()]).order() == 36)
        .unwrap();
    let report = theorem1_trace(&copy, &x).unwrap();
    assert!(report.restricted);
    assert_eq!(report.ambient_order, 36);
}

fn even_cycle_oracle(images: &[usize]) -> Parity {
    let mut seen = vec![false; images.len()];
    let mut even_cycles = 0;
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        if len % 2 == 0 {
            even_cycles += 1;
        }
    }
    if even_cycles % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

proptest! {
    #[test]
    fn parity_implementations_agree(images in (1usize..=12).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())) {
        let a = Parity::of_images(&images);
        prop_assert_eq!(a, Parity::by_inversions(&images));
        prop_assert_eq!(a, even_cycle_oracle(&images));
        if images.len() <= 16 {
            let p = Permutation::from_images(&images).unwrap();
            prop_assert_eq!(a, Parity::of_permutation(&p));
        }
    }
}

use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::dihedral::{theorem1_trace, DihedralCopy};
use crate::group::Group;

fn perm(m: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(m, &cycles).unwrap()
}

#[test]
fn natural_embedding_of_d3() {
    let e = embed_dihedral(3, 6, EmbeddingKind::Natural).unwrap();
    assert_eq!(e.r, perm(6, &[&[0, 1, 2]]));
    assert_eq!(e.s, perm(6, &[&[1, 2]]));
    assert_eq!(e.r.fixed_points(), vec![3, 4, 5]);
    assert_eq!(e.s.fixed_points(), vec![0, 3, 4, 5]);
    assert_eq!(e.reflections.len(), 3);
    assert!(e.reflections.iter().all(|x| x.order() == 2));
}

#[test]
fn natural_embedding_of_d7_moves_seven_points() {
    let e = embed_dihedral(7, 7, EmbeddingKind::Natural).unwrap();
    assert!(e.r.fixed_points().is_empty());
    let moved: Vec<usize> = (0..7).filter(|&i| e.r.image(i) != i || e.s.image(i) != i).collect();
    assert_eq!(moved.len(), 7);
}

#[test]
fn regular_embedding_is_free() {
    let e = embed_dihedral(3, 6, EmbeddingKind::Regular).unwrap();
    let elems = closure_of_permutations(6, &e.generators(), 100).unwrap();
    assert_eq!(elems.len(), 6);
    for x in elems.iter().filter(|x| !x.is_identity()) {
        assert!(x.fixed_points().is_empty());
    }
    let d5 = embed_dihedral(5, 10, EmbeddingKind::Regular).unwrap();
    assert_eq!(closure_order_capped(10, &d5.generators(), 1000), ClosureOrder::Exact(10));
}

#[test]
fn doubled_embedding_acts_on_two_blocks() {
    let e = embed_dihedral(3, 6, EmbeddingKind::Doubled).unwrap();
    assert_eq!(e.r, perm(6, &[&[0, 1, 2], &[3, 4, 5]]));
    assert_eq!(e.s, perm(6, &[&[1, 2], &[4, 5]]));
    assert!(e.s.is_even());
}

#[test]
fn embedding_preconditions() {
    assert!(embed_dihedral(3, 2, EmbeddingKind::Natural).is_err());
    assert!(embed_dihedral(3, 5, EmbeddingKind::Regular).is_err());
    assert!(embed_dihedral(4, 8, EmbeddingKind::Natural).is_err());
    assert!(embed_dihedral(11, 20, EmbeddingKind::Doubled).is_err());
}

/// Number of square roots of a permutation with the given cycle type:
/// odd `ℓ`-cycles are either squared singly or interleaved in pairs (ℓ ways
/// per pair); even `ℓ`-cycles must be interleaved in pairs.
fn root_count_oracle(cycle_type: &[usize]) -> u64 {
    let mut by_len: HashMap<usize, u64> = HashMap::new();
    for &l in cycle_type {
        *by_len.entry(l).or_default() += 1;
    }
    let double_fact = |n: u64| (1..=n).rev().step_by(2).product::<u64>().max(1);
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    by_len
        .into_iter()
        .map(|(l, c)| {
            let l = l as u64;
            if l % 2 == 0 {
                if c % 2 == 1 {
                    0
                } else {
                    double_fact(c - 1) * l.pow((c / 2) as u32)
                }
            } else {
                (0..=c / 2)
                    .map(|j| binom(c, 2 * j) * double_fact((2 * j).saturating_sub(1)) * l.pow(j as u32))
                    .sum()
            }
        })
        .product()
}

#[test]
fn root_counts_match_cycle_type_oracle() {
    for m in 1..=7 {
        let mut counts: HashMap<Permutation, u64> = HashMap::new();
        for x in LexPermutations::new(m) {
            *counts.entry(x.square()).or_default() += 1;
        }
        for g in LexPermutations::new(m) {
            // Cycle type including fixed points as 1-cycles.
            let mut ct = g.cycle_type();
            let moved: usize = ct.iter().sum();
            ct.extend(std::iter::repeat(1).take(m - moved));
            let expected = root_count_oracle(&ct);
            assert_eq!(counts.get(&g).copied().unwrap_or(0), expected, "m = {m}, g = {g}");
        }
    }
}

#[test]
fn square_root_examples() {
    let g = perm(3, &[&[0, 1, 2]]);
    let roots = square_roots_in_sm(3, &g).unwrap();
    assert!(roots.contains(&perm(3, &[&[0, 2, 1]])));
    assert_eq!(roots.len() as u64, root_count_oracle(&[3]));
    assert!(roots.iter().all(|x| x.square() == g));

    let id2 = Permutation::identity(2);
    assert_eq!(square_roots_in_sm(2, &id2).unwrap(), vec![id2, perm(2, &[&[0, 1]])]);

    assert!(square_roots_in_sm(4, &perm(4, &[&[0, 1]])).unwrap().is_empty());
    assert!(square_roots_in_sm(4, &id2).is_err());
    assert!(matches!(
        square_roots_in_sm(12, &Permutation::identity(12)),
        Err(GroupError::ResourceCap(_))
    ));
}

#[test]
fn parallel_roots_match_serial_order() {
    for (m, g) in [(6, perm(6, &[&[1, 2], &[4, 5]])), (5, perm(5, &[&[0, 1, 2, 3, 4]]))] {
        assert_eq!(square_roots_in_sm(m, &g).unwrap(), square_roots_in_sm_par(m, &g).unwrap());
    }
}

#[test]
fn capped_closure_examples() {
    let e = embed_dihedral(3, 6, EmbeddingKind::Natural).unwrap();
    assert_eq!(closure_order_capped(6, &e.generators(), 1000), ClosureOrder::Exact(6));
    let a5 = [perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])];
    assert_eq!(closure_order_capped(5, &a5, 30), ClosureOrder::AtLeast(30));
    assert_eq!(closure_order_capped(5, &a5, 61), ClosureOrder::Exact(60));
    assert_eq!(closure_order_capped(5, &[], 1), ClosureOrder::Exact(1));
    assert_eq!(closure_order_capped(5, &[], 7), ClosureOrder::Exact(1));
}

#[test]
fn natural_d3_search_is_vacuous() {
    // s = (1 2) is odd and odd permutations are never squares.
    let report = min_overgroup_search(3, 6, EmbeddingKind::Natural, 1000, 0, true).unwrap();
    assert_eq!(report.roots, 0);
    assert!(report.histogram.is_empty());
    assert_eq!(report.minimum, None);
    assert_eq!(report.verdict, Verdict::Vacuous);
    let regular = min_overgroup_search(3, 6, EmbeddingKind::Regular, 1000, 0, true).unwrap();
    assert_eq!(regular.verdict, Verdict::Vacuous);
}

#[test]
fn doubled_d3_search_attains_36() {
    let report = min_overgroup_search(3, 6, EmbeddingKind::Doubled, 1000, 0, true).unwrap();
    assert!(report.roots > 0);
    let min = report.minimum.as_ref().unwrap();
    assert_eq!(min.order, ClosureOrder::Exact(36));
    assert_eq!(report.below_bound, 0);
    assert_eq!(report.verdict, Verdict::Holds);
    assert_eq!(report.histogram.iter().map(|e| e.count).sum::<usize>(), report.roots);
    assert!(report.to_csv().starts_with("order,count\n36,"));

    // Replay the argument on the minimal witness.
    let emb = embed_dihedral(3, 6, EmbeddingKind::Doubled).unwrap();
    let h = Group::perm_closure(6, &[emb.r, emb.s, min.witness_perm], 1000).unwrap();
    let el = |p: &Permutation| h.element_from_permutation(p).unwrap();
    let copy = DihedralCopy::from_generators(&h, &el(&emb.r), &el(&emb.s)).unwrap();
    let trace = theorem1_trace(&copy, &el(&min.witness_perm)).unwrap();
    assert_eq!(trace.ambient_order, 36);
    assert!(trace.bound_holds);
}

#[test]
fn every_reflection_gives_the_same_minimum() {
    let minima: Vec<_> = (0..3)
        .map(|i| {
            min_overgroup_search(3, 6, EmbeddingKind::Doubled, 1000, i, false)
                .unwrap()
                .minimum
                .unwrap()
                .order
        })
        .collect();
    assert!(minima.iter().all(|o| *o == minima[0]));
    assert!(min_overgroup_search(3, 6, EmbeddingKind::Doubled, 1000, 3, false).is_err());
}

#[test]
fn serial_and_parallel_reports_agree() {
    for (p, m, kind) in [(3, 6, EmbeddingKind::Doubled), (5, 7, EmbeddingKind::Natural)] {
        let a = min_overgroup_search(p, m, kind, 1000, 0, false).unwrap();
        let b = min_overgroup_search(p, m, kind, 1000, 0, true).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn d7_natural_searches_have_nothing_below_196() {
    let report = min_overgroup_search(7, 7, EmbeddingKind::Natural, 196, 0, true).unwrap();
    assert_eq!(report.below_bound, 0);
    assert!(report
        .histogram
        .iter()
        .all(|e| e.order == ClosureOrder::AtLeast(196) || e.order.bound() >= 196));
}

#[test]
fn p5_reports_without_verdict() {
    let report = min_overgroup_search(5, 6, EmbeddingKind::Natural, 1000, 0, true).unwrap();
    assert_eq!(report.verdict, Verdict::NotApplicable);
    assert!(report.roots > 0);
    assert_eq!(report.histogram.iter().map(|e| e.count).sum::<usize>(), report.roots);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uncapped_closure_matches_table_order(
        gens in (2usize..=6).prop_flat_map(|m| prop::collection::vec(
            Just((0..m).collect::<Vec<usize>>()).prop_shuffle(), 0..3))
    ) {
        let m = gens.first().map_or(3, |g| g.len());
        let perms: Vec<Permutation> = gens.iter().map(|g| Permutation::from_images(g).unwrap()).collect();
        let table = Group::from_permutations(m, &perms, 10_000).unwrap();
        prop_assert_eq!(closure_order_capped(m, &perms, usize::MAX), ClosureOrder::Exact(table.order()));
    }
}

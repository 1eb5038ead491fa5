//! One PASS/FAIL line per acceptance criterion. Time limits are wall-clock
//! and fixed below. The run fails if the set of failing criteria differs
//! from `KNOWN_UNATTAINABLE`.

use std::time::{Duration, Instant};

use groupsmith::constructions::{
    lemma7_formula_set, lemma7_subgroup, lemma8_construct, named_group, WreathGroup,
};
use groupsmith::dihedral::{build_conjugate_graph, minus_one_is_square_mod_p, theorem1_trace, is_prime, DihedralCopy};
use groupsmith::equations::{levin_solve, PositiveEquation};
use groupsmith::universe::{min_overgroup_search, ClosureOrder, EmbeddingKind};
use groupsmith::{Element, Group, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The natural reflection (1 2) of D3 in S6 is odd, hence never a square, so
/// the natural search has no roots and no minimum.
const KNOWN_UNATTAINABLE: &[&str] = &["AC4"];

const LIMIT_AC1: Duration = Duration::from_secs(1);
const LIMIT_AC2: Duration = Duration::from_secs(30);
const LIMIT_AC4: Duration = Duration::from_secs(60);
const LIMIT_AC5: Duration = Duration::from_secs(1);
const LIMIT_AC6: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.pass = false;
    }
    out.detail = format!("{} [{:.3}s, limit {}s]", out.detail, took.as_secs_f64(), limit.as_secs());
    out
}

fn el(g: &Group, s: &str) -> Element {
    g.parse_element(s).unwrap()
}

fn ac1() -> Outcome {
    timed(LIMIT_AC1, || {
        let s3 = named_group("S3").unwrap();
        let w = WreathGroup::new(&s3, 2).unwrap();
        let roots_ok = s3.enumerate().iter().all(|g| {
            let x = w.levin_root(g).unwrap();
            w.mul(&x, &x) == w.diag_embed(g)
        });
        Outcome {
            pass: w.order() == 72 && roots_ok,
            detail: format!("|S3 wr Z2| = {}, all 6 roots square correctly: {roots_ok}", w.order()),
        }
    })
}

fn ac2() -> Outcome {
    timed(LIMIT_AC2, || {
        let mut checked = 0;
        let mut mismatches = Vec::new();
        for spec in ["Z4", "Z6", "S3", "D5", "D7"] {
            let g = named_group(spec).unwrap();
            for x in g.enumerate() {
                let h = lemma7_subgroup(&g, &x).unwrap();
                let formula = lemma7_formula_set(&h.wreath, &x, &h.commutator);
                if formula != h.subgroup.elements() {
                    mismatches.push(format!("{spec}:{}", g.render(&x)));
                }
                checked += 1;
            }
        }
        Outcome {
            pass: mismatches.is_empty(),
            detail: format!("{checked} (G, g) pairs, mismatches {mismatches:?}"),
        }
    })
}

fn ac3() -> Outcome {
    let s3 = named_group("S3").unwrap();
    let d7 = named_group("D7").unwrap();
    let z6 = named_group("Z6").unwrap();
    let a = lemma7_subgroup(&s3, &el(&s3, "(1 2)")).unwrap().order();
    let b = lemma7_subgroup(&d7, &el(&d7, "s")).unwrap().order();
    let c: Vec<usize> = z6.enumerate().iter().map(|x| lemma7_subgroup(&z6, x).unwrap().order()).collect();
    Outcome {
        pass: a == 36 && b == 196 && c.iter().all(|&o| o == 12),
        detail: format!("S3 transposition {a}, D7 reflection {b}, Z6 orders {c:?}"),
    }
}

fn ac4() -> Outcome {
    timed(LIMIT_AC4, || {
        let p3 = min_overgroup_search(3, 6, EmbeddingKind::Natural, 1000, 0, true).unwrap();
        let p3_min = p3.minimum.as_ref().map(|m| m.order);
        let p3_ok = p3_min == Some(ClosureOrder::Exact(36)) && p3.below_bound == 0;
        let mut p7 = Vec::new();
        for m in [7, 9] {
            let r = min_overgroup_search(7, m, EmbeddingKind::Natural, 196, 0, true).unwrap();
            let below = r
                .histogram
                .iter()
                .filter(|e| matches!(e.order, ClosureOrder::Exact(k) if k < 196))
                .count();
            p7.push((m, r.roots, below));
        }
        let p7_ok = p7.iter().all(|(_, _, below)| *below == 0);
        let doubled = min_overgroup_search(3, 6, EmbeddingKind::Doubled, 1000, 0, true).unwrap();
        Outcome {
            pass: p3_ok && p7_ok,
            detail: format!(
                "p=3 m=6 natural: {} roots, minimum {}; p=7 (m, roots, below 196) {p7:?}; \
                 p=3 m=6 doubled: minimum {}",
                p3.roots,
                p3_min.map_or("none".into(), |o| o.to_string()),
                doubled.minimum.as_ref().map_or("none".into(), |m| m.order.to_string())
            ),
        }
    })
}

fn ac5() -> Outcome {
    timed(LIMIT_AC5, || {
        let primes: Vec<u64> = (3..1000).filter(|&p| is_prime(p)).collect();
        let mismatches: Vec<u64> = primes
            .iter()
            .copied()
            .filter(|&p| minus_one_is_square_mod_p(p).unwrap() != (p % 4 == 1))
            .collect();
        Outcome {
            pass: mismatches.is_empty(),
            detail: format!("{} odd primes, mismatches {mismatches:?}", primes.len()),
        }
    })
}

fn ac6() -> Outcome {
    timed(LIMIT_AC6, || {
        let mut solved = 0;
        let mut failures = Vec::new();
        let mut record = |eq: &PositiveEquation| match levin_solve(eq, None, None) {
            Ok(sol) if eq.is_solution(&sol.embedding, &sol.x) => solved += 1,
            Ok(_) => failures.push(format!("{eq}: unverified")),
            Err(e) => failures.push(format!("{eq}: {e}")),
        };
        let s3 = named_group("S3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            record(&PositiveEquation::random(&s3, 3, &mut rng).unwrap());
        }
        let mut pairs = Vec::new();
        for spec in ["D5", "D7"] {
            let d = named_group(spec).unwrap();
            let elems = d.enumerate();
            for a in &elems {
                for b in &elems {
                    record(&PositiveEquation::new(&d, vec![a.clone(), b.clone()]).unwrap());
                }
            }
            pairs.push((spec, elems.len() * elems.len()));
        }
        Outcome {
            pass: failures.is_empty() && solved == 20 + 100 + 196,
            detail: format!("{solved} solved (20 cubic over S3, pairs {pairs:?}), failures {failures:?}"),
        }
    })
}

fn ac7() -> Outcome {
    let z6 = named_group("Z6").unwrap();
    let n = z6.generate(&[el(&z6, "2")]);
    let out = lemma8_construct(&z6, &n).unwrap();
    let z6_ok = match &out.quotient {
        Some(q) => {
            out.normality
                && q.group().order() == 24
                && q.embedding_injective()
                && z6.enumerate().iter().all(|g| {
                    let r = q.root_image(g).unwrap();
                    q.group().mul(&r, &r) == q.embedding.apply(g)
                })
        }
        None => false,
    };
    let s3 = named_group("S3").unwrap();
    let a3 = s3.generate(&[el(&s3, "(1 2 3)")]);
    let bad = lemma8_construct(&s3, &a3).unwrap();
    let witness = bad.witness.as_ref().map(|(k, w)| {
        let wr = &bad.k.wreath;
        (wr.render(k), wr.render(w), !bad.k.subgroup.contains(&wr.conjugate(k, w)))
    });
    let s3_ok = !bad.normality && bad.quotient.is_none() && witness.as_ref().is_some_and(|w| w.2);
    Outcome {
        pass: z6_ok && s3_ok,
        detail: format!(
            "Z6/<2>: quotient {:?}; S3/A3: normal {} witness {witness:?}",
            out.quotient.as_ref().map(|q| q.group().order()),
            bad.normality
        ),
    }
}

fn ac8() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (p, expected_bound) in [(3usize, 36usize), (7, 196)] {
        let d = named_group(&format!("D{p}")).unwrap();
        let w = WreathGroup::new(&d, 2).unwrap();
        let x = w.levin_root(&el(&d, "s")).unwrap();
        let mut gens: Vec<Element> = d.enumerate().iter().map(|g| w.diag_embed(g)).collect();
        gens.push(x.clone());
        let sub = w.generate(&gens);
        let (h, emb) = sub.to_group("<G,x>").unwrap();
        let back = emb.inverse_table();
        let copy = DihedralCopy::identify(
            &Subgroup::from_elements(&h, d.enumerate().iter().map(|g| back[&w.diag_embed(g)].clone())).unwrap(),
        )
        .unwrap();
        match theorem1_trace(&copy, &back[&x]) {
            Ok(report) => {
                let graph = build_conjugate_graph(&copy).unwrap();
                let n = graph.len();
                let symmetric = (0..n).all(|u| (0..n).all(|v| graph.color(u, v) == graph.color(v, u)));
                let automorphic = h.enumerate().iter().all(|y| graph.is_color_automorphism(y));
                let orbit = report.ambient_order == report.conjugates * report.normalizer_order;
                let ok = report.bound == expected_bound
                    && report.bound_holds
                    && report.steps.iter().all(|s| s.passed)
                    && symmetric
                    && automorphic
                    && orbit
                    && (p != 3 || report.ambient_order == 36);
                pass &= ok;
                lines.push(format!(
                    "D{p}: {} >= {} case {} |K| {} symmetric {symmetric} automorphism {automorphic} orbit {orbit}",
                    report.ambient_order, report.bound, report.case, report.conjugates
                ));
            }
            Err(e) => {
                pass = false;
                lines.push(format!("D{p}: {e}"));
            }
        }
    }
    Outcome {
        pass,
        detail: lines.join("; "),
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        ("AC1", "wreath upper bound for S3", ac1),
        ("AC2", "small-subgroup formula equals closure", ac2),
        ("AC3", "tightness at dihedral and cyclic groups", ac3),
        ("AC4", "lower bound by search in symmetric groups", ac4),
        ("AC5", "-1 square mod p iff p = 1 mod 4", ac5),
        ("AC6", "positive equations solved in wreath products", ac6),
        ("AC7", "quotient construction behaviour", ac7),
        ("AC8", "proof replay on small overgroups", ac8),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let out = run();
        println!("{} {id} {name}: {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        if !out.pass {
            failed.push(id);
        }
    }
    assert_eq!(failed, KNOWN_UNATTAINABLE, "failing criteria differ from the documented set");
}

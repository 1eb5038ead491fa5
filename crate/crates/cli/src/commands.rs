use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use groupsmith::constructions::{
    dihedral, lemma7_formula_set, lemma7_subgroup, lemma8_construct, named_group_capped, prop1_embedding,
    Prop1Strategy, WreathGroup, DEFAULT_WREATH_CAP,
};
use groupsmith::dihedral::{is_prime, minus_one_is_square_mod_p, theorem1_trace, DihedralCopy, Theorem1Report};
use groupsmith::equations::{adjoin_nth_root_capped, levin_solve, solve_in_group, PositiveEquation};
use groupsmith::group::DEFAULT_CLOSURE_CAP;
use groupsmith::universe::{
    closure_order_capped, embed_dihedral, min_overgroup_search, square_roots_in_sm_par, ClosureOrder, EmbeddingKind,
    Verdict,
};
use groupsmith::{with_workers, Element, Group, GroupError, Subgroup};

use crate::report::Report;
use crate::{CliError, Command, Common, Format};

type Outcome = Result<Report, CliError>;

pub fn run(cmd: &Command, common: &Common) -> Outcome {
    if common.format == Format::Csv && !matches!(cmd, Command::Search { .. } | Command::ResidueCheck { .. }) {
        return Err(CliError::Usage("csv output is only available for search and residue-check".into()));
    }
    let closure_cap = closure_cap(common)?;
    match cmd {
        Command::Construct { group, n } => construct(group, *n, closure_cap, common),
        Command::AdjoinSqrt { group, element } => adjoin_sqrt(group, element, closure_cap),
        Command::AdjoinNthRoot { group, element, n } => adjoin_nth_root(group, element, *n, common),
        Command::SolvePositive { group, equation, n } => solve_positive(group, equation.as_deref(), *n, common),
        Command::Lemma7Check { group, element } => lemma7_check(group, element, closure_cap),
        Command::Lemma8Check { group, subgroup } => lemma8_check(group, subgroup, closure_cap),
        Command::Prop1Embed { group, element } => prop1_embed(group, element, closure_cap),
        Command::Theorem1Verify { p, element, m, kind } => {
            theorem1_verify(*p, element.as_deref(), *m, (*kind).into(), closure_cap, common)
        }
        Command::ResidueCheck { max_p } => residue_check(*max_p),
        Command::Search { p, m, kind } => search(*p, *m, (*kind).into(), closure_cap, common),
    }
}

/// `--cap`, then `GROUPSMITH_CAP`, then the library default.
fn closure_cap(common: &Common) -> Result<usize, CliError> {
    if let Some(c) = common.cap {
        return usize::try_from(c).map_err(|_| CliError::Usage(format!("cap {c} out of range")));
    }
    match std::env::var("GROUPSMITH_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("GROUPSMITH_CAP={v} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn wreath_cap(common: &Common) -> u128 {
    common.cap.map_or(DEFAULT_WREATH_CAP, u128::from)
}

fn load_group(spec: &str, cap: usize) -> Result<Group, CliError> {
    Ok(named_group_capped(spec, cap)?)
}

fn load_element(g: &Group, text: &str) -> Result<Element, CliError> {
    Ok(g.parse_element(text)?)
}

fn construct(spec: &str, n: Option<usize>, cap: usize, common: &Common) -> Outcome {
    let base = load_group(spec, cap)?;
    let mut r = Report::default();
    r.param("group", spec);
    r.param("cap", cap);
    if let Some(n) = n {
        r.param("n", n);
    }
    let group = match n {
        Some(n) => WreathGroup::with_cap(&base, n, DEFAULT_WREATH_CAP)?.group().clone(),
        None => base,
    };
    let axioms = group.check_axioms(common.seed)?;
    let gens: Vec<String> = group.generators().iter().map(|g| group.render(g)).collect();
    r.result = json!({
        "name": group.name(),
        "order": group.order(),
        "backend": group.backend_kind(),
        "generators": gens,
        "abelian": group.is_abelian(),
        "axioms": {
            "associativity_triples": axioms.associativity_triples,
            "exhaustive": axioms.exhaustive,
        },
    });
    r.line(format!("{}: order {}", group.name(), group.order()));
    r.line(format!("generators: {}", gens.join(", ")));
    r.line(format!("abelian: {}", group.is_abelian()));
    r.check("group-axioms", true, None);
    Ok(r)
}

fn adjoin_sqrt(spec: &str, element: &str, cap: usize) -> Outcome {
    let g = load_group(spec, cap)?;
    let x = load_element(&g, element)?;
    let h = lemma7_subgroup(&g, &x)?;
    let w = &h.wreath;
    let mut r = Report::default();
    r.param("group", spec);
    r.param("element", element);
    r.param("cap", cap);
    let squares = w.mul(&h.root, &h.root) == w.diag_embed(&x);
    let bound = 2 * g.order() * g.order();
    r.result = json!({
        "group_order": g.order(),
        "overgroup": format!("<diag({}), root> in {}", g.name(), w.name()),
        "overgroup_order": h.order(),
        "commutator_order": h.commutator.order(),
        "root": w.render(&h.root),
        "upper_bound": bound,
    });
    r.line(format!(
        "{} of order {} in {} has a square root in a subgroup of order {}",
        g.render(&x),
        g.order(),
        w.name(),
        h.order()
    ));
    r.line(format!("root: {}", w.render(&h.root)));
    r.check("root-squares-to-element", squares, Some(w.render(&h.root)));
    r.check("root-in-overgroup", h.subgroup.contains(&h.root), None);
    r.check("order-at-most-2|G|^2", h.order() <= bound, Some(h.order().to_string()));
    Ok(r)
}

fn adjoin_nth_root(spec: &str, element: &str, n: usize, common: &Common) -> Outcome {
    let g = load_group(spec, closure_cap(common)?)?;
    let x = load_element(&g, element)?;
    let cap = wreath_cap(common);
    let (w, emb, root) = adjoin_nth_root_capped(&g, &x, n, cap)?;
    let mut r = Report::default();
    r.param("group", spec);
    r.param("element", element);
    r.param("n", n);
    r.param("cap", u64::try_from(cap).unwrap_or(u64::MAX));
    let power_ok = w.pow(&root, n as i64) == emb.apply(&x);
    let expected_order = n * g.order().pow(n as u32);
    r.result = json!({
        "overgroup": w.name(),
        "overgroup_order": w.order(),
        "root": w.render(&root),
        "root_order": w.element_order(&root),
    });
    r.line(format!("{}: order {}", w.name(), w.order()));
    r.line(format!("root of {}: {}", g.render(&x), w.render(&root)));
    r.check("root-power-equals-element", power_ok, Some(w.render(&root)));
    r.check("order-equals-n|G|^n", w.order() == expected_order, Some(w.order().to_string()));
    Ok(r)
}

fn solve_positive(spec: &str, equation: Option<&str>, n: Option<usize>, common: &Common) -> Outcome {
    let g = load_group(spec, closure_cap(common)?)?;
    let eq = match (equation, n) {
        (Some(text), _) => PositiveEquation::parse(&g, text)?,
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
            PositiveEquation::random(&g, n, &mut rng)?
        }
        (None, None) => return Err(CliError::Usage("give --equation or a degree --n for a random one".into())),
    };
    let cap = wreath_cap(common);
    let mut r = Report::default();
    r.param("group", spec);
    match equation {
        Some(text) => r.param("equation", text),
        None => {
            r.param("n", eq.degree());
            r.param("seed", common.seed);
        }
    }
    r.param("cap", u64::try_from(cap).unwrap_or(u64::MAX));
    let sol = levin_solve(&eq, Some(cap), common.workers)?;
    let h = &sol.overgroup;
    let in_group = solve_in_group(&eq).map(|x| g.render(&x));
    let shift = sol.wreath.as_ref().map(|w| w.coordinates(&sol.x).1);
    r.result = json!({
        "equation": eq.render(),
        "degree": eq.degree(),
        "overgroup": h.name(),
        "overgroup_order": h.order(),
        "x": h.render(&sol.x),
        "shift": shift,
        "solution_in_group": in_group,
    });
    r.line(format!("equation: {}", eq.render()));
    r.line(format!("x = {} in {} (order {})", h.render(&sol.x), h.name(), h.order()));
    match &in_group {
        Some(x) => r.line(format!("already solvable in {}: x = {x}", g.name())),
        None => r.line(format!("no solution inside {}", g.name())),
    }
    r.check("solution-verified", eq.is_solution(&sol.embedding, &sol.x), Some(h.render(&sol.x)));
    Ok(r)
}

fn lemma7_check(spec: &str, element: &str, cap: usize) -> Outcome {
    let g = load_group(spec, cap)?;
    let x = load_element(&g, element)?;
    let h = lemma7_subgroup(&g, &x)?;
    let w = &h.wreath;
    let formula = lemma7_formula_set(w, &x, &h.commutator);
    let expected = 2 * g.order() * h.commutator.order();
    let diag_ok = g.enumerate().iter().all(|y| h.subgroup.contains(&w.diag_embed(y)));
    let mut r = Report::default();
    r.param("group", spec);
    r.param("element", element);
    r.param("cap", cap);
    r.result = json!({
        "order": h.order(),
        "commutator_order": h.commutator.order(),
        "expected_order": expected,
        "root": w.render(&h.root),
    });
    r.line(format!(
        "|H| = {} = 2·|G|·|C| = 2·{}·{}",
        h.order(),
        g.order(),
        h.commutator.order()
    ));
    r.check("formula-equals-closure", formula == h.subgroup.elements(), None);
    r.check("order-equals-2|G||C|", h.order() == expected, Some(h.order().to_string()));
    r.check("contains-root", h.subgroup.contains(&h.root), None);
    r.check("contains-diagonal", diag_ok, None);
    Ok(r)
}

fn lemma8_check(spec: &str, subgroup: &str, cap: usize) -> Outcome {
    let g = load_group(spec, cap)?;
    let gens: Vec<Element> = subgroup
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| load_element(&g, s))
        .collect::<Result<_, _>>()?;
    let n = g.generate(&gens);
    let out = lemma8_construct(&g, &n)?;
    let wr = &out.k.wreath;
    let mut r = Report::default();
    r.param("group", spec);
    r.param("subgroup", subgroup);
    r.param("cap", cap);
    let witness = out.witness.as_ref().map(|(k, w)| json!([wr.render(k), wr.render(w)]));
    let quotient_order = out.quotient.as_ref().map(|q| q.group().order());
    r.result = json!({
        "normal_order": n.order(),
        "k_order": out.k.subgroup.order(),
        "k_normal": out.normality,
        "witness": witness,
        "quotient_order": quotient_order,
        "embedding_injective": out.quotient.as_ref().map(|q| q.embedding_injective()),
    });
    r.line(format!("|N| = {}, |K| = {}, K normal: {}", n.order(), out.k.subgroup.order(), out.normality));
    if let Some((k, w)) = &out.witness {
        let conj = wr.conjugate(k, w);
        let escapes = !out.k.subgroup.contains(&conj);
        r.line(format!("witness: {} conjugated by {} leaves K", wr.render(k), wr.render(w)));
        r.check("witness-leaves-k", escapes, Some(format!("{} ^ {}", wr.render(k), wr.render(w))));
    }
    if let Some(q) = &out.quotient {
        let roots_ok = g.enumerate().iter().all(|y| match q.root_image(y) {
            Ok(root) => q.group().mul(&root, &root) == q.embedding.apply(y),
            Err(_) => false,
        });
        let expected = 2 * g.order() * g.order() / n.order();
        r.line(format!("quotient order {}, embedding injective: {}", q.group().order(), q.embedding_injective()));
        r.check("quotient-order", q.group().order() == expected, Some(q.group().order().to_string()));
        r.check("root-images-square", roots_ok, None);
    }
    Ok(r)
}

fn prop1_embed(spec: &str, element: &str, cap: usize) -> Outcome {
    let g = load_group(spec, cap)?;
    let x = load_element(&g, element)?;
    let e = prop1_embedding(&g, &x)?;
    let h = &e.group;
    let squares = h.mul(&e.root, &e.root) == e.embedding.apply(&x);
    let bound = match e.strategy {
        Prop1Strategy::Fallback => 2 * g.order() * g.order(),
        _ => g.order() * g.order(),
    };
    let mut r = Report::default();
    r.param("group", spec);
    r.param("element", element);
    r.param("cap", cap);
    r.result = json!({
        "strategy": e.strategy.to_string(),
        "overgroup": h.name(),
        "overgroup_order": h.order(),
        "root": h.render(&e.root),
        "bound": bound,
    });
    r.line(format!("strategy {}: overgroup of order {} (bound {bound})", e.strategy, h.order()));
    r.line(format!("root: {}", h.render(&e.root)));
    r.check("root-squares-to-element", squares, Some(h.render(&e.root)));
    r.check("embedding-injective", e.embedding.is_injective(), None);
    r.check("embedding-homomorphism", e.embedding.is_homomorphism(), None);
    r.check("order-within-bound", h.order() <= bound, Some(h.order().to_string()));
    Ok(r)
}

fn add_trace_assertions(r: &mut Report, prefix: &str, t: &Theorem1Report) {
    for s in &t.steps {
        r.check(&format!("{prefix}{}", s.name), s.passed, Some(s.detail.clone()));
    }
}

fn theorem1_verify(
    p: usize,
    element: Option<&str>,
    m: Option<usize>,
    kind: EmbeddingKind,
    cap: usize,
    common: &Common,
) -> Outcome {
    if !is_prime(p as u64) || p % 4 != 3 {
        return Err(GroupError::Precondition(format!("p = {p} must be a prime with p = 3 mod 4")).into());
    }
    let mut r = Report::default();
    r.param("p", p);
    match m {
        None => {
            let d = dihedral(p)?;
            let text = element.unwrap_or("s");
            r.param("element", text);
            let g = load_element(&d, text)?;
            let w = WreathGroup::new(&d, 2)?;
            let copy = DihedralCopy::identify(&Subgroup::from_elements(
                &w,
                d.enumerate().iter().map(|y| w.diag_embed(y)),
            )?)?;
            let x = w.levin_root(&g)?;
            let t = theorem1_trace(&copy, &x)?;
            r.result = serde_json::to_value(&t).expect("trace serializes");
            r.text = t.render_text();
            add_trace_assertions(&mut r, "", &t);
        }
        Some(m) => {
            r.param("m", m);
            r.param("kind", kind.to_string());
            r.param("cap", cap);
            let emb = embed_dihedral(p, m, kind)?;
            let roots = with_workers(common.workers, || square_roots_in_sm_par(m, &emb.s))??;
            let mut cases: BTreeMap<String, usize> = BTreeMap::new();
            let mut traced = 0;
            let mut skipped = 0;
            let mut min_order: Option<usize> = None;
            let mut all_ok = true;
            for x in &roots {
                let gens = [emb.r, emb.s, *x];
                if !matches!(closure_order_capped(m, &gens, cap), ClosureOrder::Exact(_)) {
                    skipped += 1;
                    continue;
                }
                let h = Group::perm_closure(m, &gens, cap)?;
                let el = |q| h.element_from_permutation(q).expect("generator lies in its closure");
                let copy = DihedralCopy::from_generators(&h, &el(&emb.r), &el(&emb.s))?;
                let t = theorem1_trace(&copy, &el(x))?;
                traced += 1;
                all_ok &= t.steps.iter().all(|s| s.passed);
                *cases.entry(t.case.to_string()).or_default() += 1;
                min_order = Some(min_order.map_or(t.ambient_order, |o| o.min(t.ambient_order)));
            }
            r.result = json!({
                "roots": roots.len(),
                "traced": traced,
                "skipped_at_cap": skipped,
                "cases": cases,
                "minimum_order": min_order,
                "bound": 4 * p * p,
            });
            r.line(format!("D{p} in S{m} ({kind}): {} roots, {traced} traced, {skipped} above cap", roots.len()));
            r.line(format!("cases: {cases:?}"));
            if let Some(o) = min_order {
                r.line(format!("smallest <G, x>: {o} (bound {})", 4 * p * p));
            }
            r.check("all-traces-pass", all_ok, None);
            r.check(
                "bound",
                min_order.is_none_or(|o| o >= 4 * p * p),
                min_order.map(|o| o.to_string()),
            );
        }
    }
    Ok(r)
}

fn residue_check(max_p: u64) -> Outcome {
    let mut r = Report::default();
    r.param("max_p", max_p);
    let mut rows = Vec::new();
    let mut csv = String::from("p,p_mod_4,minus_one_square,mismatch\n");
    let mut mismatches = Vec::new();
    for p in (3..=max_p).filter(|&p| is_prime(p)) {
        let square = minus_one_is_square_mod_p(p)?;
        let mismatch = square != (p % 4 == 1);
        if mismatch {
            mismatches.push(p);
        }
        csv += &format!("{p},{},{square},{mismatch}\n", p % 4);
        rows.push(json!({"p": p, "p_mod_4": p % 4, "minus_one_square": square}));
        r.line(format!("{p:>6} {:>2} {square}", p % 4));
    }
    r.line(format!("{} odd primes, {} mismatches", rows.len(), mismatches.len()));
    r.result = json!({"primes": rows.len(), "mismatches": mismatches, "rows": rows});
    r.csv = Some(csv);
    r.check(
        "square-iff-1-mod-4",
        mismatches.is_empty(),
        mismatches.first().map(|p| p.to_string()),
    );
    Ok(r)
}

fn search(p: usize, m: usize, kind: EmbeddingKind, cap: usize, common: &Common) -> Outcome {
    let report = with_workers(common.workers, || min_overgroup_search(p, m, kind, cap, 0, true))??;
    let mut r = Report::default();
    r.param("p", p);
    r.param("m", m);
    r.param("kind", kind.to_string());
    r.param("cap", cap);
    r.result = serde_json::to_value(&report).expect("search report serializes");
    r.text = report.render_text();
    r.csv = Some(report.to_csv());
    let witness = report.minimum.as_ref().map(|min| format!("{} at {}", min.order, min.witness));
    r.check("bound", report.verdict != Verdict::Violated, witness.or(Some(report.verdict.to_string())));
    Ok(r)
}

//! Acceptance suite: one line per criterion, exact integer comparisons only.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use deza_core::construct::{
    consecutive_classes, design_lex_empty, empty_digraph, field_type2, check_field_identities,
    lex_condition_as_stated, lex_deza_condition, lex_product, paley_graph, qr_symmetric_design,
    siamese_reflexive, skew_hadamard_deza, twin_deza, twin_directed,
};
use deza_core::decompose::{
    canonical_form, decompose_b_eq_t, decompose_type2_b_eq_k, feasible, parameter_tuples,
    search_deza_digraphs, search_dsrg, SearchOptions,
};
use deza_core::hadamard::{skew_hadamard, sylvester};
use deza_core::scheme::{fusion_digraph, paley_tournament, paley_tournament_relations, verify_scheme};
use deza_core::verify::{
    feasibility, realized_product, reconstruct_product, verify_ddd, verify_deza_digraph,
    verify_deza_graph, verify_dsrg, verify_reflexive_directed_deza, verify_type2,
    Classification, DddParams, DezaParams, DsrgParams, Params, TypeIIParams, VerificationReport,
};
use deza_core::{Digraph, FiniteField, IntMatrix};

use common::{alpha_beta_by_walks, directed_cycle, m1, m2, skew_example, twin_example};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn deza(n: u64, k: u64, b: u64, a: u64, t: u64) -> Option<DezaParams> {
    Some(DezaParams::new(n, k, b, a, t))
}

fn criterion_1() -> Outcome {
    for (name, d, params, counts) in [
        ("M1", m1(), DezaParams::new(8, 3, 3, 1, 0), (6, 1)),
        ("M2", m2(), DezaParams::new(8, 4, 3, 1, 1), (3, 4)),
    ] {
        let r = verify_deza_digraph(&d).unwrap();
        ensure!(r.deza_params() == Some(params), "{name}: {:?}", r.params);
        for u in 0..8 {
            let walked = alpha_beta_by_walks(d.adjacency(), u, params.a as i64, params.b as i64);
            ensure!(walked == counts, "{name} vertex {u}: walked α, β = {walked:?}");
        }
        ensure!(
            (r.alpha, r.beta) == (Some(counts.0 as u64), Some(counts.1 as u64)),
            "{name}: reported α, β = {:?}",
            (r.alpha, r.beta)
        );
        let f = feasibility(&params).unwrap();
        ensure!(
            (f.alpha.as_integer(), f.beta.as_integer())
                == (Some(counts.0 as i64), Some(counts.1 as i64)),
            "{name}: closed forms {:?}",
            (f.alpha, f.beta)
        );
        ensure!(r.formula_consistent == Some(true), "{name}: formula mismatch flagged");
    }
    Ok("M1 (8,3,3,1,0) α,β = 6,1; M2 (8,4,3,1,1) α,β = 3,4".into())
}

fn criterion_2() -> Outcome {
    let from_example = skew_hadamard_deza(&skew_example()).unwrap();
    ensure!(from_example == m1(), "order-4 example does not reproduce M1");
    for u in 1..=3u64 {
        let h = skew_hadamard(4 * u as usize).unwrap();
        let d = skew_hadamard_deza(&h).unwrap();
        let r = verify_deza_digraph(&d).unwrap();
        ensure!(
            r.deza_params() == deza(8 * u, 4 * u - 1, 4 * u - 1, 2 * u - 1, 0),
            "u = {u}: {:?}",
            r.params
        );
        let ddd = verify_ddd(&d, &consecutive_classes(4 * u as usize, 2)).unwrap();
        let want = DddParams { v: 8 * u, k: 4 * u - 1, lambda1: 0, lambda2: 2 * u - 1, m: 4 * u, n_class: 2 };
        ensure!(ddd.ddd_params() == Some(want), "u = {u} DDD: {:?} {:?}", ddd.params, ddd.witness);
    }
    Ok("M1 reproduced bit for bit; u = 1, 2, 3 match both parameter sets".into())
}

fn twin_checks(h: &deza_core::HadamardMatrix) -> Result<(), String> {
    let n = h.order() as u64;
    let pair = twin_deza(h).unwrap();
    let graph = deza((2 * n - 1) * n, (n - 1) * n, n * (n - 1) / 2, n * (n - 2) / 2, (n - 1) * n);
    for (part, g) in [("A", &pair.positive_part), ("B", &pair.negative_part)] {
        let r = verify_deza_graph(g, false).unwrap();
        ensure!(r.deza_params() == graph, "n = {n} {part}: {:?} {:?}", r.params, r.witness);
    }
    let (x, y) = siamese_reflexive(&pair, h).unwrap();
    let reflexive = deza((2 * n - 1) * n, n * n, n * (n + 1) / 2, n * n / 2, n * n);
    for (part, g) in [("A + I⊗C1", &x), ("B + I⊗C1", &y)] {
        let r = verify_deza_graph(g, true).unwrap();
        ensure!(r.classification == Classification::ReflexiveDezaGraph, "n = {n} {part}");
        ensure!(r.deza_params() == reflexive, "n = {n} {part}: {:?}", r.params);
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for k in 1..=3 {
        twin_checks(&sylvester(k).unwrap())?;
    }
    twin_checks(&twin_example())?;
    Ok("n = 2, 4, 8 twin and Siamese parameters hold; n = 4 gives (28,12,6,4) and (28,16,10,8)".into())
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut realized = String::new();
    for k in 1..=3u32 {
        let h = sylvester(k).unwrap();
        let n = h.order() as u64;
        let (pair, (x, y)) = twin_directed(&h).unwrap();
        let classes = consecutive_classes((2 * n - 1) as usize, n as usize);
        let want = DddParams {
            v: (2 * n - 1) * n,
            k: (n - 1) * n,
            lambda1: n * (n - 2) / 2,
            lambda2: n * (n - 1) / 2,
            m: 2 * n - 1,
            n_class: n,
        };
        for (part, g) in [("A", &pair.positive_part), ("B", &pair.negative_part)] {
            let r = verify_ddd(g, &classes).unwrap();
            if r.ddd_params() != Some(want) {
                failures.push(format!(
                    "n = {n} {part} not DDD{:?}: {}",
                    (want.v, want.k, want.lambda1, want.lambda2, want.m, want.n_class),
                    r.witness.unwrap_or_default()
                ));
            }
        }
        if n == 4 {
            for (part, g) in [("A + I⊗C1", &x), ("B + I⊗C1", &y)] {
                let r = verify_reflexive_directed_deza(g).unwrap();
                let hit = r
                    .statistics
                    .iter()
                    .find(|s| s.diagonal.is_some() && s.off_diagonal == [8, 10] && s.matches);
                match hit {
                    Some(s) => {
                        realized = format!(
                            "n = 4 reflexive pair realizes {{8,10}} under {} (diagonal {})",
                            s.name,
                            s.diagonal.unwrap()
                        )
                    }
                    None => failures.push(format!("n = 4 {part}: statistics {:?}", r.statistics)),
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(realized)
    } else {
        Err(format!("{}; {realized}", failures.join("; ")))
    }
}

fn criterion_5() -> Outcome {
    let mut detail = Vec::new();
    for q in [3u64, 5] {
        let start = Instant::now();
        let f = FiniteField::of_order(q).unwrap();
        let report = check_field_identities(&f).unwrap();
        for c in &report.checks {
            ensure!(c.passed, "q = {q} {}: {:?}", c.name, c.counterexample);
        }
        let want = (q * q * (2 * q + 3), 2 * q * q + 2 * q, 3 * q, 2 * q);
        let elements: Vec<_> = f.elements().collect();
        let family: Vec<Digraph> = elements.iter().map(|&a| field_type2(&f, a).unwrap()).collect();
        let r = verify_deza_graph(&family[0], false).unwrap();
        ensure!(
            r.deza_params() == deza(want.0, want.1, want.2, want.3, want.1),
            "q = {q} N0: {:?}",
            r.params
        );
        for &a in &elements[1..] {
            let r = verify_type2(&family[a.index()]).unwrap();
            ensure!(
                r.type2_params() == Some(TypeIIParams { n: want.0, k: want.1, b: want.2, a: want.3 }),
                "q = {q} N_{}: {:?}",
                a.index(),
                r.params
            );
        }
        for &a in &elements {
            ensure!(
                family[a.index()].adjacency().transpose() == *family[f.neg(a).index()].adjacency(),
                "q = {q}: transpose of N_{} is not N_-α",
                a.index()
            );
        }
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                let (x, y) = (family[i].adjacency(), family[j].adjacency());
                ensure!(x.mul(y).unwrap() == y.mul(x).unwrap(), "q = {q}: N_{i}, N_{j} do not commute");
            }
        }
        detail.push(format!("q = {q} ({} checks, {:.1?})", report.checks.len(), start.elapsed()));
    }
    Ok(detail.join(", "))
}

fn criterion_6() -> Outcome {
    for q in [3u64, 7, 11] {
        let t = (q - 3) / 4;
        let d = paley_tournament(q).unwrap();
        let r = verify_deza_digraph(&d).unwrap();
        let want = deza(4 * t + 3, 2 * t + 1, t + 1, t, 0);
        ensure!(r.deza_params() == want, "q = {q}: {:?}", r.params);
        let s = verify_scheme(&paley_tournament_relations(q).unwrap()).map_err(|e| e.to_string())?;
        ensure!(s.classes() == 2 && !s.is_symmetric(), "q = {q}: scheme shape");
        let (fused, fr) = fusion_digraph(&s, &[1]).unwrap();
        ensure!(fused == d, "q = {q}: fusion digraph differs");
        ensure!(fr.deza_params() == want, "q = {q}: fusion params {:?}", fr.params);
        ensure!(fr.classification == r.classification, "q = {q}: fusion tag differs");
    }
    Ok("q = 3, 7, 11 agree between direct check and intersection numbers".into())
}

/// Directed Deza graphs used as the inner factor of lexicographic products.
fn inner_factors() -> Vec<(String, Digraph)> {
    vec![
        ("E1".into(), empty_digraph(1)),
        ("E2".into(), empty_digraph(2)),
        ("E3".into(), empty_digraph(3)),
        ("C3".into(), directed_cycle(3)),
        ("C4".into(), directed_cycle(4)),
        ("C5".into(), directed_cycle(5)),
        ("T7".into(), paley_tournament(7).unwrap()),
        ("M1".into(), m1()),
    ]
}

fn criterion_7(dsrgs: &[(DsrgParams, Digraph)]) -> Outcome {
    let (mut positive, mut negative, mut stated_disagrees) = (0, 0, 0);
    let mut outers: Vec<(DsrgParams, Digraph)> = dsrgs.to_vec();
    let t7 = paley_tournament(7).unwrap();
    outers.push((verify_dsrg(&t7).unwrap().dsrg_params().unwrap(), t7));
    for (dp, outer) in &outers {
        for (name, inner) in inner_factors() {
            let ip = verify_deza_digraph(&inner).unwrap().deza_params().unwrap();
            let predicted = lex_deza_condition(dp, &ip).unwrap();
            let actual = verify_deza_digraph(&lex_product(outer, &inner).unwrap()).unwrap();
            ensure!(
                predicted == actual.is_member(),
                "DSRG{:?} x {name}: predicted {predicted}, direct {:?}",
                (dp.n, dp.k, dp.lambda, dp.mu, dp.t),
                actual.witness
            );
            if predicted {
                positive += 1;
            } else {
                negative += 1;
            }
            if lex_condition_as_stated(dp, &ip) != predicted {
                stated_disagrees += 1;
            }
        }
    }
    ensure!(positive >= 5 && negative >= 5, "only {positive} positive, {negative} negative pairs");

    let mut law = 0;
    for (p, d) in dsrgs.iter().filter(|(p, _)| p.lambda == p.mu) {
        for n2 in [2u64, 3] {
            let r = verify_deza_digraph(&lex_product(d, &empty_digraph(n2 as usize)).unwrap()).unwrap();
            let want = deza(p.n * n2, p.k * n2, p.t * n2, p.lambda * n2, p.t * n2);
            ensure!(r.deza_params() == want, "λ = μ law for {p:?} x E{n2}: {:?}", r.params);
            law += 1;
        }
    }
    ensure!(law > 0, "search produced no λ = μ DSRG");
    Ok(format!(
        "{positive} positive / {negative} negative pairs agree; stated set disagrees on {stated_disagrees}; law holds for {law} products"
    ))
}

fn criterion_8(dsrgs: &[(DsrgParams, Digraph)]) -> Outcome {
    let mut rounds = 0;
    for (p, d) in dsrgs.iter().filter(|(p, _)| p.lambda == p.mu) {
        for n2 in [2usize, 3] {
            let product = lex_product(d, &empty_digraph(n2)).unwrap();
            let dec = decompose_b_eq_t(&product).map_err(|e| format!("{p:?} x E{n2}: {e}"))?;
            ensure!(dec.class_size == n2, "{p:?} x E{n2}: class size {}", dec.class_size);
            ensure!(dec.quotient_params == Params::Dsrg(*p), "{p:?}: quotient {:?}", dec.quotient_params);
            ensure!(
                canonical_form(&dec.quotient).unwrap() == canonical_form(d).unwrap(),
                "{p:?}: quotient not isomorphic to the source"
            );
            let rebuilt = lex_product(&dec.quotient, &empty_digraph(n2)).unwrap();
            let relabeled = product.relabel(&inverse(&dec.class_order())).unwrap();
            ensure!(relabeled == rebuilt, "{p:?} x E{n2}: relabeling certificate fails");
            if product.order() <= 10 {
                ensure!(
                    canonical_form(&product).unwrap() == canonical_form(&rebuilt).unwrap(),
                    "{p:?} x E{n2}: canonical forms differ"
                );
            }
            rounds += 1;
        }
    }
    ensure!(rounds > 0, "no λ = μ DSRG to round-trip");

    // converse: decomposition succeeds exactly on searched digraphs that factor as D1[E_m]
    let (mut converse, mut counterexamples) = (0, Vec::new());
    for p in parameter_tuples(6).into_iter().filter(|p| p.a < p.b && p.t < p.k && feasible(p)) {
        let found = search_deza_digraphs(&p, SearchOptions { limit: usize::MAX, canonical_dedup: true })
            .unwrap();
        for d in found {
            let result = decompose_b_eq_t(&d);
            let factorable = p.b == p.t && lex_factorization(&d).is_some();
            ensure!(
                result.is_ok() == factorable,
                "{p:?}: decomposition {:?}, factorization oracle {factorable}",
                result.err()
            );
            if p.b == p.t && !factorable {
                counterexamples.push(format!("{:?}", (p.n, p.k, p.b, p.a, p.t)));
            }
            converse += 1;
        }
    }
    ensure!(decompose_b_eq_t(&m1()).is_err(), "M1 has b ≠ t but decomposed");

    for (q, want) in [(7u64, (7u64, 3u64, 1u64)), (11, (11, 5, 2))] {
        let n = qr_symmetric_design(q).unwrap();
        for n2 in [2usize, 3] {
            let d = design_lex_empty(&n, n2).unwrap();
            let dec = decompose_type2_b_eq_k(&d).map_err(|e| format!("design {q} x E{n2}: {e}"))?;
            match dec.quotient_params {
                Params::Design(p) => ensure!((p.n, p.k, p.lambda) == want, "design {q}: {p:?}"),
                other => return Err(format!("design {q}: {other:?}")),
            }
            ensure!(dec.class_size == n2, "design {q} x E{n2}: class size {}", dec.class_size);
            ensure!(*dec.quotient.adjacency() == n, "design {q}: quotient differs from incidence");
            rounds += 1;
        }
    }
    let f = FiniteField::of_order(3).unwrap();
    ensure!(
        decompose_type2_b_eq_k(&field_type2(&f, f.one()).unwrap()).is_err(),
        "field family with b ≠ k decomposed"
    );
    counterexamples.dedup();
    Ok(format!(
        "{rounds} round trips; {converse} searched digraphs agree with the factorization oracle; b = t without a factorization at {}",
        if counterexamples.is_empty() { "none".to_string() } else { counterexamples.join(", ") }
    ))
}

/// Brute-force check for D ≅ D1[E_m] with D1 a DSRG with λ = μ, via classes of
/// non-adjacent vertices sharing both neighbourhoods.
fn lex_factorization(d: &Digraph) -> Option<(Digraph, usize)> {
    let n = d.order();
    let m = d.adjacency();
    let twins = |u: usize, v: usize| {
        u == v
            || (m.get(u, v) == 0
                && m.get(v, u) == 0
                && m.row(u) == m.row(v)
                && (0..n).all(|w| m.get(w, u) == m.get(w, v)))
    };
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if class_of[u] == usize::MAX {
            let members: Vec<usize> = (u..n).filter(|&v| twins(u, v)).collect();
            for &v in &members {
                class_of[v] = classes.len();
            }
            classes.push(members);
        }
    }
    let g = classes.iter().fold(0, |g, c| gcd(g, c.len()));
    (1..=g).rev().filter(|size| g % size == 0).find_map(|size| {
        let blocks: Vec<usize> = classes.iter().flat_map(|c| c.chunks(size).map(|b| b[0])).collect();
        let q = IntMatrix::from_fn(blocks.len(), |i, j| m.get(blocks[i], blocks[j]));
        let quotient = Digraph::simple(q).ok()?;
        let r = verify_dsrg(&quotient).ok()?;
        let p = r.dsrg_params()?;
        (p.lambda == p.mu && p.t < p.k).then_some((quotient, size))
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn inverse(order: &[usize]) -> Vec<usize> {
    // relabel sends old vertex v to position perm[v]
    let mut inv = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        inv[v] = pos;
    }
    inv
}

fn criterion_9() -> Outcome {
    let target = canonical_form(&m1()).unwrap();
    let found = search_deza_digraphs(
        &DezaParams::new(8, 3, 3, 1, 0),
        SearchOptions { limit: usize::MAX, canonical_dedup: true },
    )
    .unwrap();
    ensure!(
        found.iter().any(|d| canonical_form(d).unwrap() == target),
        "no search hit is isomorphic to M1 among {} classes",
        found.len()
    );
    let (mut rejected, mut empty_but_accepted) = (0, 0);
    for p in parameter_tuples(6) {
        let hits = search_deza_digraphs(&p, SearchOptions { limit: 1, canonical_dedup: true }).unwrap();
        if !feasible(&p) {
            rejected += 1;
            ensure!(hits.is_empty(), "{p:?} rejected by feasibility but realized");
        } else if hits.is_empty() {
            empty_but_accepted += 1;
        }
    }
    Ok(format!(
        "(8,3,3,1,0) has {} classes incl. M1; {rejected} rejected tuples all empty; {empty_but_accepted} accepted tuples have no realization",
        found.len()
    ))
}

fn corpus(dsrgs: &[(DsrgParams, Digraph)]) -> Vec<(String, Digraph, VerificationReport)> {
    let mut out = Vec::new();
    let mut push = |name: String, d: Digraph, r: VerificationReport| out.push((name, d, r));
    for (name, d) in [("M1", m1()), ("M2", m2())] {
        let r = verify_deza_digraph(&d).unwrap();
        push(name.into(), d, r);
    }
    for u in 1..=3 {
        let d = skew_hadamard_deza(&skew_hadamard(4 * u).unwrap()).unwrap();
        let r = verify_deza_digraph(&d).unwrap();
        push(format!("skew u={u}"), d, r);
    }
    for k in 1..=3 {
        let h = sylvester(k).unwrap();
        let pair = twin_deza(&h).unwrap();
        let (x, y) = siamese_reflexive(&pair, &h).unwrap();
        for (part, g, reflexive) in [
            ("A", pair.positive_part.clone(), false),
            ("B", pair.negative_part.clone(), false),
            ("A+C1", x, true),
            ("B+C1", y, true),
        ] {
            let r = verify_deza_graph(&g, reflexive).unwrap();
            push(format!("twin n={} {part}", h.order()), g, r);
        }
        let (dpair, (dx, dy)) = twin_directed(&h).unwrap();
        for (part, g) in [("A", dpair.positive_part), ("B", dpair.negative_part)] {
            let r = verify_type2(&g).unwrap();
            push(format!("directed twin n={} {part}", h.order()), g, r);
        }
        for (part, g) in [("A+C1", dx), ("B+C1", dy)] {
            let r = verify_reflexive_directed_deza(&g).unwrap();
            push(format!("directed twin n={} {part}", h.order()), g, r);
        }
    }
    for q in [3u64, 5] {
        let f = FiniteField::of_order(q).unwrap();
        for a in f.elements() {
            let d = field_type2(&f, a).unwrap();
            let r = if a == f.zero() { verify_deza_graph(&d, false) } else { verify_type2(&d) }.unwrap();
            push(format!("field q={q} α={}", a.index()), d, r);
        }
    }
    for q in [3u64, 7, 11] {
        let d = paley_tournament(q).unwrap();
        let r = verify_deza_digraph(&d).unwrap();
        push(format!("tournament q={q}"), d, r);
    }
    for q in [5u64, 13] {
        let d = paley_graph(q).unwrap();
        let r = verify_deza_graph(&d, false).unwrap();
        push(format!("paley graph q={q}"), d, r);
    }
    for (q, n2) in [(7u64, 2usize), (7, 3), (11, 2), (11, 3)] {
        let d = design_lex_empty(&qr_symmetric_design(q).unwrap(), n2).unwrap();
        let r = verify_type2(&d).unwrap();
        push(format!("design {q} x E{n2}"), d, r);
    }
    for (p, d) in dsrgs {
        let r = verify_deza_digraph(d).unwrap();
        push(format!("dsrg {:?}", (p.n, p.k, p.lambda, p.mu, p.t)), d.clone(), r);
        for (name, inner) in inner_factors() {
            let prod = lex_product(d, &inner).unwrap();
            let r = verify_deza_digraph(&prod).unwrap();
            if r.is_member() {
                push(format!("dsrg {:?} x {name}", (p.n, p.k)), prod, r);
            }
        }
    }
    out
}

fn criterion_10(dsrgs: &[(DsrgParams, Digraph)]) -> Outcome {
    let objects = corpus(dsrgs);
    for (name, d, r) in &objects {
        ensure!(r.is_member(), "{name} failed verification: {:?}", r.witness);
        let rebuilt = reconstruct_product(r).map_err(|e| format!("{name}: {e}"))?;
        let product = realized_product(d, r).map_err(|e| format!("{name}: {e}"))?;
        ensure!(rebuilt == product, "{name}: a·X + b·Y + t·I differs from the product");
        let (x, y) = (r.children.as_ref().unwrap().0.adjacency(), r.children.as_ref().unwrap().1.adjacency());
        let n = d.order();
        let cover = x.add(y).unwrap().add(&IntMatrix::identity(n)).unwrap();
        let p = r.deza_params().map(|p| (p.a, p.b)).or(r.type2_params().map(|p| (p.a, p.b))).unwrap();
        if p.0 != p.1 {
            ensure!(cover == IntMatrix::ones(n), "{name}: X + Y + I ≠ J");
        }
    }
    Ok(format!("{} verified objects reconstruct exactly", objects.len()))
}

fn run(number: usize, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!("criterion {number:>2}: PASS ({elapsed:.2?}) {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {number:>2}: FAIL ({elapsed:.2?}) {detail}");
            false
        }
    }
}

fn main() {
    let dsrgs = search_dsrg(8, false).expect("DSRG search");
    let results = [
        run(1, criterion_1),
        run(2, criterion_2),
        run(3, criterion_3),
        run(4, criterion_4),
        run(5, criterion_5),
        run(6, criterion_6),
        run(7, || criterion_7(&dsrgs)),
        run(8, || criterion_8(&dsrgs)),
        run(9, criterion_9),
        run(10, || criterion_10(&dsrgs)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

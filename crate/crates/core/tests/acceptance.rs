//! One PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pathramsey_core::class_p::{generate_class_p, verify_class_p, verify_edgeboost, ClassPConfig, VerifyMode};
use pathramsey_core::colouring::{arrow_check, kst_sweep, ArrowMode, ArrowOptions};
use pathramsey_core::embed::{
    base_case_host, clique_sizes, constants_chain, embed_base_case, lll_embed, validate_embedding, LllInstance,
};
use pathramsey_core::graph::{complete_blowup, path_power, sheared_blowup, MatchingRule};
use pathramsey_core::partition::sweep_all_colourings;
use pathramsey_core::pipeline::{run_step, ColouringSpec, StepConfig};
use pathramsey_core::{EdgeColouring, Graph, PathWitness, Rational, Vertex};

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn choose2(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

fn blowup_formulas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let t = rng.gen_range(1..=4);
        let p = rng.gen_range(0.0..=1.0);
        let h = gnp(n, p, &mut rng);
        let (full, _) = complete_blowup(&h, t);
        let (sheared, map) = sheared_blowup(&h, t, MatchingRule::Seeded(rng.gen()));
        let ok = full.n() == n * t
            && full.m() == h.m() * t * t + n * choose2(t)
            && sheared.n() == n * t
            && sheared.m() == h.m() * (t * t - t) + n * choose2(t)
            && map.validate(&sheared).is_ok();
        bad += usize::from(!ok);
    }
    check(bad == 0, format!("200 instances, {bad} mismatches"))
}

/// Injective, and every pair at most `k` apart along the path lands on a
/// host edge.
fn is_power_embedding(map: &[Vertex], n: usize, k: usize, host: &Graph) -> bool {
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    map.len() == n
        && seen.len() == n
        && (0..n).all(|i| (i + 1..n.min(i + k + 1)).all(|j| host.has_edge(map[i], map[j])))
}

fn base_case_embeddings() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(k + 1..=30);
        let extra = rng.gen_range(0..=4);
        let mut g = gnp(n + extra, 0.1, &mut rng);
        let mut order: Vec<Vertex> = (0..g.n()).collect();
        order.shuffle(&mut rng);
        order.truncate(n);
        let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
        edges.extend(order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))));
        edges.sort_unstable();
        edges.dedup();
        g = Graph::from_edges(g.n(), edges).unwrap();
        let (host, map) = base_case_host(&g, k, MatchingRule::Seeded(rng.gen()));
        let ok = embed_base_case(&g, k, &PathWitness::new(order), &host, &map).is_ok_and(|out| {
            is_power_embedding(&out.embedding.map, n, k, &host)
                && validate_embedding(&path_power(n, k), &host, &out.embedding, None).valid
        });
        bad += usize::from(!ok);
    }
    check(bad == 0, format!("100 instances, {bad} failures"))
}

fn small_arrows() -> Outcome {
    let opts = ArrowOptions::default();
    let k = Graph::complete;
    let p3 = path_power(3, 1);
    let cases = [
        ("K3 -> P3", k(3), p3.clone(), true),
        ("P4 -> P3", path_power(4, 1), p3, false),
        ("K6 -> K3", k(6), k(3), true),
        ("K5 -> K3", k(5), k(3), false),
    ];
    let mut wrong = Vec::new();
    for (name, host, pattern, expect) in cases {
        let v = arrow_check(&host, &pattern, 2, ArrowMode::Exhaustive, &opts).unwrap();
        let ok = v.arrows == Some(expect) && (expect || v.counterexample_revalidated == Some(true));
        if !ok {
            wrong.push(name);
        }
    }
    check(wrong.is_empty(), format!("4 known relations, wrong: {wrong:?}"))
}

fn partition_sweep() -> Outcome {
    let reports: Vec<_> = (1..=6).map(|n| sweep_all_colourings(n, 1).unwrap()).collect();
    let total: u64 = reports.iter().map(|r| r.colourings).sum();
    let failures: u64 = reports.iter().map(|r| r.failures).sum();
    check(
        reports[5].colourings == 1 << 15 && failures == 0,
        format!("{total} colourings of K1..K6, {failures} without a verified cover"),
    )
}

fn biclique_bound() -> Outcome {
    let s = kst_sweep(5, 1);
    let graphs: u64 = s.rows.iter().map(|r| r.graphs_checked).sum();
    check(s.violations == 0, format!("sides 1..=5, {graphs} free graphs, {} violations", s.violations))
}

fn toy_class_p(seed: u64) -> ClassPConfig {
    serde_json::from_value(serde_json::json!({
        "a": "2", "b": 16, "c": "1/2", "eps": "9/10", "t": 1, "n": 8, "p": "9/10", "seed": seed, "mode": "toy"
    }))
    .unwrap()
}

fn class_p_members() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..50 {
        let cfg = toy_class_p(seed);
        let params = cfg.params();
        let ok = generate_class_p(&params, &cfg.generation())
            .is_ok_and(|(g, _, _)| verify_class_p(&g, &params, VerifyMode::Exhaustive).is_ok_and(|r| r.passed));
        if !ok {
            failures.push(seed);
        }
    }
    check(failures.is_empty(), format!("50 seeds at an = 16, failing seeds {failures:?}"))
}

fn edge_boost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut instances, mut drawn, mut violations) = (0, 0, 0);
    while instances < 50 && drawn < 10_000 {
        drawn += 1;
        let n = rng.gen_range(10..=14);
        let (mu, beta) = [(2, 4), (2, 5), (3, 6)][instances % 3];
        let g = gnp(n, 0.85, &mut rng);
        let r = verify_edgeboost(&g, n, beta, mu).unwrap();
        if r.hypothesis_holds {
            instances += 1;
            violations += r.violations;
        }
    }
    check(
        instances == 50 && violations == 0,
        format!("{instances} graphs meeting the hypothesis ({drawn} drawn), {violations} violations"),
    )
}

/// A template of maximum degree 3 on 8-vertex candidate sets, with at most
/// four blue pairs per template edge, so that `4 d p <= 4 * 4 * 4/64 = 1`.
fn lll_instance(rng: &mut ChaCha8Rng) -> (LllInstance, Graph, EdgeColouring) {
    let n = 2 * rng.gen_range(3..=12);
    let size = 8;
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    for w in order.chunks(2) {
        let (u, v) = (w[0].min(w[1]), w[0].max(w[1]));
        if v != u + 1 && !(u == 0 && v == n - 1) {
            edges.push((u, v));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let template = Graph::from_edges(n, edges).unwrap();
    let cliques: Vec<Vec<Vertex>> = (0..n).map(|u| (u * size..(u + 1) * size).collect()).collect();
    let host_edges: Vec<(Vertex, Vertex)> = template
        .edges()
        .flat_map(|(u, v)| {
            let (cu, cv) = (cliques[u].clone(), cliques[v].clone());
            cu.into_iter().flat_map(move |x| cv.clone().into_iter().map(move |y| (x, y)))
        })
        .collect();
    let host = Graph::from_edges(n * size, host_edges).unwrap();
    let mut blue = std::collections::BTreeSet::new();
    for (u, v) in template.edges() {
        for _ in 0..4 {
            blue.insert((cliques[u][rng.gen_range(0..size)], cliques[v][rng.gen_range(0..size)]));
        }
    }
    let colours = host.edges().map(|e| u8::from(!blue.contains(&e))).collect();
    let chi = EdgeColouring::for_host(&host, 2, colours).unwrap();
    let inst = LllInstance::from_colouring(template, cliques, &host, &chi, 0).unwrap();
    (inst, host, chi)
}

fn resampling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut uncertified, mut failures) = (0, 0);
    for _ in 0..50 {
        let (inst, host, chi) = lll_instance(&mut rng);
        if inst.condition_value() > Rational::from(1u64) {
            uncertified += 1;
        }
        let t = inst.template().clone();
        let ok = lll_embed(&inst, rng.gen(), 100 * t.m() as u64).is_ok_and(|out| {
            let map = &out.embedding.map;
            t.edges().all(|(u, v)| chi.colour(&host, map[u], map[v]).is_some_and(|c| c != 0))
                && (0..t.n()).all(|u| inst.cliques()[u].contains(&map[u]))
        });
        failures += usize::from(!ok);
    }
    check(
        uncertified == 0 && failures == 0,
        format!("50 instances, {uncertified} over the condition, {failures} failures"),
    )
}

fn constants() -> Outcome {
    let quad = pathramsey_core::class_p::GoodQuadruple::new(
        Rational::from(3u64),
        Rational::from(950_400u64),
        Rational::from(1u64),
        Rational::new(1, 20),
    );
    let mut off = Vec::new();
    for (k, s, r, t) in [(1, 2, 1, 2), (2, 2, 3, 2), (1, 3, 2, 1), (3, 2, 2, 3)] {
        let chain = constants_chain(k, s, r, t, &quad, &Rational::from(1u64)).unwrap();
        if chain.big_r != t * r || chain.delta != &quad.eps / &Rational::from(2u64) {
            off.push((k, s, r, t));
        }
    }
    let sizes = clique_sizes(2, 1, 1, 2, 2);
    let t = sizes.t.exact().map(ToString::to_string);
    let ok = off.is_empty() && t.as_deref() == Some("4294967296");
    check(ok, format!("R and delta off for {off:?}, T = {}", t.unwrap_or_default()))
}

fn determinism() -> Outcome {
    let cfg = StepConfig::toy(ColouringSpec::Adversarial { seed: 0 }, 11);
    let a = serde_json::to_string_pretty(&run_step(&cfg).unwrap()).unwrap();
    let b = serde_json::to_string_pretty(&run_step(&cfg).unwrap()).unwrap();
    check(a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("blow-up edge counts", Duration::from_secs(5), blowup_formulas),
        ("base-case embeddings", Duration::from_secs(30), base_case_embeddings),
        ("small arrow relations", Duration::from_secs(60), small_arrows),
        ("two-colour path covers up to K6", Duration::from_secs(600), partition_sweep),
        ("K_{2,2}-free edge bound", Duration::from_secs(600), biclique_bound),
        ("toy class members", Duration::from_secs(120), class_p_members),
        ("edge boost", Duration::from_secs(300), edge_boost),
        ("resampling embedding", Duration::from_secs(60), resampling),
        ("constants chain", Duration::from_secs(5), constants),
        ("step determinism", Duration::from_secs(60), determinism),
    ];
    let mut all = true;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.pass && took <= limit;
        all &= pass;
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict} {:>2} {name}: {} [{:.2?} of {:?}]", i + 1, out.detail, took, limit);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

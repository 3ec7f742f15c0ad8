use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pairs::{exhaustive_stats, sampled_stats, CertMode, DensityCertificate, PairStats};
use super::verify::{certify_pairs, VerifyMode, EXHAUSTIVE_PAIR_BUDGET};
use super::{paper_edge_probability, ClassPParams, GenerationConfig, GenerationMode};
use crate::graph::{shortest_cycle_through, Graph, GraphBuilder, Neighbours, Vertex};
use crate::rational::Rational;
use crate::subsets::{disjoint_pair_count, full_mask};

/// Resamples of the binomial graph allowed after a failed certification.
pub const CERTIFICATION_RETRIES: usize = 16;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GenerateError {
    #[error("edge probability {p} exceeds 1; paper-mode parameters are infeasible at n = {n}")]
    ParameterInfeasible { p: Rational, n: u64 },
    #[error("edge probability must lie in (0, 1], got {0}")]
    BadProbability(Rational),
    #[error("toy mode needs an explicit edge probability")]
    MissingProbability,
    #[error("rounding gives cn = {cn}, need at least 2")]
    SetSizeTooSmall { cn: u64 },
    #[error("sample size 2an = {sample} is smaller than an = {an}")]
    SampleTooSmall { sample: u64, an: u64 },
    #[error(
        "density certification failed after {attempts} samples; worst pair deviates by {worst_dev} (tolerance {tolerance})"
    )]
    CertificationFailure {
        attempts: usize,
        worst_dev: Rational,
        tolerance: Rational,
        worst_pair: Option<(Vec<Vertex>, Vec<Vertex>)>,
    },
    #[error("after pruning the maximum degree is {max_degree}, above the bound b = {b}")]
    DegreeBoundExceeded { max_degree: usize, b: u64 },
}

/// What the cycle-cleaning stage did.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleCleaning {
    pub cycles_found: usize,
    pub removed_edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenerationLog {
    pub p: Rational,
    pub sample_vertices: u64,
    pub attempts: usize,
    /// Largest relative deviation of each rejected sample.
    pub rejected_deviations: Vec<Rational>,
    pub sample_edges: usize,
    pub sample_certificate: DensityCertificate,
    pub cleaning: CycleCleaning,
    /// Removed vertices, in removal order, as ids of the binomial sample.
    pub removed_vertices: Vec<Vertex>,
    /// `kept[i]` is the sample id of output vertex `i`.
    pub kept: Vec<Vertex>,
    pub edges_before_prune: usize,
}

/// `G(n, p)` with a ChaCha8 stream: pairs in lexicographic order, one
/// Bernoulli draw each.
pub fn sample_binomial(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if p >= 1.0 || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("sampled edges are valid")
}

/// Removes one edge from each cycle of length at most `limit` until none
/// remain. Every edge is visited once in canonical order; while a short
/// cycle passes through it, the cycle edge with the largest endpoint-degree
/// sum is deleted (ties to the lexicographically smallest). Deletions never
/// create cycles, so one pass suffices.
pub fn clean_short_cycles(g: &Graph, limit: usize) -> (Graph, CycleCleaning) {
    let mut b = GraphBuilder::from_graph(g);
    let mut log = CycleCleaning::default();
    if limit < 3 {
        return (b.build(), log);
    }
    for (u, v) in g.edges() {
        while b.is_adjacent(u, v) {
            let Some(cycle) = shortest_cycle_through(&b, u, v, limit) else { break };
            log.cycles_found += 1;
            let len = cycle.len();
            let victim = (0..len)
                .map(|i| {
                    let (x, y) = (cycle[i], cycle[(i + 1) % len]);
                    if x < y {
                        (x, y)
                    } else {
                        (y, x)
                    }
                })
                .max_by(|&(a, b2), &(c, d)| {
                    let s1 = b.degree(a) + b.degree(b2);
                    let s2 = b.degree(c) + b.degree(d);
                    s1.cmp(&s2).then_with(|| (c, d).cmp(&(a, b2)))
                })
                .expect("cycle has edges");
            b.remove_edge(victim.0, victim.1);
            log.removed_edges.push(victim);
        }
    }
    (b.build(), log)
}

/// Repeatedly deletes a current maximum-degree vertex (smallest id on ties)
/// until `keep` vertices remain. Returns the induced graph on the survivors
/// (relabelled in increasing id order), the survivors, and the removal order.
pub fn prune_max_degree(g: &Graph, keep: usize) -> (Graph, Vec<Vertex>, Vec<Vertex>) {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = Vec::new();
    for _ in keep..n {
        let v =
            (0..n).filter(|&v| alive[v]).max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a))).expect("vertices remain");
        alive[v] = false;
        for &w in g.neighbours(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
        removed.push(v);
    }
    let kept: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    (g.induced(&kept), kept, removed)
}

fn pair_stats_auto(g: &Graph, s: usize, samples: usize, seed: u64) -> (PairStats, CertMode) {
    let n = g.n();
    if n <= 64 && disjoint_pair_count(n as u64, s as u64) <= EXHAUSTIVE_PAIR_BUDGET {
        let adj = g.adjacency_masks().expect("n <= 64");
        (exhaustive_stats(&adj, full_mask(n), s), CertMode::Exhaustive)
    } else {
        let all: Vec<Vertex> = (0..n).collect();
        (sampled_stats(g, &all, s, samples, seed), CertMode::Sampled { count: samples, seed })
    }
}

/// Builds a member candidate of `P(a, b, c, t, eps, n)`:
///
/// 1. sample `G* = G(2an, p)`;
/// 2. certify `e(X, Y) = (1 ± eps/2) p (cn)^2` over disjoint `cn`-pairs
///    (all pairs when within budget, else a seeded sample), resampling up to
///    [`CERTIFICATION_RETRIES`] times;
/// 3. delete an edge from every cycle of length at most `2t`;
/// 4. prune maximum-degree vertices until `an` remain.
///
/// The output always has `an` vertices, girth above `2t` and maximum degree
/// at most `b`; condition (iii) on the output is reported by the returned
/// certificate.
pub fn generate_class_p(
    params: &ClassPParams,
    cfg: &GenerationConfig,
) -> Result<(Graph, DensityCertificate, GenerationLog), GenerateError> {
    let cn = params.cn();
    if cn < 2 {
        return Err(GenerateError::SetSizeTooSmall { cn });
    }
    let (an, big) = (params.an(), params.sample_size());
    if big < an {
        return Err(GenerateError::SampleTooSmall { sample: big, an });
    }
    let p = match cfg.mode {
        GenerationMode::Paper => {
            let p = paper_edge_probability(params);
            if p > Rational::one() {
                return Err(GenerateError::ParameterInfeasible { p, n: params.n });
            }
            p
        }
        GenerationMode::Toy => cfg.p.clone().ok_or(GenerateError::MissingProbability)?,
    };
    if !p.is_positive() || p > Rational::one() {
        return Err(GenerateError::BadProbability(p));
    }
    let pf = p.to_f64();
    let tol = &params.quad.eps / &Rational::from(2u64);

    let mut rejected = Vec::new();
    let mut accepted = None;
    for attempt in 0..=CERTIFICATION_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(attempt as u64);
        let sample = sample_binomial(big as usize, pf, &mut rng);
        let cert_seed = cfg.seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(attempt as u64 + 1));
        let (stats, mode) = pair_stats_auto(&sample, cn as usize, cfg.samples, cert_seed);
        let cert = DensityCertificate::against(&stats, &p, &tol, mode);
        if cert.passed {
            accepted = Some((attempt + 1, sample, cert));
            break;
        }
        log::debug!("certification attempt {attempt} rejected, deviation {}", cert.max_rel_dev);
        rejected.push(cert);
    }
    let Some((attempts, sample, sample_cert)) = accepted else {
        let worst = rejected.iter().max_by(|a, b| a.max_rel_dev.cmp(&b.max_rel_dev)).expect("attempts ran");
        return Err(GenerateError::CertificationFailure {
            attempts: rejected.len(),
            worst_dev: worst.max_rel_dev.clone(),
            tolerance: tol,
            worst_pair: worst.worst_pair.clone(),
        });
    };

    let (clean, cleaning) = clean_short_cycles(&sample, 2 * params.t);
    let edges_before_prune = clean.m();
    let (g, kept, removed_vertices) = prune_max_degree(&clean, an as usize);
    let b = params.degree_bound();
    if g.max_degree() as u64 > b {
        return Err(GenerateError::DegreeBoundExceeded { max_degree: g.max_degree(), b });
    }
    let cert = certify_pairs(&g, params, VerifyMode::Auto { samples: cfg.samples, seed: cfg.seed })
        .expect("cn >= 2 was checked");
    let log = GenerationLog {
        p,
        sample_vertices: big,
        attempts,
        rejected_deviations: rejected.into_iter().map(|c| c.max_rel_dev).collect(),
        sample_edges: sample.m(),
        sample_certificate: sample_cert,
        cleaning,
        removed_vertices,
        kept,
        edges_before_prune,
    };
    Ok((g, cert, log))
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{BaseSpec, ColouringSpec, ConfigError, StepConfig, MAX_HOST_EDGES};
use super::{StageRecord, StageStatus, StepOutcome, StepReport, SCHEMA_VERSION};
use crate::class_p::{generate_class_p, GenerateError};
use crate::colouring::{
    blue_path_to_blue_power, build_aux_colouring, mono_clique_in_clique, ColouringError, EdgeColouring,
};
use crate::embed::{
    check_template_containment, embed_base_case, lll_embed, validate_embedding, BaseLayout, Embedding, LllError,
    LllInstance,
};
use crate::graph::{path_power, power, sheared_blowup, BlowupMap, Graph, MatchingRule, Vertex};
use crate::partition::{
    auxiliary_graph, long_path_through_sets, max_edges_between_segments, partition_two_coloured, prune_top,
    segment_path, sparsify, verify_partition, LongPathConfig, LongPathError, Segment,
};

#[derive(Debug, thiserror::Error)]
pub enum StepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("base graph generation failed: {0}")]
    Generate(#[from] GenerateError),
    #[error("colouring: {0}")]
    Colouring(#[from] ColouringError),
    #[error("host would have {0} edges, above the cap")]
    HostTooLarge(u128),
}

/// Independent per-stage seed.
fn stage_seed(seed: u64, stage: u64) -> u64 {
    let mut z = seed ^ stage.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn build_base(cfg: &StepConfig) -> Result<(Graph, Value), StepError> {
    match &cfg.base {
        BaseSpec::ClassP(c) => {
            let (g, cert, log) = generate_class_p(&c.params(), &c.generation())?;
            let details = json!({
                "source": "class_p",
                "vertices": g.n(),
                "edges": g.m(),
                "max_degree": g.max_degree(),
                "density_passed": cert.passed,
                "f_g": cert.f_g,
                "attempts": log.attempts,
            });
            Ok((g, details))
        }
        BaseSpec::Edges { n, edges } => {
            let g = Graph::from_edges(*n, edges.iter().copied())
                .map_err(|e| ConfigError { field: "base.edges", message: e.to_string() })?;
            let details = json!({"source": "edges", "vertices": g.n(), "edges": g.m(), "max_degree": g.max_degree()});
            Ok((g, details))
        }
    }
}

pub fn build_colouring(cfg: &StepConfig, host: &Graph, map: &BlowupMap) -> Result<EdgeColouring, StepError> {
    let s = cfg.s;
    Ok(match &cfg.colouring {
        ColouringSpec::Monochromatic { colour } => EdgeColouring::uniform(host, s, *colour)?,
        ColouringSpec::Random { seed } => EdgeColouring::random(host, s, *seed)?,
        ColouringSpec::Adversarial { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            EdgeColouring::from_fn(host, s, |x, y| {
                if s == 1 || map.base_vertex(x) == map.base_vertex(y) {
                    0
                } else {
                    rng.gen_range(1..s) as u8
                }
            })?
        }
        ColouringSpec::Explicit(chi) => {
            if !chi.matches_host(host) {
                return Err(ColouringError::WrongLength { got: chi.m(), want: host.m() }.into());
            }
            chi.clone()
        }
    })
}

/// Builds `G`, the host `G^R{T}` and the colouring from `cfg`, then runs
/// [`induction_step`].
pub fn run_step(cfg: &StepConfig) -> Result<StepReport, StepError> {
    let StepInput { g, host, map, chi, base_details } = build_input(cfg)?;
    let mut report = induction_step(&g, &host, &map, &chi, cfg);
    report.trace.insert(0, StageRecord { stage: "base graph".into(), status: StageStatus::Ok, details: base_details });
    Ok(report)
}

/// Everything [`induction_step`] consumes.
pub struct StepInput {
    pub g: Graph,
    pub host: Graph,
    pub map: BlowupMap,
    pub chi: EdgeColouring,
    pub base_details: Value,
}

/// Validates `cfg` and builds the base graph, the host `G^R{T}` with a
/// seeded matching rule, and the colouring.
pub fn build_input(cfg: &StepConfig) -> Result<StepInput, StepError> {
    cfg.validate()?;
    let (g, base_details) = build_base(cfg)?;
    let big_r = cfg.big_r();
    let base_power = power(&g, big_r);
    let t = cfg.clique_size as u128;
    let host_edges = base_power.m() as u128 * (t * t - t) + g.n() as u128 * t * (t.saturating_sub(1)) / 2;
    if host_edges > MAX_HOST_EDGES {
        return Err(StepError::HostTooLarge(host_edges));
    }
    let (host, map) = sheared_blowup(&base_power, cfg.clique_size, MatchingRule::Seeded(stage_seed(cfg.seed, 1)));
    let chi = build_colouring(cfg, &host, &map)?;
    Ok(StepInput { g, host, map, chi, base_details })
}

/// The colour chosen as blue and the base vertices whose clique holds a
/// monochromatic `K_target` in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlueSelection {
    /// Cliques whose first monochromatic `K_target` has each colour.
    pub counts: Vec<usize>,
    /// Most frequent colour, ties to the lowest index.
    pub blue: u8,
    pub w: Vec<Vertex>,
    /// `subcliques[i]` is the blue `K_target` in the clique of `w[i]`.
    pub subcliques: Vec<Vec<Vertex>>,
    /// Cliques with no monochromatic `K_target` at all.
    pub missing: usize,
}

pub fn select_blue(
    g: &Graph,
    host: &Graph,
    map: &BlowupMap,
    chi: &EdgeColouring,
    s: usize,
    target: usize,
) -> BlueSelection {
    let mut counts = vec![0usize; s];
    let mut found: Vec<Option<(u8, Vec<Vertex>)>> = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let clique: Vec<Vertex> = map.clique_of(v).collect();
        let m = mono_clique_in_clique(host, chi, &clique, target);
        if let Some(m) = &m {
            counts[m.colour as usize] += 1;
        }
        found.push(m.map(|m| (m.colour, m.vertices)));
    }
    let blue = (0..s).max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a))).expect("s >= 1") as u8;
    let w: Vec<Vertex> = (0..g.n()).filter(|&v| found[v].as_ref().is_some_and(|(c, _)| *c == blue)).collect();
    let subcliques = w.iter().map(|&v| found[v].as_ref().expect("in W").1.clone()).collect();
    let missing = found.iter().filter(|f| f.is_none()).count();
    BlueSelection { counts, blue, w, subcliques, missing }
}

struct Trace {
    records: Vec<StageRecord>,
}

impl Trace {
    fn push(&mut self, stage: &str, status: StageStatus, details: Value) {
        log::debug!("stage {stage}: {status:?}");
        self.records.push(StageRecord { stage: stage.into(), status, details });
    }

    fn fail(mut self, cfg: &StepConfig, stage: &str, reason: String, details: Value) -> StepReport {
        self.push(stage, StageStatus::Failed, details);
        finish(cfg, self, StepOutcome::HonestFailure { stage: stage.into(), reason })
    }
}

fn finish(cfg: &StepConfig, trace: Trace, outcome: StepOutcome) -> StepReport {
    StepReport { schema_version: SCHEMA_VERSION, config: cfg.clone(), trace: trace.records, outcome }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serialisable")
}

/// One induction step: monochromatic subcliques, the blue/grey colouring
/// of `J = G[W]^R`, a blue path (giving a monochromatic path power) or a
/// partition, a long path through the classes, its segments, the auxiliary
/// graph, sparsification, the grey template and the resampling embedding.
/// Every object is validated before the next stage uses it; the first
/// terminal result is returned with the full trace.
pub fn induction_step(g: &Graph, host: &Graph, map: &BlowupMap, chi: &EdgeColouring, cfg: &StepConfig) -> StepReport {
    let mut trace = Trace { records: Vec::new() };
    let (k, s, r, t, n) = (cfg.k, cfg.s, cfg.r, cfg.t, cfg.n);
    let big_r = cfg.big_r();
    if let Err(e) = map.validate(host) {
        return trace.fail(cfg, "host", e.to_string(), Value::Null);
    }
    if !chi.matches_host(host) {
        return trace.fail(cfg, "host", "colouring does not match the host".into(), Value::Null);
    }
    trace.push(
        "host",
        StageStatus::Ok,
        json!({
            "big_r": big_r,
            "clique_size": map.t,
            "vertices": host.n(),
            "edges": host.m(),
            "colour_histogram": chi.histogram(),
        }),
    );

    if s == 1 {
        return single_colour(g, host, map, cfg, trace);
    }

    let sel = select_blue(g, host, map, chi, s, cfg.subclique_size);
    let (blue, w, subcliques) = (sel.blue, &sel.w, &sel.subcliques);
    let w_ok = s * w.len() >= g.n();
    let details = json!({
        "target": cfg.subclique_size,
        "cliques_without_mono_subclique": sel.missing,
        "colour_counts": sel.counts,
        "blue": blue,
        "blue_rule": "most frequent clique colour, ties to the lowest index",
        "w_size": w.len(),
        "w_at_least_v_over_s": w_ok,
    });
    if !w_ok {
        let reason = format!("|W| = {} < |V(G)|/s = {}/{}", w.len(), g.n(), s);
        return trace.fail(cfg, "mono cliques", reason, details);
    }
    trace.push("mono cliques", StageStatus::Ok, details);

    // J and the blue/grey colouring.
    let gw = g.induced(w);
    let j = power(&gw, big_r);
    let aux = match build_aux_colouring(&j, subcliques, host, chi, k, blue) {
        Ok(a) => a,
        Err(e) => return trace.fail(cfg, "aux colouring", e.to_string(), Value::Null),
    };
    if let Err(e) = aux.validate(&j, subcliques, host, chi) {
        return trace.fail(cfg, "aux colouring", e.to_string(), Value::Null);
    }
    trace.push(
        "aux colouring",
        StageStatus::Ok,
        json!({"j_vertices": j.n(), "j_edges": j.m(), "blue_edges": aux.blue_count(), "grey_edges": j.m() - aux.blue_count()}),
    );

    // A blue path on n vertices gives a blue P_n^k.
    let blue_j = aux.blue_graph(&j);
    let all: Vec<Vertex> = (0..j.n()).collect();
    let path_cfg = LongPathConfig { step_budget: cfg.budgets.blue_path_steps, ..LongPathConfig::default() };
    match long_path_through_sets(&blue_j, std::slice::from_ref(&all), n, &path_cfg) {
        Ok(path) => {
            let power_emb = match blue_path_to_blue_power(&path, &j, &aux, subcliques, host, chi) {
                Ok(e) => e,
                Err(e) => return trace.fail(cfg, "blue path", e.to_string(), to_value(&path)),
            };
            let embedding = Embedding::new(power_emb.map[..n].to_vec());
            let check = validate_embedding(&path_power(n, k), host, &embedding, Some((chi, &[blue])));
            if let Some(v) = check.violation {
                return trace.fail(cfg, "blue path", "prefix failed validation".into(), to_value(&v));
            }
            trace.push(
                "blue path",
                StageStatus::Ok,
                json!({"path": path.vertices, "power_vertices": power_emb.map.len()}),
            );
            return finish(cfg, trace, StepOutcome::MonoPowerFound { colour: blue, k, n, embedding });
        }
        Err(LongPathError::NoPathFound { steps, longest, .. }) => {
            trace.push(
                "blue path",
                StageStatus::NotFound,
                json!({
                    "longest": longest.len(),
                    "steps": steps,
                    "search_exhausted": steps < cfg.budgets.blue_path_steps,
                }),
            );
        }
        Err(e) => return trace.fail(cfg, "blue path", e.to_string(), Value::Null),
    }

    // Cover by at most t-1 blue paths and t classes with no blue edge between them.
    let ell = t - 1;
    let cover = match partition_two_coloured(&blue_j, ell, cfg.budgets.partition_mode) {
        Ok(c) => c,
        Err(e) => return trace.fail(cfg, "partition", e.to_string(), Value::Null),
    };
    let check = verify_partition(&blue_j, &cover, ell);
    if let Some(v) = check.violation {
        return trace.fail(cfg, "partition", "cover failed verification".into(), to_value(&v));
    }
    let class_sizes: Vec<usize> = cover.red_classes.iter().map(Vec::len).collect();
    trace.push(
        "partition",
        StageStatus::Ok,
        json!({
            "ell": ell,
            "blue_path_lengths": cover.blue_paths.iter().map(|p| p.len()).collect::<Vec<_>>(),
            "class_sizes": class_sizes,
        }),
    );

    // Long path in G[V(J')] visiting the classes cyclically.
    let j_prime: Vec<Vertex> = cover.red_classes.iter().flatten().copied().collect();
    let mut local = vec![usize::MAX; j.n()];
    for (i, &v) in j_prime.iter().enumerate() {
        local[v] = i;
    }
    let g_prime = gw.induced(&j_prime);
    let parts: Vec<Vec<Vertex>> = cover.red_classes.iter().map(|c| c.iter().map(|&v| local[v]).collect()).collect();
    let long_cfg = LongPathConfig { step_budget: cfg.budgets.long_path_steps, ..LongPathConfig::default() };
    let target_len = cfg.segments * t;
    let path = match long_path_through_sets(&g_prime, &parts, target_len, &long_cfg) {
        Ok(mut p) => {
            p.vertices.iter_mut().for_each(|v| *v = j_prime[*v]);
            p
        }
        Err(LongPathError::NoPathFound { steps, longest, .. }) => {
            let reason = format!("no path on {target_len} vertices through the classes; longest has {}", longest.len());
            return trace.fail(cfg, "long path", reason, json!({"steps": steps, "longest": longest.len()}));
        }
        Err(e) => return trace.fail(cfg, "long path", e.to_string(), Value::Null),
    };
    if let Err(e) = path.validate(&gw, Some(t)) {
        return trace.fail(cfg, "long path", e.to_string(), Value::Null);
    }
    let mut class_of = vec![usize::MAX; j.n()];
    for (c, class) in cover.red_classes.iter().enumerate() {
        for &v in class {
            class_of[v] = c;
        }
    }
    if let Some(i) = path.vertices.iter().enumerate().position(|(i, &v)| class_of[v] != i % t) {
        return trace.fail(cfg, "long path", format!("position {i} is outside class {}", i % t), Value::Null);
    }
    trace.push("long path", StageStatus::Ok, json!({"length": path.len(), "vertices": path.vertices}));

    let segments = match segment_path(&path, t) {
        Ok(s) => s,
        Err(e) => return trace.fail(cfg, "segments", e.to_string(), Value::Null),
    };
    trace.push("segments", StageStatus::Ok, json!({"count": segments.len(), "size": t}));

    let (h_prime, max_between) = match (auxiliary_graph(&gw, &segments), max_edges_between_segments(&gw, &segments)) {
        (Ok(h), Ok(m)) => (h, m),
        (Err(e), _) | (_, Err(e)) => return trace.fail(cfg, "auxiliary graph", e.to_string(), Value::Null),
    };
    trace.push(
        "auxiliary graph",
        StageStatus::Ok,
        json!({
            "vertices": h_prime.n(),
            "edges": h_prime.m(),
            "max_degree": h_prime.max_degree(),
            "max_edges_between_segments": max_between,
        }),
    );

    let sparse = match sparsify(&h_prime, &cfg.sparsify_p, stage_seed(cfg.seed, 2)) {
        Ok(h) => h,
        Err(e) => return trace.fail(cfg, "sparsify", e.to_string(), Value::Null),
    };
    let (h, kept) = prune_top(&sparse, cfg.prune());
    let kept_segments: Vec<Segment> =
        kept.iter().enumerate().map(|(index, &i)| Segment { index, vertices: segments[i].vertices.clone() }).collect();
    trace.push(
        "sparsify",
        StageStatus::Ok,
        json!({
            "p": cfg.sparsify_p,
            "edges_after_sparsify": sparse.m(),
            "removed": cfg.prune(),
            "h_vertices": h.n(),
            "h_edges": h.m(),
            "h_max_degree": h.max_degree(),
            "kept_segments": kept,
        }),
    );

    let identity: Vec<Vertex> = (0..j.n()).collect();
    let layout = BaseLayout { graph: &gw, vertex_of: &identity, big_r };
    let template = check_template_containment(&h, r, t, &kept_segments, &j, &aux, Some(layout));
    let template_details = json!({
        "pattern_vertices": template.pattern.n(),
        "pattern_edges": template.pattern.m(),
        "segment_pairs_checked": template.segment_pairs_checked,
        "distance_checks": template.distance_checks,
        "blue_pairs_dropped": template.blue_pairs.len(),
        "uncertified_pairs": template.uncertified_pairs.len(),
        "violation": template.violation,
    });
    let Some(to_j) = template.embedding.clone().filter(|_| template.ok) else {
        return trace.fail(cfg, "template", "grey template not contained in J".into(), template_details);
    };
    trace.push("template", StageStatus::Ok, template_details);

    let pattern = template.pattern;
    let cliques: Vec<Vec<Vertex>> = to_j.map.iter().map(|&u| subcliques[u].clone()).collect();
    let inst = match LllInstance::from_colouring(pattern.clone(), cliques, host, chi, blue) {
        Ok(i) => i,
        Err(e) => return trace.fail(cfg, "lll", e.to_string(), Value::Null),
    };
    let summary = inst.summary();
    let budget = cfg.budgets.lll_resamples_per_edge * (pattern.m().max(1) as u64);
    match lll_embed(&inst, stage_seed(cfg.seed, 3), budget) {
        Ok(out) => {
            let allowed: Vec<u8> = (0..s as u8).filter(|&c| c != blue).collect();
            let check = validate_embedding(&pattern, host, &out.embedding, Some((chi, &allowed)));
            if let Some(v) = check.violation {
                return trace.fail(cfg, "lll", "embedding failed validation".into(), to_value(&v));
            }
            trace.push(
                "lll",
                StageStatus::Ok,
                json!({"summary": summary, "resamples": out.resamples, "budget": budget}),
            );
            finish(
                cfg,
                trace,
                StepOutcome::ReducedColours {
                    eliminated_colour: blue,
                    allowed_colours: allowed,
                    r,
                    t,
                    h_vertices: h.n(),
                    h_edges: h.edges().collect(),
                    template: out.embedding,
                },
            )
        }
        Err(LllError::Exhausted { resamples, per_event_resamples, violated }) => {
            let details = json!({
                "summary": summary,
                "resamples": resamples,
                "per_event_resamples": per_event_resamples,
                "violated": violated,
            });
            trace.fail(cfg, "lll", format!("resampling budget {budget} exhausted"), details)
        }
        Err(e) => trace.fail(cfg, "lll", e.to_string(), Value::Null),
    }
}

/// With one colour every copy is monochromatic: embed `P_n^k` greedily
/// along a path of `G`.
fn single_colour(g: &Graph, host: &Graph, map: &BlowupMap, cfg: &StepConfig, mut trace: Trace) -> StepReport {
    let all: Vec<Vertex> = (0..g.n()).collect();
    let path_cfg = LongPathConfig { step_budget: cfg.budgets.long_path_steps, ..LongPathConfig::default() };
    let path = match long_path_through_sets(g, std::slice::from_ref(&all), cfg.n, &path_cfg) {
        Ok(p) => p,
        Err(LongPathError::NoPathFound { longest, .. }) => {
            let reason = format!("G has no path on {} vertices found; longest {}", cfg.n, longest.len());
            return trace.fail(cfg, "base case", reason, Value::Null);
        }
        Err(e) => return trace.fail(cfg, "base case", e.to_string(), Value::Null),
    };
    match embed_base_case(g, cfg.k, &path, host, map) {
        Ok(out) => {
            trace.push("base case", StageStatus::Ok, json!({"path": path.vertices, "rejected": out.rejected}));
            finish(cfg, trace, StepOutcome::MonoPowerFound { colour: 0, k: cfg.k, n: cfg.n, embedding: out.embedding })
        }
        Err(e) => trace.fail(cfg, "base case", e.to_string(), Value::Null),
    }
}

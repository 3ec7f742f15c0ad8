use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use pathramsey_core::class_p::{
    generate_class_p, verify_class_p, ClassPConfig, GenerateError, GoodQuadruple, VerifyMode,
};
use pathramsey_core::colouring::{arrow_check, build_aux_colouring, ArrowMode, ArrowOptions, DEFAULT_ARROW_BUDGET};
use pathramsey_core::embed::{
    base_case_host, constants_chain, embed_base_case, lll_embed as run_lll, validate_embedding, LllError, LllInstance,
};
use pathramsey_core::graph::{complete_blowup, path_power, power as graph_power, sheared_blowup, MatchingRule};
use pathramsey_core::partition::{
    auxiliary_graph, long_path_through_sets, max_edges_between_segments, partition_two_coloured, prune_top,
    segment_path, sparsify, verify_partition, LongPathConfig, LongPathError, PartitionError, PartitionMode,
};
use pathramsey_core::pipeline::{
    base_case_driver, build_input, edge_budget as count_edges, edge_budget_sweep, run_step, select_blue,
    BaseCaseDriverError, ColouringSpec, StepConfig, StepOutcome, StepReport,
};
use pathramsey_core::{Graph, PathWitness, Rational, Vertex};

use crate::input::{emit_graph, emit_json, emit_text, merge_args, parse_json, read_graph, read_json, require};

/// Exit status of a command that ran to completion.
pub enum Verdict {
    Positive,
    /// An honest negative answer, such as a counterexample colouring.
    Negative,
}

pub struct Context {
    pub seed: Option<u64>,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Context {
    fn out(&self) -> Option<&PathBuf> {
        self.out.as_ref()
    }

    fn config_path(&self) -> Result<&PathBuf> {
        self.config.as_ref().ok_or_else(|| anyhow!("this command needs --config"))
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Positive
    } else {
        Verdict::Negative
    }
}

/// Reads a snake_case enum name, such as a partition mode.
fn parse_name<T: DeserializeOwned>(name: &str, what: &str) -> Result<T> {
    serde_json::from_value(json!(name)).map_err(|e| anyhow!("{what}: {e}"))
}

fn edges_json(g: &Graph) -> serde_json::Value {
    json!({"n": g.n(), "edges": g.edges().collect::<Vec<_>>()})
}

fn class_p_config(ctx: &Context) -> Result<ClassPConfig> {
    let mut cfg: ClassPConfig = read_json(ctx.config_path()?)?;
    if let Some(seed) = ctx.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Also write the generation log and density certificate as JSON.
    #[arg(long, value_name = "FILE")]
    log: Option<PathBuf>,
}

pub fn gen(ctx: &Context, args: GenArgs) -> Result<Verdict> {
    let cfg = class_p_config(ctx)?;
    match generate_class_p(&cfg.params(), &cfg.generation()) {
        Ok((g, cert, log)) => {
            emit_graph(ctx.out(), &g)?;
            if let Some(path) = &args.log {
                emit_json(Some(path), &json!({"certificate": cert, "log": log}))?;
            }
            Ok(Verdict::Positive)
        }
        Err(e @ GenerateError::CertificationFailure { .. }) => {
            eprintln!("{e}");
            Ok(Verdict::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Edge list to check.
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Visit every disjoint pair instead of sampling beyond the budget.
    #[arg(long)]
    exhaustive: bool,
}

pub fn verify_p(ctx: &Context, args: VerifyArgs) -> Result<Verdict> {
    let cfg = class_p_config(ctx)?;
    let g = read_graph(&args.graph)?;
    let mode = if args.exhaustive {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Auto { samples: cfg.samples, seed: cfg.seed }
    };
    let report = verify_class_p(&g, &cfg.params(), mode)?;
    emit_json(ctx.out(), &report)?;
    Ok(verdict(report.passed))
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerArgs {
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Power exponent.
    #[arg(long)]
    k: Option<usize>,
}

pub fn power(ctx: &Context, args: PowerArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let g = read_graph(&require(&a.graph, "graph")?)?;
    emit_graph(ctx.out(), &graph_power(&g, require(&a.k, "k")?))?;
    Ok(Verdict::Positive)
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupArgs {
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Copies of each vertex.
    #[arg(long)]
    t: Option<usize>,
    /// Remove a perfect matching between adjacent cliques; seeded when
    /// `--seed` is given, aligned otherwise.
    #[arg(long)]
    #[serde(default)]
    sheared: bool,
}

pub fn blowup(ctx: &Context, args: BlowupArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let g = read_graph(&require(&a.graph, "graph")?)?;
    let t = require(&a.t, "t")?;
    let (host, _) = if a.sheared {
        let rule = ctx.seed.map_or(MatchingRule::Aligned, MatchingRule::Seeded);
        sheared_blowup(&g, t, rule)
    } else {
        complete_blowup(&g, t)
    };
    emit_graph(ctx.out(), &host)?;
    Ok(Verdict::Positive)
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionArgs {
    /// Blue edges; every other pair is red.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Number of blue paths.
    #[arg(long)]
    ell: Option<usize>,
    /// `exhaustive`, `heuristic` or `auto`.
    #[arg(long)]
    mode: Option<String>,
}

pub fn partition(ctx: &Context, args: PartitionArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let blue = read_graph(&require(&a.graph, "graph")?)?;
    let ell = require(&a.ell, "ell")?;
    let mode: PartitionMode = parse_name(a.mode.as_deref().unwrap_or("auto"), "mode")?;
    match partition_two_coloured(&blue, ell, mode) {
        Ok(result) => {
            let report = verify_partition(&blue, &result, ell);
            emit_json(ctx.out(), &json!({"result": result, "report": report}))?;
            Ok(verdict(report.valid))
        }
        Err(e @ PartitionError::NoCoverFound { .. }) => {
            emit_json(ctx.out(), &json!({"result": null, "reason": e.to_string()}))?;
            Ok(Verdict::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LongPathArgs {
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// JSON list of vertex lists; one part holding every vertex when absent.
    #[arg(long, value_name = "FILE")]
    parts: Option<PathBuf>,
    /// Vertices on the sought path.
    #[arg(long)]
    target: Option<usize>,
    /// Search nodes expanded before giving up.
    #[arg(long)]
    budget: Option<u64>,
}

pub fn longpath(ctx: &Context, args: LongPathArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let g = read_graph(&require(&a.graph, "graph")?)?;
    let parts: Vec<Vec<Vertex>> = match &a.parts {
        Some(p) => read_json(p)?,
        None => vec![(0..g.n()).collect()],
    };
    let mut cfg = LongPathConfig::default();
    if let Some(b) = a.budget {
        cfg.step_budget = b;
    }
    match long_path_through_sets(&g, &parts, require(&a.target, "target")?, &cfg) {
        Ok(path) => {
            emit_json(ctx.out(), &path)?;
            Ok(Verdict::Positive)
        }
        Err(LongPathError::NoPathFound { target, steps, longest }) => {
            emit_json(ctx.out(), &json!({"found": false, "target": target, "steps": steps, "longest": longest}))?;
            Ok(Verdict::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentsArgs {
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Path witness JSON, as written by `longpath`.
    #[arg(long, value_name = "FILE")]
    path: Option<PathBuf>,
    /// Segment size.
    #[arg(long)]
    t: Option<usize>,
    /// Edge retention probability for sparsifying.
    #[arg(long)]
    p: Option<Rational>,
    /// Highest-degree segments removed after sparsifying.
    #[arg(long)]
    prune: Option<usize>,
}

pub fn segments(ctx: &Context, args: SegmentsArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let g = read_graph(&require(&a.graph, "graph")?)?;
    let path: PathWitness = read_json(&require(&a.path, "path")?)?;
    path.validate(&g, None)?;
    let segments = segment_path(&path, require(&a.t, "t")?)?;
    let h = auxiliary_graph(&g, &segments)?;
    let sparse = sparsify(&h, &a.p.clone().unwrap_or_else(Rational::one), ctx.seed.unwrap_or(0))?;
    let (pruned, kept) = prune_top(&sparse, a.prune.unwrap_or(0));
    emit_json(
        ctx.out(),
        &json!({
            "segments": segments,
            "max_edges_between_segments": max_edges_between_segments(&g, &segments)?,
            "auxiliary": edges_json(&h),
            "sparsified": edges_json(&sparse),
            "pruned": edges_json(&pruned),
            "kept": kept,
        }),
    )?;
    Ok(Verdict::Positive)
}

fn step_config(ctx: &Context, preset: Option<&str>) -> Result<StepConfig> {
    let mut cfg = match (preset, &ctx.config) {
        (Some(_), Some(_)) => bail!("give either --preset or --config"),
        (Some(name), None) => {
            let seed = ctx.seed.unwrap_or(0);
            let colouring = match name {
                "toy-mono" => ColouringSpec::Monochromatic { colour: 1 },
                "toy-random" => ColouringSpec::Random { seed },
                "toy-adversarial" => ColouringSpec::Adversarial { seed },
                other => bail!("unknown preset `{other}`; expected toy-mono, toy-random or toy-adversarial"),
            };
            StepConfig::toy(colouring, seed)
        }
        (None, Some(path)) => read_json(path)?,
        (None, None) => bail!("this command needs --config or --preset"),
    };
    if let Some(seed) = ctx.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Args, Debug)]
pub struct AuxArgs {
    /// `toy-mono`, `toy-random` or `toy-adversarial` instead of `--config`.
    #[arg(long)]
    preset: Option<String>,
}

pub fn aux_colour(ctx: &Context, args: AuxArgs) -> Result<Verdict> {
    let cfg = step_config(ctx, args.preset.as_deref())?;
    let input = build_input(&cfg)?;
    let sel = select_blue(&input.g, &input.host, &input.map, &input.chi, cfg.s, cfg.subclique_size);
    let j = graph_power(&input.g.induced(&sel.w), cfg.big_r());
    let aux = build_aux_colouring(&j, &sel.subcliques, &input.host, &input.chi, cfg.k, sel.blue)?;
    aux.validate(&j, &sel.subcliques, &input.host, &input.chi)?;
    emit_json(
        ctx.out(),
        &json!({
            "blue": sel.blue,
            "colour_counts": sel.counts,
            "w": sel.w,
            "subcliques": sel.subcliques,
            "j": edges_json(&j),
            "blue_edges": aux.blue_count(),
            "aux": aux,
        }),
    )?;
    Ok(Verdict::Positive)
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowArgs {
    /// Host edge list.
    #[arg(long, value_name = "FILE")]
    host: Option<PathBuf>,
    /// Pattern edge list.
    #[arg(long, value_name = "FILE")]
    pattern: Option<PathBuf>,
    /// Number of colours.
    #[arg(long)]
    colours: Option<usize>,
    /// Sample this many random colourings instead of enumerating.
    #[arg(long)]
    trials: Option<u64>,
    /// Largest number of colourings an exhaustive run may enumerate.
    #[arg(long)]
    budget: Option<u64>,
    /// First colouring index, for resuming a partial run.
    #[arg(long)]
    start: Option<u64>,
    /// One past the last colouring index.
    #[arg(long)]
    end: Option<u64>,
}

/// Exits 0 only when the arrow relation is proved.
pub fn arrow(ctx: &Context, args: ArrowArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let host = read_graph(&require(&a.host, "host")?)?;
    let pattern = read_graph(&require(&a.pattern, "pattern")?)?;
    let mode = match a.trials {
        Some(trials) => ArrowMode::Randomized { trials, seed: ctx.seed.unwrap_or(0) },
        None => ArrowMode::Exhaustive,
    };
    let opts =
        ArrowOptions { budget: a.budget.unwrap_or(DEFAULT_ARROW_BUDGET), start: a.start.unwrap_or(0), end: a.end };
    let v = arrow_check(&host, &pattern, require(&a.colours, "colours")?, mode, &opts)?;
    emit_json(ctx.out(), &v)?;
    Ok(verdict(v.arrows == Some(true)))
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedBaseArgs {
    /// Base graph; without it the base graph is generated from `class_p`.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Power of the path to embed.
    #[arg(long)]
    k: Option<usize>,
    /// Vertices of the path power.
    #[arg(long)]
    n: Option<usize>,
    /// Partition mode for the generated case.
    #[arg(long)]
    mode: Option<String>,
    /// Class parameters, from the config only.
    #[arg(skip)]
    #[serde(default)]
    class_p: Option<ClassPConfig>,
}

pub fn embed_base(ctx: &Context, args: EmbedBaseArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let k = require(&a.k, "k")?;
    let Some(path) = &a.graph else {
        let mut cfg = a.class_p.clone().ok_or_else(|| anyhow!("give --graph or a config with `class_p`"))?;
        if let Some(seed) = ctx.seed {
            cfg.seed = seed;
        }
        let mode: PartitionMode = parse_name(a.mode.as_deref().unwrap_or("auto"), "mode")?;
        return match base_case_driver(k, &cfg, mode) {
            Ok(run) => {
                emit_json(ctx.out(), &run)?;
                Ok(Verdict::Positive)
            }
            Err(e @ BaseCaseDriverError::PathShortfall { .. }) => {
                emit_json(ctx.out(), &json!({"embedding": null, "reason": e.to_string()}))?;
                Ok(Verdict::Negative)
            }
            Err(e) => Err(e.into()),
        };
    };
    let g = read_graph(path)?;
    let n = require(&a.n, "n")?;
    let all: Vec<Vertex> = (0..g.n()).collect();
    let witness = match long_path_through_sets(&g, &[all], n, &LongPathConfig::default()) {
        Ok(p) => p,
        Err(LongPathError::NoPathFound { longest, .. }) => {
            let reason = format!("no path on {n} vertices found; longest has {}", longest.len());
            emit_json(ctx.out(), &json!({"embedding": null, "reason": reason}))?;
            return Ok(Verdict::Negative);
        }
        Err(e) => return Err(e.into()),
    };
    let witness = PathWitness::new(witness.vertices);
    let (host, map) = base_case_host(&g, k, ctx.seed.map_or(MatchingRule::Aligned, MatchingRule::Seeded));
    let out = embed_base_case(&g, k, &witness, &host, &map)?;
    let report = validate_embedding(&path_power(n, k), &host, &out.embedding, None);
    emit_json(
        ctx.out(),
        &json!({
            "path": witness.vertices,
            "host_vertices": host.n(),
            "host_edges": host.m(),
            "rejected": out.rejected,
            "valid": report.valid,
            "embedding": out.embedding,
        }),
    )?;
    Ok(verdict(report.valid))
}

/// A template with candidate host sets and, per template edge in
/// canonical order, the forbidden host pairs.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LllFile {
    template: GraphJson,
    cliques: Vec<Vec<Vertex>>,
    bad_pairs: Vec<Vec<(Vertex, Vertex)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LllArgs {
    /// Instance JSON: `{template: {n, edges}, cliques, bad_pairs}`.
    #[arg(long, value_name = "FILE")]
    instance: Option<PathBuf>,
    /// Resampling cap; 100 per template edge by default.
    #[arg(long)]
    max_resamples: Option<u64>,
}

pub fn lll_embed(ctx: &Context, args: LllArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let file: LllFile = read_json(&require(&a.instance, "instance")?)?;
    let template = Graph::from_edges(file.template.n, file.template.edges).context("template")?;
    let budget = a.max_resamples.unwrap_or(100 * template.m().max(1) as u64);
    let inst = LllInstance::new(template, file.cliques, &file.bad_pairs)?;
    let summary = inst.summary();
    match run_lll(&inst, ctx.seed.unwrap_or(0), budget) {
        Ok(out) => {
            emit_json(ctx.out(), &json!({"summary": summary, "outcome": out}))?;
            Ok(Verdict::Positive)
        }
        Err(LllError::Exhausted { resamples, per_event_resamples, violated }) => {
            emit_json(
                ctx.out(),
                &json!({
                    "summary": summary,
                    "outcome": null,
                    "resamples": resamples,
                    "per_event_resamples": per_event_resamples,
                    "violated": violated,
                }),
            )?;
            Ok(Verdict::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsArgs {
    /// Power of the path.
    #[arg(long)]
    k: Option<u64>,
    /// Number of colours.
    #[arg(long)]
    s: Option<u64>,
    /// Power of the base graph.
    #[arg(long)]
    r: Option<u64>,
    /// Blow-up factor.
    #[arg(long)]
    t: Option<u64>,
    /// `a,b,c,eps`; each a fraction or decimal.
    #[arg(long)]
    quad: Option<String>,
    /// Size floor of the long-path lemma.
    #[arg(long)]
    d0: Option<Rational>,
}

fn parse_quad(text: &str) -> Result<GoodQuadruple> {
    let parts: Vec<&str> = text.split(',').collect();
    let [a, b, c, eps] = parts.as_slice() else {
        bail!("quad: expected `a,b,c,eps`, got `{text}`");
    };
    let p = |s: &str| s.parse::<Rational>().map_err(|e| anyhow!("quad: {e}"));
    Ok(GoodQuadruple::new(p(a)?, p(b)?, p(c)?, p(eps)?))
}

pub fn constants(ctx: &Context, args: ConstantsArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let quad = parse_quad(&require(&a.quad, "quad")?)?;
    let chain = constants_chain(
        require(&a.k, "k")?,
        require(&a.s, "s")?,
        require(&a.r, "r")?,
        require(&a.t, "t")?,
        &quad,
        &a.d0.clone().unwrap_or_else(Rational::one),
    )?;
    emit_json(ctx.out(), &chain)?;
    Ok(Verdict::Positive)
}

#[derive(Args, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetArgs {
    /// Base graph; without it `class_p` is generated at each of `ns`.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Power of the base graph.
    #[arg(long)]
    r: Option<usize>,
    /// Blow-up factor.
    #[arg(long)]
    t: Option<usize>,
    /// Values of n for the sweep, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    ns: Vec<u64>,
    /// Class parameters, from the config only.
    #[arg(skip)]
    #[serde(default)]
    class_p: Option<ClassPConfig>,
}

pub fn edge_budget(ctx: &Context, args: BudgetArgs) -> Result<Verdict> {
    let a = merge_args(&args, ctx.config.as_deref())?;
    let (r, t) = (require(&a.r, "r")?, require(&a.t, "t")?);
    if let Some(path) = &a.graph {
        let b = count_edges(&read_graph(path)?, r, t);
        let ok = b.enumerated.is_none_or(|e| e == b.formula);
        emit_json(ctx.out(), &b)?;
        return Ok(verdict(ok));
    }
    let mut cfg = a.class_p.clone().ok_or_else(|| anyhow!("give --graph or a config with `class_p`"))?;
    if let Some(seed) = ctx.seed {
        cfg.seed = seed;
    }
    if a.ns.is_empty() {
        bail!("missing `ns` (flag or config field)");
    }
    let sweep = edge_budget_sweep(&cfg, r, t, &a.ns)?;
    emit_json(ctx.out(), &sweep)?;
    Ok(verdict(sweep.within_cap))
}

#[derive(Args, Debug)]
pub struct StepArgs {
    /// `toy-mono`, `toy-random` or `toy-adversarial` instead of `--config`.
    #[arg(long)]
    preset: Option<String>,
}

pub fn step(ctx: &Context, args: StepArgs) -> Result<Verdict> {
    let cfg = step_config(ctx, args.preset.as_deref())?;
    let report = run_step(&cfg)?;
    emit_json(ctx.out(), &report)?;
    Ok(verdict(!matches!(report.outcome, StepOutcome::HonestFailure { .. })))
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Report JSON written by `step`.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Re-run the step from the embedded config and compare.
    #[arg(long)]
    replay: bool,
}

pub fn report(ctx: &Context, args: ReportArgs) -> Result<Verdict> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("cannot read {}", args.input.display()))?;
    let report: StepReport = parse_json(&text, &args.input.display().to_string())?;
    let mut s = String::new();
    let c = &report.config;
    writeln!(s, "schema version {}", report.schema_version)?;
    writeln!(
        s,
        "k={} s={} r={} t={} n={} T={} R={} seed={}",
        c.k,
        c.s,
        c.r,
        c.t,
        c.n,
        c.clique_size,
        c.big_r(),
        c.seed
    )?;
    for (i, stage) in report.trace.iter().enumerate() {
        let status = serde_json::to_value(stage.status)?;
        writeln!(s, "{:>2}. {:<16} {}", i + 1, stage.stage, status.as_str().unwrap_or("?"))?;
    }
    match &report.outcome {
        StepOutcome::MonoPowerFound { colour, k, n, .. } => {
            writeln!(s, "outcome: monoPowerFound, P_{n}^{k} in colour {colour}")?
        }
        StepOutcome::ReducedColours { eliminated_colour, allowed_colours, h_vertices, h_edges, .. } => writeln!(
            s,
            "outcome: reducedColours, h has {h_vertices} vertices and {} edges, colour {eliminated_colour} eliminated, \
             {allowed_colours:?} remain",
            h_edges.len()
        )?,
        StepOutcome::HonestFailure { stage, reason } => writeln!(s, "outcome: honestFailure at {stage}: {reason}")?,
    }
    let mut ok = true;
    if args.replay {
        let again = run_step(&report.config)?;
        let same = serde_json::to_value(&again)? == serde_json::from_str::<serde_json::Value>(&text)?;
        writeln!(s, "replay: {}", if same { "identical" } else { "differs" })?;
        ok = same;
    }
    emit_text(ctx.out(), &s)?;
    Ok(verdict(ok))
}

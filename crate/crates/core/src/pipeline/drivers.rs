use serde::Serialize;

use crate::class_p::{generate_class_p, ClassPConfig, GenerateError};
use crate::embed::{base_case_host, embed_base_case, BaseCaseError, Embedding};
use crate::graph::{power, sheared_blowup, Graph, MatchingRule};
use crate::partition::{partition_two_coloured, PartitionError, PartitionMode};
use crate::rational::Rational;

/// Hosts up to this many edges are also built and counted directly.
pub const ENUMERATION_MAX_EDGES: u128 = 2_000_000;

#[derive(Debug, thiserror::Error)]
pub enum BaseCaseDriverError {
    #[error("k must be positive")]
    ZeroK,
    #[error("a = {a} is below 2c + 1 = {bound}")]
    NotGood { a: Rational, bound: Rational },
    #[error("base graph generation failed: {0}")]
    Generate(#[from] GenerateError),
    #[error("partition failed: {0}")]
    Partition(#[from] PartitionError),
    #[error("the partition path has {achieved} vertices, need {needed}")]
    PathShortfall { achieved: usize, needed: usize },
    #[error("embedding failed: {0}")]
    Embed(#[from] BaseCaseError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCaseRun {
    pub k: usize,
    pub n: usize,
    pub base_vertices: usize,
    pub base_edges: usize,
    pub partition_path_len: usize,
    /// Size of each of the two classes with no edge between them.
    pub class_size: usize,
    pub host_vertices: usize,
    pub host_edges: usize,
    pub rejected: Vec<usize>,
    pub embedding: Embedding,
}

/// Builds `G` from `cfg`, splits it into a path and two classes with no
/// edge between them, and embeds `P_n^k` into `G^k{k+1}` along the first
/// `n` vertices of the path. Only `a >= 2c + 1` is required up front; the
/// path length is checked as it comes.
pub fn base_case_driver(k: usize, cfg: &ClassPConfig, mode: PartitionMode) -> Result<BaseCaseRun, BaseCaseDriverError> {
    if k == 0 {
        return Err(BaseCaseDriverError::ZeroK);
    }
    let bound = Rational::from(2u64) * cfg.c.clone() + Rational::one();
    if cfg.a < bound {
        return Err(BaseCaseDriverError::NotGood { a: cfg.a.clone(), bound });
    }
    let params = cfg.params();
    let (g, _, _) = generate_class_p(&params, &cfg.generation())?;
    let cover = partition_two_coloured(&g, 1, mode)?;
    let path = cover.blue_paths.first().cloned().unwrap_or_default();
    let needed = params.n as usize;
    if path.len() < needed {
        return Err(BaseCaseDriverError::PathShortfall { achieved: path.len(), needed });
    }
    let mut prefix = path.clone();
    prefix.vertices.truncate(needed);
    prefix.class_trace = None;
    let (host, map) = base_case_host(&g, k, MatchingRule::Seeded(cfg.seed));
    let out = embed_base_case(&g, k, &prefix, &host, &map)?;
    Ok(BaseCaseRun {
        k,
        n: needed,
        base_vertices: g.n(),
        base_edges: g.m(),
        partition_path_len: path.len(),
        class_size: cover.red_classes.first().map_or(0, Vec::len),
        host_vertices: host.n(),
        host_edges: host.m(),
        rejected: out.rejected,
        embedding: out.embedding,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBudget {
    pub base_vertices: usize,
    pub r: usize,
    pub t: usize,
    pub power_edges: usize,
    pub cross_edges: u128,
    pub clique_edges: u128,
    /// `|E(G^r)| (t^2 - t) + |V(G)| C(t, 2)`.
    pub formula: u128,
    /// Edge count of the host actually built, when small enough.
    pub enumerated: Option<u128>,
    pub per_base_vertex: Rational,
}

/// Exact edge count of `G^r{t}`.
pub fn edge_budget(base: &Graph, r: usize, t: usize) -> EdgeBudget {
    let hr = power(base, r);
    let tt = t as u128;
    let cross_edges = hr.m() as u128 * (tt * tt - tt);
    let clique_edges = base.n() as u128 * (tt * tt.saturating_sub(1) / 2);
    let formula = cross_edges + clique_edges;
    let enumerated = (formula <= ENUMERATION_MAX_EDGES).then(|| {
        let (host, _) = sheared_blowup(&hr, t, MatchingRule::Aligned);
        host.m() as u128
    });
    let per_base_vertex =
        if base.n() == 0 { Rational::zero() } else { Rational::from((formula as u64, base.n() as u64)) };
    EdgeBudget {
        base_vertices: base.n(),
        r,
        t,
        power_edges: hr.m(),
        cross_edges,
        clique_edges,
        formula,
        enumerated,
        per_base_vertex,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub max_degree: usize,
    pub budget: EdgeBudget,
    /// `|E(G^r{t})| / n`.
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBudgetSweep {
    pub rows: Vec<SweepRow>,
    pub max_ratio: Rational,
    /// `a b^r t^2`: the ratio cap implied by `Δ(G) <= b`.
    pub degree_cap: Rational,
    pub within_cap: bool,
}

/// Generates a base graph for each `n` with the other parameters of `cfg`
/// fixed, and reports `|E(G^r{t})| / n`.
pub fn edge_budget_sweep(cfg: &ClassPConfig, r: usize, t: usize, ns: &[u64]) -> Result<EdgeBudgetSweep, GenerateError> {
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let c = ClassPConfig { n, ..cfg.clone() };
        let (g, _, _) = generate_class_p(&c.params(), &c.generation())?;
        let budget = edge_budget(&g, r, t);
        let ratio = Rational::from((budget.formula as u64, n));
        rows.push(SweepRow { n, max_degree: g.max_degree(), budget, ratio });
    }
    let max_ratio = rows.iter().map(|row| row.ratio.clone()).max().unwrap_or_else(Rational::zero);
    let b = Rational::from(cfg.params().degree_bound());
    let degree_cap = cfg.a.clone() * b.pow(r as i32) * Rational::from((t * t) as u64);
    let within_cap = max_ratio <= degree_cap;
    Ok(EdgeBudgetSweep { rows, max_ratio, degree_cap, within_cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_p::GenerationMode;

    #[test]
    fn single_edge_two_copies() {
        let b = edge_budget(&Graph::path(2), 1, 2);
        assert_eq!((b.cross_edges, b.clique_edges, b.formula), (2, 2, 4));
        assert_eq!(b.enumerated, Some(4));
    }

    #[test]
    fn t_one_has_no_edges() {
        let b = edge_budget(&Graph::cycle(7), 2, 1);
        assert_eq!(b.formula, 0);
        assert_eq!(b.enumerated, Some(0));
    }

    #[test]
    fn formula_matches_enumeration() {
        for (g, r, t) in [(Graph::cycle(9), 2, 3), (Graph::complete_bipartite(3, 4), 1, 4), (Graph::path(6), 3, 2)] {
            let b = edge_budget(&g, r, t);
            assert_eq!(Some(b.formula), b.enumerated);
        }
    }

    fn toy(n: u64) -> ClassPConfig {
        ClassPConfig {
            a: Rational::from(3u64),
            b: Rational::from(8u64),
            c: Rational::new(1, 4),
            eps: Rational::new(1, 2),
            t: 2,
            n,
            p: Some(Rational::new(3, 20)),
            seed: 5,
            mode: GenerationMode::Toy,
            samples: 500,
        }
    }

    #[test]
    fn rejects_small_a() {
        let mut cfg = toy(8);
        cfg.a = Rational::new(5, 4);
        assert!(matches!(base_case_driver(1, &cfg, PartitionMode::Auto), Err(BaseCaseDriverError::NotGood { .. })));
    }
}

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Embedding;
use crate::colouring::EdgeColouring;
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;

/// Variables `x_u ∈ B(u)` for the template vertices and one bad event per
/// template edge: the chosen pair is blue or not a host edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllInstance {
    template: Graph,
    cliques: Vec<Vec<Vertex>>,
    /// Per template edge `(u, v)`, `u < v`: row-major `|B(u)| x |B(v)|` flags.
    bad: Vec<Vec<bool>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LllError {
    #[error("{got} candidate sets for {expected} template vertices")]
    CliqueCount { got: usize, expected: usize },
    #[error("candidate set of template vertex {0} is empty")]
    EmptyClique(Vertex),
    #[error("bad pair ({x}, {y}) of template edge {edge} lies outside the candidate sets")]
    PairOutside { edge: usize, x: Vertex, y: Vertex },
    #[error("{got} bad-pair lists for {expected} template edges")]
    EventCount { got: usize, expected: usize },
    #[error("resample budget must be positive")]
    ZeroBudget,
    #[error("gave up after {resamples} resamples with events {violated:?} still violated")]
    Exhausted { resamples: u64, per_event_resamples: Vec<u64>, violated: Vec<usize> },
    #[error("output failed validation: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LllOutcome {
    /// Template vertex to host vertex.
    pub embedding: Embedding,
    pub resamples: u64,
    pub per_event_resamples: Vec<u64>,
    pub condition_value: Rational,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LllSummary {
    pub template_vertices: usize,
    pub template_edges: usize,
    pub dependency_degree: usize,
    pub max_bad_fraction: Rational,
    pub condition_value: Rational,
    pub certified: bool,
}

impl LllInstance {
    /// Builds an instance from explicit bad pairs, given per template edge
    /// in canonical order as host pairs `(x, y)` with `x ∈ B(u)`, `y ∈ B(v)`.
    pub fn new(
        template: Graph,
        cliques: Vec<Vec<Vertex>>,
        bad_pairs: &[Vec<(Vertex, Vertex)>],
    ) -> Result<Self, LllError> {
        Self::check_shape(&template, &cliques)?;
        if bad_pairs.len() != template.m() {
            return Err(LllError::EventCount { got: bad_pairs.len(), expected: template.m() });
        }
        let mut bad = Vec::with_capacity(template.m());
        for (edge, ((u, v), pairs)) in template.edges().zip(bad_pairs).enumerate() {
            let (bu, bv) = (&cliques[u], &cliques[v]);
            let mut flags = vec![false; bu.len() * bv.len()];
            for &(x, y) in pairs {
                let (Some(i), Some(j)) = (bu.iter().position(|&a| a == x), bv.iter().position(|&b| b == y)) else {
                    return Err(LllError::PairOutside { edge, x, y });
                };
                flags[i * bv.len() + j] = true;
            }
            bad.push(flags);
        }
        Ok(LllInstance { template, cliques, bad })
    }

    /// Bad pairs are those coloured `blue` or missing from the host.
    pub fn from_colouring(
        template: Graph,
        cliques: Vec<Vec<Vertex>>,
        host: &Graph,
        chi: &EdgeColouring,
        blue: u8,
    ) -> Result<Self, LllError> {
        Self::check_shape(&template, &cliques)?;
        let bad = template
            .edges()
            .map(|(u, v)| {
                let (bu, bv) = (&cliques[u], &cliques[v]);
                bu.iter()
                    .flat_map(|&x| bv.iter().map(move |&y| (x, y)))
                    .map(|(x, y)| chi.colour(host, x, y).is_none_or(|c| c == blue))
                    .collect()
            })
            .collect();
        Ok(LllInstance { template, cliques, bad })
    }

    fn check_shape(template: &Graph, cliques: &[Vec<Vertex>]) -> Result<(), LllError> {
        if cliques.len() != template.n() {
            return Err(LllError::CliqueCount { got: cliques.len(), expected: template.n() });
        }
        if let Some(u) = cliques.iter().position(Vec::is_empty) {
            return Err(LllError::EmptyClique(u));
        }
        Ok(())
    }

    pub fn template(&self) -> &Graph {
        &self.template
    }

    pub fn cliques(&self) -> &[Vec<Vertex>] {
        &self.cliques
    }

    pub fn bad_count(&self, edge: usize) -> usize {
        self.bad[edge].iter().filter(|&&b| b).count()
    }

    /// Most events sharing a variable with a single event.
    pub fn dependency_degree(&self) -> usize {
        self.template.edges().map(|(u, v)| self.template.degree(u) + self.template.degree(v) - 2).max().unwrap_or(0)
    }

    pub fn max_bad_fraction(&self) -> Rational {
        self.template
            .edges()
            .enumerate()
            .map(|(e, (u, v))| {
                Rational::from((self.bad_count(e) as u64, (self.cliques[u].len() * self.cliques[v].len()) as u64))
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// `4 Δ max_e P[A_e]` from the actual bad-pair counts.
    pub fn condition_value(&self) -> Rational {
        Rational::from(4 * self.dependency_degree() as u64) * self.max_bad_fraction()
    }

    pub fn summary(&self) -> LllSummary {
        let condition_value = self.condition_value();
        LllSummary {
            template_vertices: self.template.n(),
            template_edges: self.template.m(),
            dependency_degree: self.dependency_degree(),
            max_bad_fraction: self.max_bad_fraction(),
            certified: condition_value <= Rational::one(),
            condition_value,
        }
    }

    fn violated(&self, edge: usize, (u, v): (Vertex, Vertex), pos: &[usize]) -> bool {
        self.bad[edge][pos[u] * self.cliques[v].len() + pos[v]]
    }

    /// Re-checks an assignment from scratch: one vertex of `B(u)` per
    /// template vertex, all distinct, and no template edge on a bad pair.
    pub fn validate(&self, e: &Embedding) -> Result<(), String> {
        if e.map.len() != self.template.n() {
            return Err(format!("{} values for {} variables", e.map.len(), self.template.n()));
        }
        let mut seen = HashSet::new();
        let mut pos = Vec::with_capacity(e.map.len());
        for (u, &x) in e.map.iter().enumerate() {
            let Some(p) = self.cliques[u].iter().position(|&c| c == x) else {
                return Err(format!("value {x} of {u} is outside its candidate set"));
            };
            if !seen.insert(x) {
                return Err(format!("host vertex {x} used twice"));
            }
            pos.push(p);
        }
        for (edge, uv) in self.template.edges().enumerate() {
            if self.violated(edge, uv, &pos) {
                return Err(format!("template edge {uv:?} lands on a bad pair"));
            }
        }
        Ok(())
    }
}

/// Moser–Tardos: sample every `x_u` uniformly, then while some event holds
/// resample both variables of the lowest-indexed one. Variable `u` draws
/// from its own ChaCha8 stream, so runs replay exactly.
pub fn lll_embed(inst: &LllInstance, seed: u64, max_resamples: u64) -> Result<LllOutcome, LllError> {
    if max_resamples == 0 {
        return Err(LllError::ZeroBudget);
    }
    let n = inst.template.n();
    let mut rngs: Vec<ChaCha8Rng> = (0..n)
        .map(|u| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u as u64);
            rng
        })
        .collect();
    let mut pos: Vec<usize> = (0..n).map(|u| rngs[u].gen_range(0..inst.cliques[u].len())).collect();
    let edges: Vec<(Vertex, Vertex)> = inst.template.edges().collect();
    let mut per_event = vec![0u64; edges.len()];
    let mut resamples = 0u64;
    loop {
        let first = (0..edges.len()).find(|&e| inst.violated(e, edges[e], &pos));
        let Some(e) = first else { break };
        if resamples >= max_resamples {
            let violated = (0..edges.len()).filter(|&e| inst.violated(e, edges[e], &pos)).collect();
            return Err(LllError::Exhausted { resamples, per_event_resamples: per_event, violated });
        }
        let (u, v) = edges[e];
        pos[u] = rngs[u].gen_range(0..inst.cliques[u].len());
        pos[v] = rngs[v].gen_range(0..inst.cliques[v].len());
        per_event[e] += 1;
        resamples += 1;
    }
    let embedding = Embedding::new((0..n).map(|u| inst.cliques[u][pos[u]]).collect());
    inst.validate(&embedding).map_err(LllError::Invalid)?;
    let condition_value = inst.condition_value();
    Ok(LllOutcome {
        embedding,
        resamples,
        per_event_resamples: per_event,
        certified: condition_value <= Rational::one(),
        condition_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(n: usize, size: usize) -> Vec<Vec<Vertex>> {
        (0..n).map(|u| (u * size..(u + 1) * size).collect()).collect()
    }

    #[test]
    fn clean_instance_needs_no_resampling() {
        let template = Graph::cycle(5);
        let inst = LllInstance::new(template, blocks(5, 3), &vec![Vec::new(); 5]).unwrap();
        let out = lll_embed(&inst, 7, 10).unwrap();
        assert_eq!(out.resamples, 0);
        assert_eq!(out.condition_value, Rational::zero());
        assert!(out.certified);
    }

    #[test]
    fn one_bad_pair_in_sixteen() {
        let inst = LllInstance::new(Graph::path(2), blocks(2, 4), &[vec![(0, 4)]]).unwrap();
        assert_eq!(inst.max_bad_fraction(), Rational::new(1, 16));
        assert_eq!(inst.dependency_degree(), 0);
        for seed in 0..50 {
            let out = lll_embed(&inst, seed, 100).unwrap();
            assert_ne!(out.embedding.map, vec![0, 4]);
        }
    }

    #[test]
    fn all_bad_exhausts_with_counts() {
        let pairs: Vec<(Vertex, Vertex)> = (0..2).flat_map(|x| (2..4).map(move |y| (x, y))).collect();
        let inst = LllInstance::new(Graph::path(2), blocks(2, 2), &[pairs]).unwrap();
        match lll_embed(&inst, 1, 25) {
            Err(LllError::Exhausted { resamples, per_event_resamples, violated }) => {
                assert_eq!(resamples, 25);
                assert_eq!(per_event_resamples, vec![25]);
                assert_eq!(violated, vec![0]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn from_colouring_marks_blue_and_missing() {
        let host = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2)]).unwrap();
        let chi = EdgeColouring::new(2, vec![0, 1, 1]).unwrap();
        let inst = LllInstance::from_colouring(Graph::path(2), blocks(2, 2), &host, &chi, 0).unwrap();
        // (0,2) blue, (1,3) missing.
        assert_eq!(inst.bad_count(0), 2);
        let out = lll_embed(&inst, 3, 100).unwrap();
        assert!(out.embedding.map == vec![0, 3] || out.embedding.map == vec![1, 2]);
    }

    #[test]
    fn replay_is_deterministic() {
        let template = Graph::cycle(6);
        let bad: Vec<Vec<(Vertex, Vertex)>> = template.edges().map(|(u, v)| vec![(u * 4, v * 4)]).collect();
        let inst = LllInstance::new(template, blocks(6, 4), &bad).unwrap();
        assert_eq!(lll_embed(&inst, 11, 1000), lll_embed(&inst, 11, 1000));
    }
}

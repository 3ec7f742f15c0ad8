use serde::Serialize;

use super::{validate_embedding, Embedding, EmbeddingViolation};
use crate::graph::{path_power, power, sheared_blowup, BlowupMap, Graph, MatchingRule, PathError, PathWitness, Vertex};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BaseCaseError {
    #[error("path is invalid in the base graph: {0}")]
    Path(#[from] PathError),
    #[error("blow-up map has cliques of {t}, need at least k + 1 = {need}")]
    CliquesTooSmall { t: usize, need: usize },
    #[error("host does not match its blow-up map")]
    HostMismatch,
    #[error("path vertices {0} and {1} are within distance k but not adjacent in the blown-up graph")]
    BaseTooSparse(Vertex, Vertex),
    #[error("no clique vertex at position {position} is adjacent to the previous {k}")]
    NoCandidate { position: usize, k: usize },
    #[error("greedy embedding failed validation: {0:?}")]
    Invalid(EmbeddingViolation),
}

/// The host `G^k{k+1}` of the base case together with its map.
pub fn base_case_host(g: &Graph, k: usize, rule: MatchingRule) -> (Graph, BlowupMap) {
    sheared_blowup(&power(g, k), k + 1, rule)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCaseEmbedding {
    pub embedding: Embedding,
    /// Candidates rejected at each position.
    pub rejected: Vec<usize>,
}

/// Embeds `P_n^k` along a path `v_1 .. v_n` of `g` into a sheared blow-up
/// whose base contains every pair of path vertices at most `k` apart (such
/// as `g^k{k+1}`, or `g^R{T}` with `R >= k`, `T > k`): `w_l` is the lowest
/// vertex of `C(v_l)` adjacent to the previous `k` choices. Each earlier
/// vertex rules out at most one candidate, so a choice always exists.
pub fn embed_base_case(
    g: &Graph,
    k: usize,
    path: &PathWitness,
    host: &Graph,
    map: &BlowupMap,
) -> Result<BaseCaseEmbedding, BaseCaseError> {
    path.validate(g, None)?;
    if map.t <= k {
        return Err(BaseCaseError::CliquesTooSmall { t: map.t, need: k + 1 });
    }
    if host.n() != map.host_vertex_count() || map.base.n() != g.n() {
        return Err(BaseCaseError::HostMismatch);
    }
    let v = &path.vertices;
    for i in 0..v.len() {
        for j in i + 1..v.len().min(i + k + 1) {
            if !map.base.has_edge(v[i], v[j]) {
                return Err(BaseCaseError::BaseTooSparse(v[i], v[j]));
            }
        }
    }
    let mut chosen = Vec::with_capacity(path.len());
    let mut rejected = Vec::with_capacity(path.len());
    for (position, &v) in path.vertices.iter().enumerate() {
        let earlier = &chosen[position.saturating_sub(k)..];
        let mut skipped = 0;
        let pick = map.clique_of(v).find(|&x| {
            let ok = earlier.iter().all(|&w| host.has_edge(w, x));
            skipped += usize::from(!ok);
            ok
        });
        let Some(x) = pick else {
            return Err(BaseCaseError::NoCandidate { position, k });
        };
        chosen.push(x);
        rejected.push(skipped);
    }
    let embedding = Embedding::new(chosen);
    let report = validate_embedding(&path_power(path.len(), k), host, &embedding, None);
    match report.violation {
        None => Ok(BaseCaseEmbedding { embedding, rejected }),
        Some(v) => Err(BaseCaseError::Invalid(v)),
    }
}

use std::collections::BTreeMap;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

/// Which perfect matching a sheared blow-up removes between adjacent cliques.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingRule {
    /// The `i`-th vertex of `C(u)` is matched with the `i`-th vertex of `C(v)`.
    Aligned,
    /// Independent uniform permutation per base edge, drawn in canonical
    /// edge order from a ChaCha8 stream seeded with the given value.
    Seeded(u64),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BlowupError {
    #[error("subclique of base vertex {0} is not contained in its clique")]
    SubcliqueOutsideClique(Vertex),
    #[error("subclique table has {got} entries, base graph has {expected} vertices")]
    SubcliqueLength { got: usize, expected: usize },
    #[error("removed pairs for base edge ({0}, {1}) do not form a perfect matching")]
    NotPerfectMatching(Vertex, Vertex),
    #[error("host pair ({0}, {1}) disagrees with the blow-up structure")]
    HostMismatch(Vertex, Vertex),
    #[error("host has {got} vertices, expected {expected}")]
    HostSize { got: usize, expected: usize },
}

/// The vertex correspondence of a (sheared) blow-up host. Host vertex
/// `(v, i)` is linearised as `v * t + i`, so `C(v) = v*t .. (v+1)*t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupMap {
    pub base: Graph,
    pub t: usize,
    /// For each base edge `(u, v)`, `u < v`: `perm[i]` is the index in
    /// `C(v)` matched (and removed) with the `i`-th vertex of `C(u)`.
    /// Empty for complete blow-ups.
    pub removed: BTreeMap<(Vertex, Vertex), Vec<usize>>,
    pub rule: Option<MatchingRule>,
    /// Optional selected subcliques `B(v) ⊆ C(v)`.
    pub subclique: Option<Vec<Option<Vec<Vertex>>>>,
}

impl BlowupMap {
    pub fn is_sheared(&self) -> bool {
        self.rule.is_some()
    }

    pub fn clique_of(&self, v: Vertex) -> Range<Vertex> {
        v * self.t..(v + 1) * self.t
    }

    pub fn base_vertex(&self, x: Vertex) -> Vertex {
        x / self.t
    }

    pub fn host_vertex_count(&self) -> usize {
        self.base.n() * self.t
    }

    /// Host pairs removed between `C(u)` and `C(v)`, ordered as `(C(u), C(v))`.
    pub fn removed_pairs(&self, u: Vertex, v: Vertex) -> Vec<(Vertex, Vertex)> {
        let (a, b, flip) = if u < v { (u, v, false) } else { (v, u, true) };
        match self.removed.get(&(a, b)) {
            None => Vec::new(),
            Some(perm) => perm
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    let (x, y) = (a * self.t + i, b * self.t + j);
                    if flip {
                        (y, x)
                    } else {
                        (x, y)
                    }
                })
                .collect(),
        }
    }

    /// Whether the host pair `{x, y}` was removed by the shearing matching.
    pub fn is_removed(&self, x: Vertex, y: Vertex) -> bool {
        let (bx, by) = (self.base_vertex(x), self.base_vertex(y));
        let (x, y, bx, by) = if bx < by { (x, y, bx, by) } else { (y, x, by, bx) };
        match self.removed.get(&(bx, by)) {
            Some(perm) => perm[x - bx * self.t] == y - by * self.t,
            None => false,
        }
    }

    /// Whether `{x, y}` is a host edge according to the structure alone.
    pub fn expects_edge(&self, x: Vertex, y: Vertex) -> bool {
        if x == y {
            return false;
        }
        let (bx, by) = (self.base_vertex(x), self.base_vertex(y));
        if bx == by {
            return true;
        }
        self.base.has_edge(bx, by) && !self.is_removed(x, y)
    }

    pub fn subclique_of(&self, v: Vertex) -> Option<&[Vertex]> {
        self.subclique.as_ref()?.get(v)?.as_deref()
    }

    /// Attaches subcliques `B(v) ⊆ C(v)`.
    pub fn with_subcliques(mut self, sub: Vec<Option<Vec<Vertex>>>) -> Result<Self, BlowupError> {
        if sub.len() != self.base.n() {
            return Err(BlowupError::SubcliqueLength { got: sub.len(), expected: self.base.n() });
        }
        for (v, s) in sub.iter().enumerate() {
            if let Some(s) = s {
                let c = self.clique_of(v);
                if !s.iter().all(|x| c.contains(x)) {
                    return Err(BlowupError::SubcliqueOutsideClique(v));
                }
            }
        }
        self.subclique = Some(sub);
        Ok(self)
    }

    /// Checks every invariant of the map against `host`: cliques partition
    /// the host, removed pairs are perfect matchings, and the host edge set
    /// is exactly what the structure prescribes.
    pub fn validate(&self, host: &Graph) -> Result<(), BlowupError> {
        let expected = self.host_vertex_count();
        if host.n() != expected {
            return Err(BlowupError::HostSize { got: host.n(), expected });
        }
        for (&(u, v), perm) in &self.removed {
            let mut seen = vec![false; self.t];
            let ok = perm.len() == self.t
                && self.base.has_edge(u, v)
                && perm.iter().all(|&j| j < self.t && !std::mem::replace(&mut seen[j], true));
            if !ok {
                return Err(BlowupError::NotPerfectMatching(u, v));
            }
        }
        if self.is_sheared() && self.removed.len() != self.base.m() {
            let missing = self.base.edges().find(|e| !self.removed.contains_key(e)).unwrap_or((0, 0));
            return Err(BlowupError::NotPerfectMatching(missing.0, missing.1));
        }
        for (x, y) in host.edges() {
            if !self.expects_edge(x, y) {
                return Err(BlowupError::HostMismatch(x, y));
            }
        }
        if host.m() != expected_edge_count(&self.base, self.t, self.is_sheared()) {
            // some prescribed edge is missing; find it for the report
            for x in 0..expected {
                for y in x + 1..expected {
                    if self.expects_edge(x, y) && !host.has_edge(x, y) {
                        return Err(BlowupError::HostMismatch(x, y));
                    }
                }
            }
        }
        if let Some(sub) = &self.subclique {
            for (v, s) in sub.iter().enumerate() {
                if let Some(s) = s {
                    let c = self.clique_of(v);
                    if !s.iter().all(|x| c.contains(x)) {
                        return Err(BlowupError::SubcliqueOutsideClique(v));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `|E(h)| t^2 + |V(h)| C(t,2)` (complete) or `|E(h)| (t^2 - t) + |V(h)| C(t,2)` (sheared).
pub(crate) fn expected_edge_count(h: &Graph, t: usize, sheared: bool) -> usize {
    let cross = if sheared { t * t - t } else { t * t };
    h.m() * cross + h.n() * t * (t.saturating_sub(1)) / 2
}

fn build(h: &Graph, t: usize, removed: &BTreeMap<(Vertex, Vertex), Vec<usize>>) -> Graph {
    let mut edges = Vec::with_capacity(expected_edge_count(h, t, !removed.is_empty()));
    for v in 0..h.n() {
        for i in 0..t {
            for j in i + 1..t {
                edges.push((v * t + i, v * t + j));
            }
        }
    }
    for (u, v) in h.edges() {
        let perm = removed.get(&(u, v));
        for i in 0..t {
            for j in 0..t {
                if perm.is_some_and(|p| p[i] == j) {
                    continue;
                }
                edges.push((u * t + i, v * t + j));
            }
        }
    }
    Graph::from_edges(h.n() * t, edges).expect("blow-up edges are valid")
}

/// `H(t)`: every vertex becomes a `t`-clique and every edge a complete
/// bipartite graph between the two cliques.
pub fn complete_blowup(h: &Graph, t: usize) -> (Graph, BlowupMap) {
    assert!(t >= 1, "blow-up size must be positive");
    let removed = BTreeMap::new();
    let host = build(h, t, &removed);
    (host, BlowupMap { base: h.clone(), t, removed, rule: None, subclique: None })
}

/// `H{t}`: the complete blow-up with one perfect matching removed between
/// the cliques of every base edge, chosen by `rule`.
pub fn sheared_blowup(h: &Graph, t: usize, rule: MatchingRule) -> (Graph, BlowupMap) {
    assert!(t >= 1, "blow-up size must be positive");
    let mut rng = match rule {
        MatchingRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        MatchingRule::Aligned => None,
    };
    let removed: BTreeMap<_, _> = h
        .edges()
        .map(|e| {
            let mut perm: Vec<usize> = (0..t).collect();
            if let Some(rng) = rng.as_mut() {
                perm.shuffle(rng);
            }
            (e, perm)
        })
        .collect();
    let host = build(h, t, &removed);
    (host, BlowupMap { base: h.clone(), t, removed, rule: Some(rule), subclique: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_power;

    /// Edge enumeration straight from the definition, independent of `build`.
    fn enumerate_blowup_edges(h: &Graph, t: usize, removed: &dyn Fn(usize, usize) -> bool) -> usize {
        let n = h.n() * t;
        let mut count = 0;
        for x in 0..n {
            for y in x + 1..n {
                let (u, v) = (x / t, y / t);
                let edge = u == v || (h.has_edge(u, v) && !removed(x, y));
                count += edge as usize;
            }
        }
        count
    }

    #[test]
    fn complete_blowup_examples() {
        let (g, map) = complete_blowup(&Graph::complete(2), 2);
        assert_eq!(g, Graph::complete(4));
        assert!(map.validate(&g).is_ok());

        let p3 = Graph::path(3);
        let (g, map) = complete_blowup(&p3, 3);
        assert_eq!(g.m(), 27);
        assert_eq!(enumerate_blowup_edges(&p3, 3, &|_, _| false), 27);
        assert!(map.validate(&g).is_ok());

        let h = path_power(6, 2);
        assert_eq!(complete_blowup(&h, 1).0, h);
    }

    #[test]
    fn sheared_blowup_examples() {
        let k2 = Graph::complete(2);
        for rule in [MatchingRule::Aligned, MatchingRule::Seeded(1), MatchingRule::Seeded(2)] {
            let (g, map) = sheared_blowup(&k2, 2, rule);
            assert_eq!(g.m(), 4);
            assert!(map.validate(&g).is_ok());
            // two clique edges plus the two surviving cross edges: a 4-cycle
            assert!(g.degree_sum() == 8 && (0..4).all(|v| g.degree(v) == 2));
        }
        let h = Graph::path(5);
        let (g, _) = sheared_blowup(&h, 1, MatchingRule::Aligned);
        assert_eq!(g, Graph::empty(5));

        let p3 = Graph::path(3);
        let (g, map) = sheared_blowup(&p3, 3, MatchingRule::Seeded(9));
        assert_eq!(g.m(), 21);
        assert_eq!(enumerate_blowup_edges(&p3, 3, &|x, y| map.is_removed(x, y)), 21);
    }

    #[test]
    fn removed_pairs_are_recorded() {
        let (g, map) = sheared_blowup(&Graph::path(3), 3, MatchingRule::Seeded(4));
        for (u, v) in map.base.edges() {
            let pairs = map.removed_pairs(u, v);
            assert_eq!(pairs.len(), 3);
            for (x, y) in pairs {
                assert!(!g.has_edge(x, y));
                assert!(map.is_removed(y, x));
            }
            let flipped = map.removed_pairs(v, u);
            assert!(flipped.iter().all(|&(a, b)| map.base_vertex(a) == v && map.base_vertex(b) == u));
        }
    }

    #[test]
    fn validate_detects_tampering() {
        let (g, map) = sheared_blowup(&Graph::path(3), 2, MatchingRule::Aligned);
        let mut edges: Vec<_> = g.edges().collect();
        edges.pop();
        let broken = Graph::from_edges(g.n(), edges).unwrap();
        assert!(matches!(map.validate(&broken), Err(BlowupError::HostMismatch(_, _))));

        let mut bad = map.clone();
        bad.removed.insert((0, 1), vec![0, 0]);
        assert_eq!(bad.validate(&g), Err(BlowupError::NotPerfectMatching(0, 1)));
    }

    #[test]
    fn subcliques_must_sit_inside_cliques() {
        let (_, map) = complete_blowup(&Graph::path(2), 3);
        assert!(map.clone().with_subcliques(vec![Some(vec![0, 2]), None]).is_ok());
        assert_eq!(map.with_subcliques(vec![Some(vec![0, 3]), None]), Err(BlowupError::SubcliqueOutsideClique(0)));
    }
}

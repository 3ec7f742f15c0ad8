use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::class_p::prune_max_degree;
use crate::graph::{Graph, PathWitness, Vertex};
use crate::rational::Rational;

/// `t` consecutive path vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub index: usize,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SegmentError {
    #[error("segment size must be positive")]
    ZeroSize,
    #[error("path of {len} vertices does not split into segments of {t}")]
    NotDivisible { len: usize, t: usize },
    #[error("vertex {0} lies in two segments or outside the graph")]
    Overlap(Vertex),
    #[error("probability must lie in (0, 1], got {0}")]
    BadProbability(Rational),
}

pub fn segment_path(path: &PathWitness, t: usize) -> Result<Vec<Segment>, SegmentError> {
    if t == 0 {
        return Err(SegmentError::ZeroSize);
    }
    if !path.len().is_multiple_of(t) {
        return Err(SegmentError::NotDivisible { len: path.len(), t });
    }
    Ok(path.vertices.chunks(t).enumerate().map(|(index, c)| Segment { index, vertices: c.to_vec() }).collect())
}

fn owner_map(g: &Graph, segments: &[Segment]) -> Result<Vec<Option<usize>>, SegmentError> {
    let mut owner = vec![None; g.n()];
    for (i, seg) in segments.iter().enumerate() {
        for &v in &seg.vertices {
            if v >= g.n() || owner[v].is_some() {
                return Err(SegmentError::Overlap(v));
            }
            owner[v] = Some(i);
        }
    }
    Ok(owner)
}

/// The graph on segment indices joining two segments iff `g` has an edge
/// between them.
pub fn auxiliary_graph(g: &Graph, segments: &[Segment]) -> Result<Graph, SegmentError> {
    let owner = owner_map(g, segments)?;
    let edges = g.edges().filter_map(|(u, v)| match (owner[u], owner[v]) {
        (Some(a), Some(b)) if a != b => Some((a.min(b), a.max(b))),
        _ => None,
    });
    Ok(Graph::from_edges(segments.len(), edges).expect("segment indices are in range"))
}

/// The largest number of `g`-edges between two distinct segments.
pub fn max_edges_between_segments(g: &Graph, segments: &[Segment]) -> Result<usize, SegmentError> {
    let owner = owner_map(g, segments)?;
    let mut counts = std::collections::BTreeMap::new();
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                *counts.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
            }
        }
    }
    Ok(counts.into_values().max().unwrap_or(0))
}

/// Keeps each edge independently with probability `p`, drawing in canonical
/// edge order from a ChaCha8 stream.
pub fn sparsify(h: &Graph, p: &Rational, seed: u64) -> Result<Graph, SegmentError> {
    if !p.is_positive() || *p > Rational::one() {
        return Err(SegmentError::BadProbability(p.clone()));
    }
    if *p == Rational::one() {
        return Ok(h.clone());
    }
    let pf = p.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kept: Vec<_> = h.edges().filter(|_| rng.gen_bool(pf)).collect();
    Ok(Graph::from_edges(h.n(), kept).expect("subset of valid edges"))
}

/// Removes `remove` vertices one at a time, each a current maximum-degree
/// vertex (smallest id on ties). Returns the relabelled graph and the
/// surviving original ids.
pub fn prune_top(h: &Graph, remove: usize) -> (Graph, Vec<Vertex>) {
    let keep = h.n().saturating_sub(remove);
    let (g, kept, _) = prune_max_degree(h, keep);
    (g, kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_examples() {
        let p = PathWitness::new((0..12).collect());
        let s = segment_path(&p, 4).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].vertices, vec![4, 5, 6, 7]);
        assert_eq!(segment_path(&PathWitness::new((0..6).collect()), 1).unwrap().len(), 6);
        assert_eq!(segment_path(&PathWitness::new((0..6).collect()), 3).unwrap().len(), 2);
        assert!(segment_path(&PathWitness::new((0..7).collect()), 3).is_err());
    }

    #[test]
    fn path_segments_form_a_path() {
        let g = Graph::path(12);
        let s = segment_path(&PathWitness::new((0..12).collect()), 3).unwrap();
        let h = auxiliary_graph(&g, &s).unwrap();
        assert_eq!(h, Graph::path(4));
        assert_eq!(max_edges_between_segments(&g, &s).unwrap(), 1);
    }

    #[test]
    fn overlapping_segments_rejected() {
        let s = vec![Segment { index: 0, vertices: vec![0, 1] }, Segment { index: 1, vertices: vec![1, 2] }];
        assert_eq!(auxiliary_graph(&Graph::path(3), &s), Err(SegmentError::Overlap(1)));
    }

    #[test]
    fn sparsify_and_prune() {
        let g = Graph::complete(8);
        assert_eq!(sparsify(&g, &Rational::one(), 3).unwrap(), g);
        assert_eq!(sparsify(&g, &Rational::new(1, 2), 3).unwrap(), sparsify(&g, &Rational::new(1, 2), 3).unwrap());
        assert!(sparsify(&g, &Rational::zero(), 3).is_err());
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let (h, kept) = prune_top(&star, 1);
        assert_eq!(h.m(), 0);
        assert_eq!(kept, vec![1, 2, 3, 4, 5]);
    }
}

use serde::{Deserialize, Serialize};

use super::biclique::find_blue_biclique;
use super::EdgeColouring;
use crate::embed::{validate_embedding, Embedding, EmbeddingViolation};
use crate::graph::{path_power, Graph, PathError, PathWitness, Vertex};

/// Two sides of an all-blue complete bipartite graph, sorted host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueWitness {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

/// Blue/grey labelling of the edges of `J`, in canonical edge order. A blue
/// edge `uv` with `u < v` carries a witness with `left ⊆ B(u)` and
/// `right ⊆ B(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxColouring {
    pub k: usize,
    pub blue_colour: u8,
    pub witnesses: Vec<Option<BicliqueWitness>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AuxError {
    #[error("{got} subcliques for {expected} vertices of J")]
    SubcliqueCount { got: usize, expected: usize },
    #[error("subclique of {v} is not monochromatic in colour {colour}: pair ({x}, {y})")]
    NotMonochromatic { v: Vertex, x: Vertex, y: Vertex, colour: u8 },
    #[error("subcliques of {u} and {v} share host vertex {x}")]
    Overlap { u: Vertex, v: Vertex, x: Vertex },
    #[error("colouring does not match the host")]
    ColouringMismatch,
    #[error("labelling has {got} entries, J has {expected} edges")]
    WrongLength { got: usize, expected: usize },
    #[error("witness on J-edge ({u}, {v}) is invalid")]
    BadWitness { u: Vertex, v: Vertex },
}

impl AuxColouring {
    pub fn is_blue(&self, j: &Graph, u: Vertex, v: Vertex) -> bool {
        j.edge_index(u, v).is_some_and(|i| self.witnesses[i].is_some())
    }

    /// The witness of `uv` oriented as `(X ⊆ B(u), Y ⊆ B(v))`.
    pub fn oriented_witness(&self, j: &Graph, u: Vertex, v: Vertex) -> Option<(&[Vertex], &[Vertex])> {
        let w = self.witnesses[j.edge_index(u, v)?].as_ref()?;
        Some(if u < v { (&w.left, &w.right) } else { (&w.right, &w.left) })
    }

    pub fn blue_count(&self) -> usize {
        self.witnesses.iter().filter(|w| w.is_some()).count()
    }

    /// The spanning subgraph of blue edges.
    pub fn blue_graph(&self, j: &Graph) -> Graph {
        let edges = j.edges().zip(&self.witnesses).filter(|(_, w)| w.is_some()).map(|(e, _)| e);
        Graph::from_edges(j.n(), edges).expect("edges of J")
    }

    /// The spanning subgraph of grey edges.
    pub fn grey_graph(&self, j: &Graph) -> Graph {
        let edges = j.edges().zip(&self.witnesses).filter(|(_, w)| w.is_none()).map(|(e, _)| e);
        Graph::from_edges(j.n(), edges).expect("edges of J")
    }

    /// Re-checks every witness: sizes `2k`, sides inside the subcliques, and
    /// all `4k^2` cross pairs blue host edges.
    pub fn validate(
        &self,
        j: &Graph,
        subcliques: &[Vec<Vertex>],
        host: &Graph,
        chi: &EdgeColouring,
    ) -> Result<(), AuxError> {
        if self.witnesses.len() != j.m() {
            return Err(AuxError::WrongLength { got: self.witnesses.len(), expected: j.m() });
        }
        for ((u, v), w) in j.edges().zip(&self.witnesses) {
            let Some(w) = w else { continue };
            let ok = w.left.len() == 2 * self.k
                && w.right.len() == 2 * self.k
                && w.left.iter().all(|x| subcliques[u].contains(x))
                && w.right.iter().all(|y| subcliques[v].contains(y))
                && w.left.iter().all(|&x| w.right.iter().all(|&y| chi.colour(host, x, y) == Some(self.blue_colour)));
            if !ok {
                return Err(AuxError::BadWitness { u, v });
            }
        }
        Ok(())
    }
}

/// Labels each edge `uv` of `J` blue when the host has a blue `K_{2k,2k}`
/// between `B(u)` and `B(v)`, grey otherwise. `subcliques[u]` is `B(u)`, a
/// set of host vertices that must be a blue clique.
pub fn build_aux_colouring(
    j: &Graph,
    subcliques: &[Vec<Vertex>],
    host: &Graph,
    chi: &EdgeColouring,
    k: usize,
    blue: u8,
) -> Result<AuxColouring, AuxError> {
    if subcliques.len() != j.n() {
        return Err(AuxError::SubcliqueCount { got: subcliques.len(), expected: j.n() });
    }
    if !chi.matches_host(host) {
        return Err(AuxError::ColouringMismatch);
    }
    let mut owner = std::collections::BTreeMap::new();
    for (v, b) in subcliques.iter().enumerate() {
        for (i, &x) in b.iter().enumerate() {
            if let Some(u) = owner.insert(x, v) {
                return Err(AuxError::Overlap { u, v, x });
            }
            for &y in &b[i + 1..] {
                if chi.colour(host, x, y) != Some(blue) {
                    return Err(AuxError::NotMonochromatic { v, x: x.min(y), y: x.max(y), colour: blue });
                }
            }
        }
    }
    let witnesses =
        j.edges().map(|(u, v)| find_blue_biclique(host, chi, blue, &subcliques[u], &subcliques[v], k)).collect();
    Ok(AuxColouring { k, blue_colour: blue, witnesses })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PowerError {
    #[error("path is invalid in J: {0}")]
    Path(#[from] PathError),
    #[error("path is empty")]
    EmptyPath,
    #[error("J-edge ({0}, {1}) on the path is grey")]
    GreyEdge(Vertex, Vertex),
    #[error("subclique of {v} has {size} vertices, need {need}")]
    SubcliqueTooSmall { v: Vertex, size: usize, need: usize },
    #[error("witness halves at {0} cannot be split into disjoint k-sets")]
    Split(Vertex),
    #[error("assembled power failed validation: {0:?}")]
    Invalid(EmbeddingViolation),
}

/// Turns a blue path `w_1 .. w_n` of `J` into a blue `P_{2kn}^k` in the
/// host. With `(X_i, Y_{i+1})` the witness on `w_i w_{i+1}`, it keeps
/// `Y'_i` = the `k` lowest of `Y_i` and `X'_i` = the `k` lowest of
/// `X_i \ Y'_i`, keeps `X_1` and `Y_n` whole, and orders
/// `X'_1, Y'_2, X'_2, .., Y'_n`. The result is validated against the blue
/// colour before it is returned.
pub fn blue_path_to_blue_power(
    path: &PathWitness,
    j: &Graph,
    aux: &AuxColouring,
    subcliques: &[Vec<Vertex>],
    host: &Graph,
    chi: &EdgeColouring,
) -> Result<Embedding, PowerError> {
    path.validate(j, None)?;
    let w = &path.vertices;
    let k = aux.k;
    let mut order = Vec::with_capacity(2 * k * w.len());
    match w.len() {
        0 => return Err(PowerError::EmptyPath),
        1 => {
            let mut b = subcliques[w[0]].clone();
            if b.len() < 2 * k {
                return Err(PowerError::SubcliqueTooSmall { v: w[0], size: b.len(), need: 2 * k });
            }
            b.sort_unstable();
            order.extend_from_slice(&b[..2 * k]);
        }
        n => {
            let halves = |i: usize| aux.oriented_witness(j, w[i], w[i + 1]).ok_or(PowerError::GreyEdge(w[i], w[i + 1]));
            let (x1, _) = halves(0)?;
            order.extend_from_slice(x1);
            for i in 1..n {
                let (_, y) = halves(i - 1)?;
                if i == n - 1 {
                    order.extend_from_slice(y);
                    break;
                }
                let (x, _) = halves(i)?;
                let y_keep: Vec<Vertex> = y.iter().copied().take(k).collect();
                let x_keep: Vec<Vertex> = x.iter().copied().filter(|v| !y_keep.contains(v)).take(k).collect();
                if y_keep.len() < k || x_keep.len() < k {
                    return Err(PowerError::Split(w[i]));
                }
                order.extend(y_keep);
                order.extend(x_keep);
            }
        }
    }
    let e = Embedding::new(order);
    let pattern = path_power(e.map.len(), k);
    let report = validate_embedding(&pattern, host, &e, Some((chi, &[aux.blue_colour])));
    match report.violation {
        None => Ok(e),
        Some(v) => Err(PowerError::Invalid(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sheared_blowup, MatchingRule};

    fn blocks(n: usize, t: usize) -> Vec<Vec<Vertex>> {
        (0..n).map(|v| (v * t..(v + 1) * t).collect()).collect()
    }

    #[test]
    fn all_blue_host_gives_blue_power() {
        let base = Graph::path(3);
        let (host, _) = sheared_blowup(&base, 8, MatchingRule::Aligned);
        let chi = EdgeColouring::uniform(&host, 2, 0).unwrap();
        let subs = blocks(3, 8);
        for k in 1..=2 {
            let aux = build_aux_colouring(&base, &subs, &host, &chi, k, 0).unwrap();
            assert_eq!(aux.blue_count(), 2);
            aux.validate(&base, &subs, &host, &chi).unwrap();
            let p = PathWitness::new(vec![0, 1, 2]);
            let e = blue_path_to_blue_power(&p, &base, &aux, &subs, &host, &chi).unwrap();
            assert_eq!(e.map.len(), 2 * k * 3);
        }
    }

    #[test]
    fn no_blue_cross_edges_means_all_grey() {
        let base = Graph::complete(3);
        let (host, map) = sheared_blowup(&base, 4, MatchingRule::Aligned);
        let chi = EdgeColouring::from_fn(&host, 2, |x, y| u8::from(map.base_vertex(x) != map.base_vertex(y))).unwrap();
        let subs = blocks(3, 4);
        let aux = build_aux_colouring(&base, &subs, &host, &chi, 1, 0).unwrap();
        assert_eq!(aux.blue_count(), 0);
        assert_eq!(aux.grey_graph(&base), base);
        let err = blue_path_to_blue_power(&PathWitness::new(vec![0, 1]), &base, &aux, &subs, &host, &chi);
        assert_eq!(err, Err(PowerError::GreyEdge(0, 1)));
    }

    #[test]
    fn random_label_matches_quadruple_scan() {
        let base = Graph::path(2);
        let (host, map) = sheared_blowup(&base, 4, MatchingRule::Aligned);
        let subs = blocks(2, 4);
        for seed in 0..40 {
            let random = EdgeColouring::random(&host, 2, seed).unwrap();
            let colours = host
                .edges()
                .zip(random.colours())
                .map(|((x, y), &c)| if map.base_vertex(x) == map.base_vertex(y) { 0 } else { c })
                .collect();
            let chi = EdgeColouring::for_host(&host, 2, colours).unwrap();
            let aux = build_aux_colouring(&base, &subs, &host, &chi, 1, 0).unwrap();
            let blue = |x, y| chi.colour(&host, x, y) == Some(0);
            let scan = (0..4).any(|a| {
                (a + 1..4)
                    .any(|b| (4..8).any(|c| (c + 1..8).any(|d| blue(a, c) && blue(a, d) && blue(b, c) && blue(b, d))))
            });
            assert_eq!(aux.is_blue(&base, 0, 1), scan, "seed {seed}");
        }
    }

    #[test]
    fn non_monochromatic_subclique_is_rejected() {
        let base = Graph::path(2);
        let (host, _) = sheared_blowup(&base, 3, MatchingRule::Aligned);
        let chi = EdgeColouring::random(&host, 2, 5).unwrap();
        let subs = blocks(2, 3);
        let bad = (0..2).find(|&v| {
            let b = &subs[v];
            b.iter().enumerate().any(|(i, &x)| b[i + 1..].iter().any(|&y| chi.colour(&host, x, y) != Some(0)))
        });
        if let Some(v) = bad {
            assert!(matches!(
                build_aux_colouring(&base, &subs, &host, &chi, 1, 0),
                Err(AuxError::NotMonochromatic { v: got, .. }) if got == v
            ));
        }
    }

    #[test]
    fn single_vertex_path() {
        let base = Graph::empty(1);
        let host = Graph::complete(3);
        let chi = EdgeColouring::uniform(&host, 1, 0).unwrap();
        let subs = vec![vec![2, 0, 1]];
        let aux = build_aux_colouring(&base, &subs, &host, &chi, 1, 0).unwrap();
        let e = blue_path_to_blue_power(&PathWitness::new(vec![0]), &base, &aux, &subs, &host, &chi).unwrap();
        assert_eq!(e.map, vec![0, 1]);
    }
}

use serde::Serialize;

use super::subgraph::{find_in_bitsets, Bitsets};
use super::EdgeColouring;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoClique {
    pub colour: u8,
    /// Sorted host vertices.
    pub vertices: Vec<Vertex>,
}

/// A clique of exactly `target` vertices of `clique` whose pairs all have
/// colour `colour`. Pairs that are not host edges never qualify.
pub fn mono_clique_of_colour(
    host: &Graph,
    chi: &EdgeColouring,
    clique: &[Vertex],
    colour: u8,
    target: usize,
) -> Option<Vec<Vertex>> {
    if target > clique.len() {
        return None;
    }
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    let mut edges = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        for (j, &y) in sorted.iter().enumerate().skip(i + 1) {
            if chi.colour(host, x, y) == Some(colour) {
                edges.push((i, j));
            }
        }
    }
    let local = Graph::from_edges(sorted.len(), edges).expect("local indices");
    let e = find_in_bitsets(&Bitsets::from_graph(&local), local.n(), &Graph::complete(target))?;
    let mut vertices: Vec<Vertex> = e.map.into_iter().map(|i| sorted[i]).collect();
    vertices.sort_unstable();
    Some(vertices)
}

/// A monochromatic clique of exactly `target` vertices inside `clique`,
/// trying colours in increasing order. `None` is an honest answer when
/// `clique` is below the Ramsey threshold for `target`.
pub fn mono_clique_in_clique(
    host: &Graph,
    chi: &EdgeColouring,
    clique: &[Vertex],
    target: usize,
) -> Option<MonoClique> {
    (0..chi.s() as u8).find_map(|colour| {
        mono_clique_of_colour(host, chi, clique, colour, target).map(|vertices| MonoClique { colour, vertices })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_colouring_gives_lowest_vertices() {
        let host = Graph::complete(5);
        let chi = EdgeColouring::uniform(&host, 2, 0).unwrap();
        let c = mono_clique_in_clique(&host, &chi, &[0, 1, 2, 3, 4], 3).unwrap();
        assert_eq!(c, MonoClique { colour: 0, vertices: vec![0, 1, 2] });
    }

    #[test]
    fn pentagon_colouring_has_no_triangle() {
        let host = Graph::complete(5);
        let chi = EdgeColouring::from_fn(&host, 2, |u, v| u8::from((v - u) % 5 == 2 || (v - u) % 5 == 3)).unwrap();
        assert_eq!(chi.histogram(), vec![5, 5]);
        assert!(mono_clique_in_clique(&host, &chi, &[0, 1, 2, 3, 4], 3).is_none());
    }

    #[test]
    fn every_colouring_of_k6_has_a_triangle() {
        let host = Graph::complete(6);
        let all: Vec<Vertex> = (0..6).collect();
        for idx in 0..1u64 << 15 {
            let chi = EdgeColouring::from_index(15, 2, idx);
            let c = mono_clique_in_clique(&host, &chi, &all, 3).unwrap();
            for (i, &x) in c.vertices.iter().enumerate() {
                for &y in &c.vertices[i + 1..] {
                    assert_eq!(chi.colour(&host, x, y), Some(c.colour));
                }
            }
        }
    }
}

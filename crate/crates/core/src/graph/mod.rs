//! Simple undirected graphs on vertices `0..n` and the measurements used
//! throughout the crate: powers, BFS distances, degrees, densities, girth.

mod blowup;
mod cycles;
mod density;
pub mod io;
mod path;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

pub use blowup::{complete_blowup, sheared_blowup, BlowupError, BlowupMap, MatchingRule};
pub use cycles::{girth, girth_violation, is_valid_cycle, shortest_cycle_through};
pub use density::{density_pair, density_set, DensityError};
pub use path::{PathError, PathWitness};

/// Distance reported for vertices in a different component.
pub const UNREACHABLE: usize = usize::MAX;

pub type Vertex = usize;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    OutOfRange(Vertex, Vertex, usize),
}

/// Immutable simple undirected graph. Adjacency lists are sorted, so the
/// canonical edge order is lexicographic on `(u, v)` with `u < v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    /// `upper_start[u]` = number of edges `(a, b)` with `a < u`.
    upper_start: Vec<usize>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// Read-only neighbourhood access shared by [`Graph`] and [`GraphBuilder`].
pub trait Neighbours {
    fn vertex_count(&self) -> usize;
    fn for_each_neighbour(&self, v: Vertex, f: impl FnMut(Vertex));
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool;
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adj(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge iterator. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adj(adj))
    }

    fn from_sorted_adj(adj: Vec<Vec<Vertex>>) -> Self {
        let mut upper_start = Vec::with_capacity(adj.len() + 1);
        let mut acc = 0;
        for (u, list) in adj.iter().enumerate() {
            upper_start.push(acc);
            acc += list.len() - list.partition_point(|&w| w < u);
        }
        upper_start.push(acc);
        Graph { adj, upper_start, m: acc }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Self::from_sorted_adj(adj)
    }

    /// `P_n`: the path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete_bipartite(x: usize, y: usize) -> Self {
        let edges = (0..x).flat_map(|u| (x..x + y).map(move |v| (u, v)));
        Self::from_edges(x + y, edges).expect("bipartite edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Position of `{u, v}` in the canonical edge order.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if v >= self.n() {
            return None;
        }
        let list = &self.adj[u];
        let pos = list.binary_search(&v).ok()?;
        let first_upper = list.partition_point(|&w| w < u);
        Some(self.upper_start[u] + pos - first_upper)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_sum(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// BFS distances from `source`; [`UNREACHABLE`] for other components.
    pub fn distances(&self, source: Vertex) -> Vec<usize> {
        self.distances_within(source, usize::MAX)
    }

    /// BFS distances truncated at `limit`; vertices further away are
    /// reported as [`UNREACHABLE`].
    pub fn distances_within(&self, source: Vertex, limit: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            if dist[u] == limit {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `vertices`, relabelled so that `vertices[i]`
    /// becomes vertex `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![UNREACHABLE; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<_> =
                    self.adj[v].iter().filter_map(|&w| (local[w] != UNREACHABLE).then_some(local[w])).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Self::from_sorted_adj(adj)
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: &[Vertex]) -> usize {
        let mut mark = vec![false; self.n()];
        for &v in set {
            mark[v] = true;
        }
        set.iter().map(|&v| self.adj[v].iter().filter(|&&w| mark[w]).count()).sum::<usize>() / 2
    }

    /// Number of edges with one endpoint in `x` and the other in `y`
    /// (the sets are assumed disjoint).
    pub fn edges_between(&self, x: &[Vertex], y: &[Vertex]) -> usize {
        let mut mark = vec![false; self.n()];
        for &v in y {
            mark[v] = true;
        }
        x.iter().map(|&v| self.adj[v].iter().filter(|&&w| mark[w]).count()).sum()
    }

    /// Adjacency as bit masks, available when `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(self.adj.iter().map(|l| l.iter().fold(0u64, |m, &w| m | (1u64 << w))).collect())
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u && !self.has_edge(u, v)).collect()).collect();
        Self::from_sorted_adj(adj)
    }

    /// Same vertex count and every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks the structural invariants; used by tests and loaders.
    pub fn check_invariants(&self) -> bool {
        let sym = (0..self.n()).all(|u| {
            self.adj[u].windows(2).all(|w| w[0] < w[1])
                && self.adj[u].iter().all(|&v| v != u && v < self.n() && self.adj[v].binary_search(&u).is_ok())
        });
        sym && self.degree_sum() == 2 * self.m
    }
}

impl Neighbours for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn for_each_neighbour(&self, v: Vertex, mut f: impl FnMut(Vertex)) {
        for &w in &self.adj[v] {
            f(w)
        }
    }
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v)
    }
}

/// Mutable adjacency used by the generation pipelines before freezing into
/// a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<Vertex>>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![BTreeSet::new(); n], m: 0 }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { adj: (0..g.n()).map(|v| g.neighbours(v).iter().copied().collect()).collect(), m: g.m() }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "self-loop at {u}");
        let fresh = self.adj[u].insert(v);
        if fresh {
            self.adj[v].insert(u);
            self.m += 1;
        }
        fresh
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj[u].remove(&v);
        if had {
            self.adj[v].remove(&u);
            self.m -= 1;
        }
        had
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.adj.iter().enumerate().flat_map(|(u, s)| s.range(u + 1..).map(move |&v| (u, v))).collect()
    }

    pub fn build(self) -> Graph {
        Graph::from_sorted_adj(self.adj.into_iter().map(|s| s.into_iter().collect()).collect())
    }
}

impl Neighbours for GraphBuilder {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }
    fn for_each_neighbour(&self, v: Vertex, mut f: impl FnMut(Vertex)) {
        for &w in &self.adj[v] {
            f(w)
        }
    }
    fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }
}

/// The `k`-th power: `uv` is an edge iff `1 <= dist(u, v) <= k`.
pub fn power(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "power exponent must be positive");
    let adj = (0..g.n())
        .map(|u| {
            let d = g.distances_within(u, k);
            (0..g.n()).filter(|&v| v != u && d[v] != UNREACHABLE).collect()
        })
        .collect();
    Graph::from_sorted_adj(adj)
}

/// `P_n^k` on vertices `0..n`.
pub fn path_power(n: usize, k: usize) -> Graph {
    assert!(k >= 1, "power exponent must be positive");
    let edges = (0..n).flat_map(|i| (i + 1..n.min(i + k + 1)).map(move |j| (i, j)));
    Graph::from_edges(n, edges).expect("path power edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All-pairs BFS oracle kept separate from `power`'s truncated BFS.
    fn oracle_power_edges(g: &Graph, k: usize) -> Vec<(usize, usize)> {
        let n = g.n();
        let mut out = Vec::new();
        for u in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[u] = 0;
            let mut frontier = vec![u];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for &x in &frontier {
                    for &y in g.neighbours(x) {
                        if dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            next.push(y);
                        }
                    }
                }
                frontier = next;
            }
            for v in u + 1..n {
                if dist[v] <= k {
                    out.push((u, v));
                }
            }
        }
        out
    }

    #[test]
    fn power_examples() {
        let p4 = Graph::path(4);
        assert_eq!(power(&p4, 1), p4);
        assert_eq!(power(&p4, 3), Graph::complete(4));
        let p5sq = power(&Graph::path(5), 2);
        assert_eq!(p5sq.m(), 7);
        assert_eq!(p5sq.edges().collect::<Vec<_>>(), oracle_power_edges(&Graph::path(5), 2));
        // the listed edge set, shifted to 0-based labels
        let expect = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (1, 3), (2, 4)];
        assert!(expect.iter().all(|&(u, v)| p5sq.has_edge(u, v)));
    }

    #[test]
    fn power_keeps_components_apart() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let p = power(&g, 10);
        assert!(!p.has_edge(1, 2));
        assert_eq!(p.m(), 1 + 3);
    }

    #[test]
    fn path_power_examples() {
        assert_eq!(path_power(3, 1).m(), 2);
        assert_eq!(path_power(5, 2).m(), 7);
        assert_eq!(path_power(4, 5), Graph::complete(4));
        for n in 1..15 {
            for k in 1..6 {
                let g = path_power(n, k);
                assert_eq!(g, power(&Graph::path(n), k));
                if n > k {
                    assert_eq!(g.m(), n * k - k * (k + 1) / 2);
                }
            }
        }
    }

    #[test]
    fn degrees_and_distances() {
        assert_eq!(Graph::cycle(5).max_degree(), 2);
        assert_eq!(Graph::complete(5).max_degree(), 4);
        assert_eq!(Graph::path(4).distances(0), vec![0, 1, 2, 3]);
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.distances(0)[2], UNREACHABLE);
    }

    #[test]
    fn edge_index_matches_canonical_order() {
        let g = Graph::from_edges(6, [(0, 3), (1, 2), (0, 1), (4, 5), (2, 5), (3, 4)]).unwrap();
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 5), None);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::OutOfRange(0, 3, 3)));
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(g.check_invariants());
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::cycle(6);
        let h = g.induced(&[5, 0, 1]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}

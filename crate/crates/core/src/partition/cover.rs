use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, PathWitness, Vertex};
use crate::subsets::{bits, for_each_k_subset, full_mask, mask_to_vec};

/// Largest vertex count handled by the exhaustive cover search.
pub const EXHAUSTIVE_MAX_N: usize = 12;
/// Restarts of the heuristic, each with a shorter cap on initial paths.
pub const HEURISTIC_RESTARTS: usize = 32;

/// Blue paths plus a red balanced complete multipartite graph covering a
/// 2-coloured complete graph. Blue pairs are the edges of the blue graph,
/// every other pair is red.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionResult {
    pub blue_paths: Vec<PathWitness>,
    pub red_classes: Vec<Vec<Vertex>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    Exhaustive,
    Heuristic,
    /// Exhaustive up to [`EXHAUSTIVE_MAX_N`] vertices, heuristic beyond.
    Auto,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("the number of paths must be positive")]
    ZeroPaths,
    #[error("exhaustive search supports at most {EXHAUSTIVE_MAX_N} vertices, got {0}")]
    TooLarge(usize),
    #[error("no cover found after {attempts} attempts; best attempt left {uncovered} vertices uncovered")]
    NoCoverFound { attempts: usize, uncovered: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartitionViolation {
    TooManyPaths { paths: usize, ell: usize },
    WrongClassCount { classes: usize, expected: usize },
    Unbalanced { sizes: Vec<usize> },
    OutOfRange { vertex: Vertex },
    Repeated { vertex: Vertex },
    Uncovered { vertex: Vertex },
    RedPathEdge { u: Vertex, v: Vertex },
    BlueCrossPair { u: Vertex, v: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub violation: Option<PartitionViolation>,
}

/// Checks every cover invariant against the blue graph and reports the
/// first violation. Empty paths and empty classes are allowed.
pub fn verify_partition(blue: &Graph, result: &PartitionResult, ell: usize) -> PartitionReport {
    let fail = |v| PartitionReport { valid: false, violation: Some(v) };
    if result.blue_paths.len() > ell {
        return fail(PartitionViolation::TooManyPaths { paths: result.blue_paths.len(), ell });
    }
    if result.red_classes.len() != ell + 1 {
        return fail(PartitionViolation::WrongClassCount { classes: result.red_classes.len(), expected: ell + 1 });
    }
    let sizes: Vec<usize> = result.red_classes.iter().map(Vec::len).collect();
    if sizes.windows(2).any(|w| w[0] != w[1]) {
        return fail(PartitionViolation::Unbalanced { sizes });
    }
    let n = blue.n();
    let mut seen = vec![false; n];
    let listed = result.blue_paths.iter().flat_map(|p| &p.vertices).chain(result.red_classes.iter().flatten());
    for &v in listed {
        if v >= n {
            return fail(PartitionViolation::OutOfRange { vertex: v });
        }
        if std::mem::replace(&mut seen[v], true) {
            return fail(PartitionViolation::Repeated { vertex: v });
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return fail(PartitionViolation::Uncovered { vertex: v });
    }
    for p in &result.blue_paths {
        for w in p.vertices.windows(2) {
            if !blue.has_edge(w[0], w[1]) {
                return fail(PartitionViolation::RedPathEdge { u: w[0], v: w[1] });
            }
        }
    }
    for (i, a) in result.red_classes.iter().enumerate() {
        for b in &result.red_classes[i + 1..] {
            for &u in a {
                for &v in b {
                    if blue.has_edge(u, v) {
                        return fail(PartitionViolation::BlueCrossPair { u: u.min(v), v: u.max(v) });
                    }
                }
            }
        }
    }
    PartitionReport { valid: true, violation: None }
}

pub fn partition_two_coloured(
    blue: &Graph,
    ell: usize,
    mode: PartitionMode,
) -> Result<PartitionResult, PartitionError> {
    if ell == 0 {
        return Err(PartitionError::ZeroPaths);
    }
    match mode {
        PartitionMode::Exhaustive if blue.n() > EXHAUSTIVE_MAX_N => Err(PartitionError::TooLarge(blue.n())),
        PartitionMode::Exhaustive => Ok(exhaustive(blue, ell)),
        PartitionMode::Auto if blue.n() <= EXHAUSTIVE_MAX_N => Ok(exhaustive(blue, ell)),
        PartitionMode::Auto | PartitionMode::Heuristic => heuristic(blue, ell),
    }
}

/// Path-cover tables over all vertex subsets: `ends[S]` holds the possible
/// endpoints of a blue Hamilton path of `S`, `cover[S]` the fewest blue
/// paths covering `S` with `split[S]` the path containing `min(S)`.
struct CoverTables {
    adj: Vec<u64>,
    ends: Vec<u32>,
    cover: Vec<u8>,
    split: Vec<u32>,
}

impl CoverTables {
    fn new(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let size = 1usize << n;
        let mut ends = vec![0u32; size];
        for v in 0..n {
            ends[1 << v] = 1 << v;
        }
        for mask in 1..size {
            let e = ends[mask];
            if e == 0 {
                continue;
            }
            for v in bits(e as u64) {
                for w in bits(adj[v as usize] & !(mask as u64)) {
                    ends[mask | (1 << w)] |= 1 << w;
                }
            }
        }
        let mut cover = vec![u8::MAX; size];
        let mut split = vec![0u32; size];
        cover[0] = 0;
        for mask in 1..size {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            // submasks of `rest`, each joined with the lowest vertex
            let mut sub = rest;
            loop {
                let part = sub | low;
                if ends[part] != 0 {
                    let c = cover[mask ^ part].saturating_add(1);
                    if c < cover[mask] || (c == cover[mask] && part as u32 > split[mask]) {
                        cover[mask] = c;
                        split[mask] = part as u32;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        CoverTables { adj, ends, cover, split }
    }

    fn hamilton_path(&self, mask: u64) -> Vec<Vertex> {
        let mut path = Vec::new();
        let mut cur = mask;
        let mut next: Option<u32> = None;
        while cur != 0 {
            let candidates = self.ends[cur as usize] as u64;
            let v = bits(candidates)
                .find(|&v| next.is_none_or(|w| self.adj[v as usize] >> w & 1 == 1))
                .expect("table is consistent");
            path.push(v as usize);
            cur &= !(1u64 << v);
            next = Some(v);
        }
        path
    }

    fn paths(&self, mut mask: u64) -> Vec<PathWitness> {
        let mut out = Vec::new();
        while mask != 0 {
            let part = self.split[mask as usize] as u64;
            out.push(PathWitness::new(self.hamilton_path(part)));
            mask ^= part;
        }
        out
    }
}

/// First cover in the search order: class size from largest to zero, then
/// classes in canonical order (increasing minima).
fn exhaustive(blue: &Graph, ell: usize) -> PartitionResult {
    let n = blue.n();
    let adj = blue.adjacency_masks().expect("n <= 12");
    let tables = CoverTables::new(adj);
    exhaustive_with(&tables, n, ell).expect("a cover always exists")
}

fn exhaustive_with(tables: &CoverTables, n: usize, ell: usize) -> Option<PartitionResult> {
    let full = full_mask(n);
    for q in (0..=n / (ell + 1)).rev() {
        let mut classes = Vec::with_capacity(ell + 1);
        if choose_classes(tables, full, q, ell + 1, 0, &mut classes, ell) {
            let used = classes.iter().fold(0u64, |a, c| a | c);
            return Some(PartitionResult {
                blue_paths: tables.paths(full & !used),
                red_classes: classes.iter().map(|&c| mask_to_vec(c)).collect(),
            });
        }
    }
    None
}

fn choose_classes(
    tables: &CoverTables,
    avail: u64,
    q: usize,
    remaining: usize,
    union: u64,
    classes: &mut Vec<u64>,
    ell: usize,
) -> bool {
    if remaining == 0 {
        return tables.cover[(avail) as usize] as usize <= ell;
    }
    if q == 0 {
        classes.extend(std::iter::repeat_n(0, remaining));
        if tables.cover[avail as usize] as usize <= ell {
            return true;
        }
        classes.truncate(classes.len() - remaining);
        return false;
    }
    // canonical order: this class's minimum exceeds the previous minimum
    let floor = classes.last().map_or(0, |&c: &u64| c.trailing_zeros() + 1);
    let pool = avail & !((1u64 << floor) - 1);
    let mut found = false;
    for_each_k_subset(pool, q, |x| {
        if bits(x).any(|v| tables.adj[v as usize] & union != 0) {
            return true;
        }
        classes.push(x);
        if choose_classes(tables, avail & !x, q, remaining - 1, union | x, classes, ell) {
            found = true;
            return false;
        }
        classes.pop();
        true
    });
    found
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub ell: usize,
    pub colourings: u64,
    pub failures: u64,
    /// Colouring indices (bit `i` set = edge `i` blue) without a verified cover.
    pub failing_indices: Vec<u64>,
}

/// Runs the exhaustive cover on every 2-colouring of `K_n` and verifies
/// each result independently.
pub fn sweep_all_colourings(n: usize, ell: usize) -> Result<SweepReport, PartitionError> {
    if ell == 0 {
        return Err(PartitionError::ZeroPaths);
    }
    if n > 7 {
        return Err(PartitionError::TooLarge(n));
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    let mut failing: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| idx >> i & 1 == 1).map(|(_, &e)| e);
            let blue = Graph::from_edges(n, edges).expect("valid pairs");
            let tables = CoverTables::new(blue.adjacency_masks().expect("small"));
            match exhaustive_with(&tables, n, ell) {
                Some(r) => !verify_partition(&blue, &r, ell).valid,
                None => true,
            }
        })
        .collect();
    failing.sort_unstable();
    let failures = failing.len() as u64;
    failing.truncate(16);
    Ok(SweepReport { n, ell, colourings: total, failures, failing_indices: failing })
}

/// Rotation-extension growth inside the `free` vertices, up to `cap`
/// vertices.
fn grow_path(blue: &Graph, start: Vertex, free: &mut [bool], cap: usize) -> Vec<Vertex> {
    let mut path = vec![start];
    free[start] = false;
    let mut rotations = 0usize;
    let rotation_budget = 4 * blue.n() + 8;
    let free_neighbour = |v: Vertex, free: &[bool]| blue.neighbours(v).iter().copied().find(|&w| free[w]);
    while path.len() < cap {
        let end = *path.last().expect("nonempty");
        if let Some(w) = free_neighbour(end, free) {
            free[w] = false;
            path.push(w);
            continue;
        }
        if let Some(w) = free_neighbour(path[0], free) {
            path.reverse();
            free[w] = false;
            path.push(w);
            continue;
        }
        // rotate: for a neighbour path[i] of the end, reverse path[i+1..]
        let mut rotated = false;
        if rotations < rotation_budget {
            let len = path.len();
            for i in 0..len.saturating_sub(2) {
                if blue.has_edge(end, path[i]) && free_neighbour(path[i + 1], free).is_some() {
                    path[i + 1..].reverse();
                    rotations += 1;
                    rotated = true;
                    break;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    path
}

/// Blue components of the free vertices, largest first, ties by minimum.
fn blue_components(blue: &Graph, free: &[bool]) -> Vec<Vec<Vertex>> {
    let n = blue.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if !free[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in blue.neighbours(v) {
                if free[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}

fn attempt(blue: &Graph, ell: usize, cap: usize, rotate: usize) -> Result<PartitionResult, usize> {
    let n = blue.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (blue.degree(v), v));
    if n > 0 {
        order.rotate_left(rotate % n);
    }
    let mut free = vec![true; n];
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    if cap > 0 {
        for _ in 0..ell {
            let Some(&start) = order.iter().find(|&&v| free[v]) else { break };
            paths.push(grow_path(blue, start, &mut free, cap));
        }
    }

    // pack blue components of the remainder into ell + 1 bins, least-loaded first
    let mut bins: Vec<Vec<Vertex>> = vec![Vec::new(); ell + 1];
    for comp in blue_components(blue, &free) {
        let i = (0..=ell).min_by_key(|&i| (bins[i].len(), i)).expect("ell + 1 bins");
        bins[i].extend(comp);
    }
    let q = bins.iter().map(Vec::len).min().unwrap_or(0);
    let mut leftover: Vec<Vertex> = Vec::new();
    for bin in &mut bins {
        leftover.extend(bin.drain(q..));
        bin.sort_unstable();
    }
    for v in 0..n {
        free[v] = false;
    }
    for &v in &leftover {
        free[v] = true;
    }

    // absorb the leftover at path ends, opening new paths while allowed
    loop {
        let mut progress = false;
        for p in paths.iter_mut() {
            for _ in 0..2 {
                while let Some(&w) = blue.neighbours(*p.last().expect("nonempty")).iter().find(|&&w| free[w]) {
                    free[w] = false;
                    p.push(w);
                    progress = true;
                }
                p.reverse();
            }
        }
        let Some(v) = (0..n).find(|&v| free[v]) else { break };
        if paths.len() < ell {
            paths.push(grow_path(blue, v, &mut free, n));
            progress = true;
        }
        if !progress {
            return Err(free.iter().filter(|&&f| f).count());
        }
    }
    Ok(PartitionResult { blue_paths: paths.into_iter().map(PathWitness::new).collect(), red_classes: bins })
}

fn heuristic(blue: &Graph, ell: usize) -> Result<PartitionResult, PartitionError> {
    let n = blue.n();
    let mut best = usize::MAX;
    for i in 0..HEURISTIC_RESTARTS {
        let cap = n * (HEURISTIC_RESTARTS - 1 - i) / (HEURISTIC_RESTARTS - 1);
        match attempt(blue, ell, cap, i) {
            Ok(r) => {
                debug_assert!(verify_partition(blue, &r, ell).valid);
                if verify_partition(blue, &r, ell).valid {
                    return Ok(r);
                }
            }
            Err(uncovered) => best = best.min(uncovered),
        }
    }
    Err(PartitionError::NoCoverFound { attempts: HEURISTIC_RESTARTS, uncovered: best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_blue_k4_gives_hamilton_path() {
        let r = partition_two_coloured(&Graph::complete(4), 1, PartitionMode::Exhaustive).unwrap();
        assert_eq!(r.blue_paths.len(), 1);
        assert_eq!(r.blue_paths[0].len(), 4);
        assert!(r.red_classes.iter().all(Vec::is_empty));
        assert!(verify_partition(&Graph::complete(4), &r, 1).valid);
    }

    #[test]
    fn all_red_k4_gives_balanced_bipartite() {
        let r = partition_two_coloured(&Graph::empty(4), 1, PartitionMode::Exhaustive).unwrap();
        assert!(r.blue_paths.is_empty());
        assert_eq!(r.red_classes, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn k3_with_one_blue_edge() {
        let blue = Graph::from_edges(3, [(0, 1)]).unwrap();
        let r = partition_two_coloured(&blue, 1, PartitionMode::Exhaustive).unwrap();
        assert!(verify_partition(&blue, &r, 1).valid);
        assert_eq!(r.red_classes, vec![vec![0], vec![2]]);
        assert_eq!(r.blue_paths, vec![PathWitness::new(vec![1])]);
    }

    #[test]
    fn verifier_catches_violations() {
        let blue = Graph::from_edges(4, [(0, 1)]).unwrap();
        let bad_path =
            PartitionResult { blue_paths: vec![PathWitness::new(vec![1, 2])], red_classes: vec![vec![0], vec![3]] };
        let r = verify_partition(&blue, &bad_path, 1);
        assert_eq!(r.violation, Some(PartitionViolation::RedPathEdge { u: 1, v: 2 }));
        let unbalanced =
            PartitionResult { blue_paths: vec![PathWitness::new(vec![0, 1])], red_classes: vec![vec![2, 3], vec![]] };
        assert!(matches!(
            verify_partition(&blue, &unbalanced, 1).violation,
            Some(PartitionViolation::Unbalanced { .. })
        ));
        let blue_cross = PartitionResult { blue_paths: vec![], red_classes: vec![vec![0, 2], vec![1, 3]] };
        assert_eq!(
            verify_partition(&blue, &blue_cross, 1).violation,
            Some(PartitionViolation::BlueCrossPair { u: 0, v: 1 })
        );
    }

    #[test]
    fn sweep_small_complete_graphs() {
        for n in 1..=5 {
            for ell in 1..=2 {
                let r = sweep_all_colourings(n, ell).unwrap();
                assert_eq!(r.failures, 0, "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn heuristic_handles_extremes() {
        for n in [1, 5, 13, 30] {
            for ell in 1..=3 {
                for blue in [Graph::complete(n), Graph::empty(n), Graph::path(n), Graph::cycle(n.max(3))] {
                    let r = partition_two_coloured(&blue, ell, PartitionMode::Heuristic).unwrap();
                    assert!(verify_partition(&blue, &r, ell).valid);
                }
            }
        }
    }

    #[test]
    fn heuristic_agrees_with_verifier_on_small_colourings() {
        // every colouring of K_5 either gets a verified cover or an honest error
        for idx in 0..1u64 << 10 {
            let pairs: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
            let blue =
                Graph::from_edges(5, pairs.iter().enumerate().filter(|(i, _)| idx >> i & 1 == 1).map(|(_, &e)| e))
                    .unwrap();
            if let Ok(r) = partition_two_coloured(&blue, 1, PartitionMode::Heuristic) {
                assert!(verify_partition(&blue, &r, 1).valid);
            }
        }
    }
}

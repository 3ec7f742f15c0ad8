use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, PathWitness, Vertex};
use crate::subsets::{cross_edges, disjoint_pair_count, for_each_disjoint_pair, mask_to_vec};

const PRECHECK_PAIR_BUDGET: u128 = 20_000_000;
const MEMO_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongPathConfig {
    /// Search nodes expanded before giving up.
    pub step_budget: u64,
    /// When set, verify that disjoint sets of this size always span an edge
    /// before searching.
    pub precheck_set_size: Option<usize>,
    /// Minimum size of every part.
    pub min_part_size: usize,
}

impl Default for LongPathConfig {
    fn default() -> Self {
        LongPathConfig { step_budget: 2_000_000, precheck_set_size: None, min_part_size: 0 }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LongPathError {
    #[error("at least one part is required")]
    NoParts,
    #[error("vertex {0} appears in two parts or lies outside the graph")]
    BadParts(Vertex),
    #[error("part {part} has {size} vertices, below the floor {floor}")]
    PartTooSmall { part: usize, size: usize, floor: usize },
    #[error("expansion fails: {x:?} and {y:?} span no edge")]
    HypothesisFails { x: Vec<Vertex>, y: Vec<Vertex> },
    #[error("expansion pre-check needs {pairs} pairs, beyond the budget")]
    PrecheckTooLarge { pairs: u128 },
    #[error("no path of length {target} found after {steps} steps; longest has {}", longest.len())]
    NoPathFound { target: usize, steps: u64, longest: PathWitness },
}

/// A disjoint pair of `size`-sets with no edge between them, if one exists.
/// Supersets inherit edges, so checking exactly `size` suffices.
pub fn expansion_counterexample(g: &Graph, size: usize) -> Result<Option<(Vec<Vertex>, Vec<Vertex>)>, LongPathError> {
    let pairs = disjoint_pair_count(g.n() as u64, size as u64);
    let Some(adj) = g.adjacency_masks().filter(|_| pairs <= PRECHECK_PAIR_BUDGET) else {
        return Err(LongPathError::PrecheckTooLarge { pairs });
    };
    let mut witness = None;
    for_each_disjoint_pair(crate::subsets::full_mask(g.n()), size, |x, y| {
        if cross_edges(&adj, x, y) == 0 {
            witness = Some((mask_to_vec(x), mask_to_vec(y)));
            return false;
        }
        true
    });
    Ok(witness)
}

struct Search<'a> {
    g: &'a Graph,
    part_of: Vec<Option<usize>>,
    t: usize,
    target: usize,
    used: Vec<u64>,
    path: Vec<Vertex>,
    longest: Vec<Vertex>,
    steps: u64,
    budget: u64,
    failed: HashSet<(Vertex, Box<[u64]>)>,
}

impl Search<'_> {
    fn is_used(&self, v: Vertex) -> bool {
        self.used[v / 64] >> (v % 64) & 1 == 1
    }

    fn toggle(&mut self, v: Vertex) {
        self.used[v / 64] ^= 1 << (v % 64);
    }

    fn fits(&self, v: Vertex, position: usize) -> bool {
        !self.is_used(v) && self.part_of[v] == Some(position % self.t)
    }

    /// Candidates for the next position, fewest onward options first.
    fn candidates(&self, from: Vertex) -> Vec<Vertex> {
        let pos = self.path.len();
        let mut c: Vec<(usize, Vertex)> = self
            .g
            .neighbours(from)
            .iter()
            .copied()
            .filter(|&w| self.fits(w, pos))
            .map(|w| (self.g.neighbours(w).iter().filter(|&&x| x != w && self.fits(x, pos + 1)).count(), w))
            .collect();
        c.sort_unstable();
        c.into_iter().map(|(_, w)| w).collect()
    }

    fn extend(&mut self) -> bool {
        if self.path.len() > self.longest.len() {
            self.longest = self.path.clone();
        }
        if self.path.len() == self.target {
            return true;
        }
        if self.steps >= self.budget {
            return false;
        }
        self.steps += 1;
        let end = *self.path.last().expect("nonempty");
        let key = (end, self.used.clone().into_boxed_slice());
        if self.failed.contains(&key) {
            return false;
        }
        for w in self.candidates(end) {
            self.toggle(w);
            self.path.push(w);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.toggle(w);
            if self.steps >= self.budget {
                return false;
            }
        }
        if self.failed.len() < MEMO_LIMIT {
            self.failed.insert(key);
        }
        false
    }
}

/// A path `x_0, x_1, ...` of `target` vertices with `x_i` in `parts[i mod t]`.
/// Depth-first with a most-constrained-first order and a memo of exhausted
/// (endpoint, visited set) states.
pub fn long_path_through_sets(
    g: &Graph,
    parts: &[Vec<Vertex>],
    target: usize,
    cfg: &LongPathConfig,
) -> Result<PathWitness, LongPathError> {
    let t = parts.len();
    if t == 0 {
        return Err(LongPathError::NoParts);
    }
    let mut part_of = vec![None; g.n()];
    for (j, part) in parts.iter().enumerate() {
        if part.len() < cfg.min_part_size {
            return Err(LongPathError::PartTooSmall { part: j, size: part.len(), floor: cfg.min_part_size });
        }
        for &v in part {
            if v >= g.n() || part_of[v].is_some() {
                return Err(LongPathError::BadParts(v));
            }
            part_of[v] = Some(j);
        }
    }
    if let Some(size) = cfg.precheck_set_size {
        if let Some((x, y)) = expansion_counterexample(g, size)? {
            return Err(LongPathError::HypothesisFails { x, y });
        }
    }
    let trace = |len: usize| Some((0..len).map(|i| i % t).collect());
    if target == 0 {
        return Ok(PathWitness { vertices: Vec::new(), class_trace: trace(0) });
    }
    let mut search = Search {
        g,
        part_of,
        t,
        target,
        used: vec![0; g.n().div_ceil(64)],
        path: Vec::with_capacity(target),
        longest: Vec::new(),
        steps: 0,
        budget: cfg.step_budget,
        failed: HashSet::new(),
    };
    let mut starts = parts[0].clone();
    starts.sort_unstable();
    for s in starts {
        search.toggle(s);
        search.path.push(s);
        if search.extend() {
            let vertices = search.path.clone();
            return Ok(PathWitness { class_trace: trace(vertices.len()), vertices });
        }
        search.path.pop();
        search.toggle(s);
        if search.steps >= search.budget {
            break;
        }
    }
    let longest = search.longest;
    Err(LongPathError::NoPathFound {
        target,
        steps: search.steps,
        longest: PathWitness { class_trace: trace(longest.len()), vertices: longest },
    })
}

use num_bigint::BigUint;
use serde::Serialize;

use super::aux::BicliqueWitness;
use super::EdgeColouring;
use crate::graph::{Graph, Vertex};

/// Multi-word row search: `rows` holds `words` words per left vertex.
fn search(rows: &[u64], words: usize, l: usize, r: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let left_n = rows.len().checked_div(words).unwrap_or(0);
    if l == 0 || r == 0 || l > left_n {
        return None;
    }
    let count = |set: &[u64]| set.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    fn rec(
        rows: &[u64],
        words: usize,
        left_n: usize,
        l: usize,
        r: usize,
        from: usize,
        common: &[u64],
        chosen: &mut Vec<usize>,
        count: &dyn Fn(&[u64]) -> usize,
    ) -> Option<Vec<u64>> {
        if chosen.len() == l {
            return Some(common.to_vec());
        }
        let need = l - chosen.len();
        for i in from..=left_n - need {
            let next: Vec<u64> = common.iter().zip(&rows[i * words..(i + 1) * words]).map(|(a, b)| a & b).collect();
            if count(&next) < r {
                continue;
            }
            chosen.push(i);
            if let Some(c) = rec(rows, words, left_n, l, r, i + 1, &next, chosen, count) {
                return Some(c);
            }
            chosen.pop();
        }
        None
    }
    let mut chosen = Vec::with_capacity(l);
    let all = vec![u64::MAX; words];
    let common = rec(rows, words, left_n, l, r, 0, &all, &mut chosen, &count)?;
    let right = common
        .iter()
        .enumerate()
        .flat_map(|(wi, &w)| crate::subsets::bits(w).map(move |b| wi * 64 + b as usize))
        .take(r)
        .collect();
    Some((chosen, right))
}

/// An `l`-by-`r` biclique in the bipartite graph whose `i`-th left vertex
/// has right-neighbourhood `rows[i]`: the lexicographically first left
/// subset with a large enough common neighbourhood, paired with the `r`
/// lowest common neighbours.
pub fn find_biclique_rows(rows: &[u64], l: usize, r: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    search(rows, 1, l, r)
}

/// A `2k | 2k` biclique of `blue`-coloured host edges between `a` and `b`.
/// Missing host pairs count as absent. Sides are returned sorted.
pub fn find_blue_biclique(
    host: &Graph,
    chi: &EdgeColouring,
    blue: u8,
    a: &[Vertex],
    b: &[Vertex],
    k: usize,
) -> Option<BicliqueWitness> {
    let size = 2 * k;
    if a.len() < size || b.len() < size || k == 0 {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let words = b.len().div_ceil(64);
    let mut rows = vec![0u64; a.len() * words];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if chi.colour(host, x, y) == Some(blue) {
                rows[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let (li, ri) = search(&rows, words, size, size)?;
    Some(BicliqueWitness {
        left: li.into_iter().map(|i| a[i]).collect(),
        right: ri.into_iter().map(|j| b[j]).collect(),
    })
}

/// Whether `m <= 4 x^(2 - 1/(2k))`, decided exactly as
/// `m^(2k) <= 4^(2k) x^(4k - 1)`.
pub fn kst_bound_holds(m: u64, x: u64, k: u32) -> bool {
    let lhs = BigUint::from(m).pow(2 * k);
    let rhs = BigUint::from(4u32).pow(2 * k) * BigUint::from(x).pow(4 * k - 1);
    lhs <= rhs
}

fn kst_bound_f64(x: usize, k: usize) -> f64 {
    4.0 * (x as f64).powf(2.0 - 1.0 / (2.0 * k as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KstReport {
    pub x: usize,
    pub k: usize,
    pub edges: usize,
    /// Set when the graph contains `K_{2k,2k}`; the bound then says nothing.
    pub biclique: Option<BicliqueWitness>,
    /// `None` when not applicable.
    pub holds: Option<bool>,
    /// Display only.
    pub bound_approx: f64,
    /// Display only: bound minus edge count.
    pub margin_approx: f64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum KstError {
    #[error("graph has {n} vertices, expected two sides of {x}")]
    SideMismatch { n: usize, x: usize },
    #[error("edge ({0}, {1}) lies inside one side")]
    NotBipartite(Vertex, Vertex),
    #[error("k must be positive")]
    ZeroK,
}

/// Checks the bound on a balanced bipartite graph with sides `0..x` and
/// `x..2x`.
pub fn kst_bound_check(g: &Graph, x: usize, k: usize) -> Result<KstReport, KstError> {
    if k == 0 {
        return Err(KstError::ZeroK);
    }
    if g.n() != 2 * x {
        return Err(KstError::SideMismatch { n: g.n(), x });
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| (u < x) == (v < x)) {
        return Err(KstError::NotBipartite(u, v));
    }
    let words = x.div_ceil(64).max(1);
    let mut rows = vec![0u64; x * words];
    for (u, v) in g.edges() {
        let j = v - x;
        rows[u * words + j / 64] |= 1 << (j % 64);
    }
    let biclique = search(&rows, words, 2 * k, 2 * k)
        .map(|(l, r)| BicliqueWitness { left: l, right: r.into_iter().map(|j| j + x).collect() });
    let edges = g.m();
    let holds = biclique.is_none().then(|| kst_bound_holds(edges as u64, x as u64, k as u32));
    let bound_approx = kst_bound_f64(x, k);
    Ok(KstReport { x, k, edges, biclique, holds, bound_approx, margin_approx: bound_approx - edges as f64 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KstSweepRow {
    pub x: usize,
    /// Row multisets examined (left-side permutations are collapsed).
    pub graphs_checked: u64,
    /// Most edges over `K_{2k,2k}`-free graphs.
    pub max_free_edges: usize,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KstSweep {
    pub k: usize,
    pub rows: Vec<KstSweepRow>,
    pub violations: u64,
}

/// Enumerates every balanced bipartite graph with sides of size `1..=x_max`
/// up to reordering the left side (rows as a non-increasing sequence of
/// masks), pruning as soon as the prefix contains `K_{2k,2k}`, and checks
/// the bound on each free graph.
pub fn kst_sweep(x_max: usize, k: usize) -> KstSweep {
    assert!(x_max <= 8 && k >= 1, "sweep supports sides up to 8");
    let rows = (1..=x_max)
        .map(|x| {
            let mut row = KstSweepRow { x, graphs_checked: 0, max_free_edges: 0, violations: 0 };
            let mut prefix = Vec::with_capacity(x);
            fn rec(x: usize, k: usize, max_mask: u64, prefix: &mut Vec<u64>, row: &mut KstSweepRow) {
                if prefix.len() == x {
                    row.graphs_checked += 1;
                    let edges: usize = prefix.iter().map(|r| r.count_ones() as usize).sum();
                    row.max_free_edges = row.max_free_edges.max(edges);
                    if !kst_bound_holds(edges as u64, x as u64, k as u32) {
                        row.violations += 1;
                    }
                    return;
                }
                for mask in (0..=max_mask).rev() {
                    prefix.push(mask);
                    if find_biclique_rows(prefix, 2 * k, 2 * k).is_none() {
                        rec(x, k, mask, prefix, row);
                    }
                    prefix.pop();
                }
            }
            rec(x, k, (1u64 << x) - 1, &mut prefix, &mut row);
            row
        })
        .collect::<Vec<_>>();
    let violations = rows.iter().map(|r| r.violations).sum();
    KstSweep { k, rows, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_search() {
        // C_4 across sides of size 5: left {1, 3}, right {0, 4}.
        let mut rows = [0u64; 5];
        rows[1] = 0b10001;
        rows[3] = 0b10001;
        assert_eq!(find_biclique_rows(&rows, 2, 2), Some((vec![1, 3], vec![0, 4])));
        assert_eq!(find_biclique_rows(&[0; 5], 2, 2), None);
        assert_eq!(find_biclique_rows(&[0b11, 0b11], 2, 2), Some((vec![0, 1], vec![0, 1])));
    }

    #[test]
    fn blue_biclique_examples() {
        let host = Graph::complete_bipartite(2, 2);
        let all = EdgeColouring::uniform(&host, 2, 0).unwrap();
        let w = find_blue_biclique(&host, &all, 0, &[0, 1], &[2, 3], 1).unwrap();
        assert_eq!((w.left, w.right), (vec![0, 1], vec![2, 3]));
        assert!(find_blue_biclique(&host, &all, 1, &[0, 1], &[2, 3], 1).is_none());
        assert!(find_blue_biclique(&host, &all, 0, &[0, 1], &[2, 3], 2).is_none());
    }

    #[test]
    fn exact_bound() {
        // 4 * 2^(3/2) = 11.31...
        assert!(kst_bound_holds(11, 2, 1));
        assert!(!kst_bound_holds(12, 2, 1));
        assert!(kst_bound_holds(0, 5, 3));
    }

    #[test]
    fn bound_check_examples() {
        let r = kst_bound_check(&Graph::empty(6), 3, 1).unwrap();
        assert_eq!(r.holds, Some(true));
        assert!((r.margin_approx - 4.0 * 3f64.powf(1.5)).abs() < 1e-9);
        let r = kst_bound_check(&Graph::complete_bipartite(3, 3), 3, 1).unwrap();
        assert!(r.biclique.is_some());
        assert_eq!(r.holds, None);
        assert!(kst_bound_check(&Graph::complete(4), 2, 1).is_err());
    }

    #[test]
    fn zarankiewicz_numbers() {
        let sweep = kst_sweep(4, 1);
        let maxima: Vec<usize> = sweep.rows.iter().map(|r| r.max_free_edges).collect();
        assert_eq!(maxima, vec![1, 3, 6, 9]);
        assert_eq!(sweep.violations, 0);
    }

    #[test]
    fn sweep_matches_brute_force_up_to_three() {
        for x in 1..=3usize {
            let mut best = 0;
            for bits in 0u32..1 << (x * x) {
                let edges = (0..x * x).filter(|&i| bits >> i & 1 == 1).map(|i| (i / x, x + i % x));
                let g = Graph::from_edges(2 * x, edges).unwrap();
                let free = (0..x).all(|a| {
                    (a + 1..x).all(|b| (x..2 * x).filter(|&c| g.has_edge(a, c) && g.has_edge(b, c)).count() < 2)
                });
                if free {
                    best = best.max(g.m());
                }
            }
            assert_eq!(kst_sweep(x, 1).rows[x - 1].max_free_edges, best);
        }
    }
}

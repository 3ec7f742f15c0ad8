use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pairs::{exhaustive_stats, sampled_stats, CertMode, DensityCertificate};
use super::ClassPParams;
use crate::graph::{girth_violation, Graph, Vertex};
use crate::rational::{within_relative, Rational};
use crate::subsets::{cross_edges, disjoint_pair_count, for_each_disjoint_pair, full_mask, inner_edges, mask_to_vec};

/// Largest number of disjoint pairs an exhaustive certification will visit.
pub const EXHAUSTIVE_PAIR_BUDGET: u128 = 50_000_000;

/// Largest vertex count for the `3^n` propagation sweep.
const PROPAGATION_MAX_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Sampled {
        samples: usize,
        seed: u64,
    },
    /// Exhaustive when within [`EXHAUSTIVE_PAIR_BUDGET`], sampled otherwise.
    Auto {
        samples: usize,
        seed: u64,
    },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("rounding gives cn = {cn}, need at least 2")]
    SetSizeTooSmall { cn: u64 },
    #[error("exhaustive check needs {pairs} pairs on {n} vertices, beyond the budget")]
    OverBudget { n: usize, pairs: u128 },
    #[error("{0}")]
    Domain(String),
}

/// Conditions (i)-(iv) of the class, each with its measured value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPReport {
    pub vertex_count: usize,
    pub expected_vertex_count: u64,
    pub vertex_count_ok: bool,
    pub max_degree: usize,
    pub degree_bound: u64,
    pub degree_ok: bool,
    pub density: DensityCertificate,
    pub girth_limit: usize,
    /// A cycle of length at most `2t`, if any.
    pub short_cycle: Option<Vec<Vertex>>,
    pub girth_ok: bool,
    pub passed: bool,
}

/// Checks condition (iii) alone: every checked disjoint pair of `cn`-sets has
/// density within `(1 ± eps) f_G` for a fitted `f_G > 0`.
pub fn certify_pairs(g: &Graph, params: &ClassPParams, mode: VerifyMode) -> Result<DensityCertificate, VerifyError> {
    let cn = params.cn();
    if cn < 2 {
        return Err(VerifyError::SetSizeTooSmall { cn });
    }
    let (n, s) = (g.n(), cn as usize);
    let eps = &params.quad.eps;
    let pairs = disjoint_pair_count(n as u64, cn);
    let exhaustive_ok = n <= 64 && pairs <= EXHAUSTIVE_PAIR_BUDGET;
    let sampled = |samples: usize, seed: u64| {
        let all: Vec<Vertex> = (0..n).collect();
        let stats = sampled_stats(g, &all, s, samples, seed);
        DensityCertificate::fit(&stats, eps, CertMode::Sampled { count: samples, seed })
    };
    Ok(match mode {
        VerifyMode::Exhaustive if !exhaustive_ok => return Err(VerifyError::OverBudget { n, pairs }),
        VerifyMode::Exhaustive => exhaustive(g, s, eps),
        VerifyMode::Auto { .. } if exhaustive_ok => exhaustive(g, s, eps),
        VerifyMode::Auto { samples, seed } | VerifyMode::Sampled { samples, seed } => sampled(samples, seed),
    })
}

fn exhaustive(g: &Graph, s: usize, eps: &Rational) -> DensityCertificate {
    let adj = g.adjacency_masks().expect("n <= 64");
    let stats = exhaustive_stats(&adj, full_mask(g.n()), s);
    DensityCertificate::fit(&stats, eps, CertMode::Exhaustive)
}

pub fn verify_class_p(g: &Graph, params: &ClassPParams, mode: VerifyMode) -> Result<ClassPReport, VerifyError> {
    let density = certify_pairs(g, params, mode)?;
    let expected = params.an();
    let bound = params.degree_bound();
    let limit = 2 * params.t;
    let short_cycle = if limit >= 3 { girth_violation(g, limit) } else { None };
    let vertex_count_ok = g.n() as u64 == expected;
    let degree_ok = g.max_degree() as u64 <= bound;
    let girth_ok = short_cycle.is_none();
    Ok(ClassPReport {
        vertex_count: g.n(),
        expected_vertex_count: expected,
        vertex_count_ok,
        max_degree: g.max_degree(),
        degree_bound: bound,
        degree_ok,
        passed: vertex_count_ok && degree_ok && girth_ok && density.passed,
        density,
        girth_limit: limit,
        short_cycle,
        girth_ok,
    })
}

/// A pair or set whose density leaves the `(1 ± eps) f` window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityWitness {
    pub x: Vec<Vertex>,
    /// Empty for a set-density witness.
    pub y: Vec<Vertex>,
    pub density: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationReport {
    pub alpha_n: usize,
    /// Every pair of `alpha_n`-sets is within the window.
    pub hypothesis_holds: bool,
    pub hypothesis_witness: Option<DensityWitness>,
    pub pairs_checked: u64,
    pub sets_checked: u64,
    /// `None` when the hypothesis fails and the conclusion was not examined.
    pub conclusion_holds: Option<bool>,
    pub conclusion_witness: Option<DensityWitness>,
}

/// Digit `v` of `code` in base 3 places vertex `v` outside (0), in `U` (1)
/// or in `W` (2).
fn ternary_split(mut code: u64, n: usize) -> (u64, u64) {
    let (mut u, mut w) = (0u64, 0u64);
    for v in 0..n {
        match code % 3 {
            1 => u |= 1 << v,
            2 => w |= 1 << v,
            _ => {}
        }
        code /= 3;
    }
    (u, w)
}

fn parts(f: &Rational, eps: &Rational) -> Result<((i128, i128), (i128, i128)), VerifyError> {
    let f = f.to_i128_parts().ok_or_else(|| VerifyError::Domain("f out of range".into()))?;
    let e = eps.to_i128_parts().ok_or_else(|| VerifyError::Domain("eps out of range".into()))?;
    Ok((f, e))
}

/// Exhaustively checks density propagation: if every disjoint pair of
/// `alpha_n`-sets has density `(1 ± eps) f`, then so does every disjoint
/// pair of sets of size at least `alpha_n`, and every set of size at least
/// `2 alpha_n`.
pub fn verify_density_propagation(
    g: &Graph,
    alpha_n: usize,
    eps: &Rational,
    f: &Rational,
) -> Result<PropagationReport, VerifyError> {
    let n = g.n();
    if n > PROPAGATION_MAX_N {
        return Err(VerifyError::Domain(format!("propagation sweep supports n <= {PROPAGATION_MAX_N}, got {n}")));
    }
    if alpha_n == 0 || !f.is_positive() || !eps.is_positive() {
        return Err(VerifyError::Domain("alpha n, eps and f must be positive".into()));
    }
    let (fp, ep) = parts(f, eps)?;
    let adj = g.adjacency_masks().expect("n <= 16");
    let universe = full_mask(n);
    let pair_witness = |x: u64, y: u64, e: u64| DensityWitness {
        x: mask_to_vec(x),
        y: mask_to_vec(y),
        density: Rational::from((e, (x.count_ones() * y.count_ones()) as u64)),
    };

    let mut report = PropagationReport {
        alpha_n,
        hypothesis_holds: true,
        hypothesis_witness: None,
        pairs_checked: 0,
        sets_checked: 0,
        conclusion_holds: None,
        conclusion_witness: None,
    };
    for_each_disjoint_pair(universe, alpha_n, |x, y| {
        report.pairs_checked += 1;
        let e = cross_edges(&adj, x, y);
        if !within_relative(e, (alpha_n * alpha_n) as u64, fp, ep) {
            report.hypothesis_holds = false;
            report.hypothesis_witness = Some(pair_witness(x, y, e));
            return false;
        }
        true
    });
    if !report.hypothesis_holds {
        return Ok(report);
    }

    // Disjoint (U, W) as base-3 assignments over the vertices; each unordered
    // pair is seen twice, which is harmless for a universal check.
    let total = 3u64.pow(n as u32);
    let in_range = |(u, w): (u64, u64)| u.count_ones() as usize >= alpha_n && w.count_ones() as usize >= alpha_n;
    let bad_pair = (0..total).into_par_iter().map(|c| ternary_split(c, n)).find_first(|&(u, w)| {
        in_range((u, w)) && !within_relative(cross_edges(&adj, u, w), (u.count_ones() * w.count_ones()) as u64, fp, ep)
    });
    report.pairs_checked += (0..total).into_par_iter().filter(|&c| in_range(ternary_split(c, n))).count() as u64;
    if let Some((u, w)) = bad_pair {
        report.conclusion_holds = Some(false);
        report.conclusion_witness = Some(pair_witness(u, w, cross_edges(&adj, u, w)));
        return Ok(report);
    }

    let min_set = 2 * alpha_n;
    let mut sets = 0u64;
    let mut bad_set = None;
    for s in 0..=universe {
        let size = s.count_ones() as usize;
        if size < min_set.max(2) {
            continue;
        }
        sets += 1;
        let pairs = (size * (size - 1) / 2) as u64;
        let e = inner_edges(&adj, s);
        if !within_relative(e, pairs, fp, ep) {
            bad_set = Some(DensityWitness { x: mask_to_vec(s), y: Vec::new(), density: Rational::from((e, pairs)) });
            break;
        }
    }
    report.sets_checked = sets;
    report.conclusion_holds = Some(bad_set.is_none());
    report.conclusion_witness = bad_set;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeboostReport {
    pub mu_n: usize,
    pub beta_n: usize,
    /// `beta_n^2 / (2 mu_n)`.
    pub bound: Rational,
    pub hypothesis_holds: bool,
    /// A disjoint pair of `mu_n`-sets with no edge between them.
    pub hypothesis_witness: Option<(Vec<Vertex>, Vec<Vertex>)>,
    pub pairs_checked: u64,
    pub min_edges: Option<u64>,
    pub violations: u64,
    pub violation_witness: Option<(Vec<Vertex>, Vec<Vertex>, u64)>,
    /// `None` when the hypothesis fails.
    pub bound_holds: Option<bool>,
}

/// Exhaustively checks the edge boost on a graph with `alpha_n` vertices:
/// if every two disjoint `mu_n`-sets span an edge, every two disjoint
/// `beta_n`-sets span at least `beta_n^2 / (2 mu_n)` edges.
pub fn verify_edgeboost(g: &Graph, alpha_n: usize, beta_n: usize, mu_n: usize) -> Result<EdgeboostReport, VerifyError> {
    if g.n() != alpha_n {
        return Err(VerifyError::Domain(format!("graph has {} vertices, expected {alpha_n}", g.n())));
    }
    if mu_n == 0 || 2 * mu_n > beta_n || beta_n > alpha_n {
        return Err(VerifyError::Domain(format!(
            "need 0 < 2 mu_n <= beta_n <= alpha_n, got {mu_n}, {beta_n}, {alpha_n}"
        )));
    }
    let Some(adj) = g.adjacency_masks() else {
        return Err(VerifyError::Domain("exhaustive check supports at most 64 vertices".into()));
    };
    for (size, what) in [(mu_n, "mu"), (beta_n, "beta")] {
        let pairs = disjoint_pair_count(alpha_n as u64, size as u64);
        if pairs > EXHAUSTIVE_PAIR_BUDGET {
            log::debug!("{what}-pair sweep over budget");
            return Err(VerifyError::OverBudget { n: alpha_n, pairs });
        }
    }
    let universe = full_mask(alpha_n);
    let mut report = EdgeboostReport {
        mu_n,
        beta_n,
        bound: Rational::from(((beta_n * beta_n) as u64, (2 * mu_n) as u64)),
        hypothesis_holds: true,
        hypothesis_witness: None,
        pairs_checked: 0,
        min_edges: None,
        violations: 0,
        violation_witness: None,
        bound_holds: None,
    };
    for_each_disjoint_pair(universe, mu_n, |x, y| {
        if cross_edges(&adj, x, y) == 0 {
            report.hypothesis_holds = false;
            report.hypothesis_witness = Some((mask_to_vec(x), mask_to_vec(y)));
            return false;
        }
        true
    });
    if !report.hypothesis_holds {
        return Ok(report);
    }
    let need = (beta_n * beta_n) as u64;
    for_each_disjoint_pair(universe, beta_n, |x, y| {
        let e = cross_edges(&adj, x, y);
        report.pairs_checked += 1;
        report.min_edges = Some(report.min_edges.map_or(e, |m| m.min(e)));
        if 2 * mu_n as u64 * e < need {
            report.violations += 1;
            if report.violation_witness.is_none() {
                report.violation_witness = Some((mask_to_vec(x), mask_to_vec(y), e));
            }
        }
        true
    });
    report.bound_holds = Some(report.violations == 0);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_p::GoodQuadruple;

    fn params(an: u64, cn_num: i64, cn_den: i64, b: i64, t: usize, eps: Rational) -> ClassPParams {
        ClassPParams {
            quad: GoodQuadruple::new(
                Rational::from_integer(an as i64),
                Rational::from_integer(b),
                Rational::new(cn_num, cn_den),
                eps,
            ),
            t,
            n: 1,
        }
    }

    #[test]
    fn edgeless_fails_density() {
        let p = ClassPParams {
            quad: GoodQuadruple::new(
                Rational::one(),
                Rational::from_integer(3),
                Rational::new(1, 4),
                Rational::new(1, 2),
            ),
            t: 2,
            n: 12,
        };
        let r = verify_class_p(&Graph::empty(12), &p, VerifyMode::Exhaustive).unwrap();
        assert!(r.vertex_count_ok && r.degree_ok && r.girth_ok);
        assert!(!r.density.passed);
        assert!(!r.passed);
    }

    #[test]
    fn k5_fails_girth() {
        let p = params(5, 2, 1, 10, 2, Rational::new(1, 2));
        let r = verify_class_p(&Graph::complete(5), &p, VerifyMode::Exhaustive).unwrap();
        assert!(!r.girth_ok);
        assert_eq!(r.short_cycle.unwrap().len(), 3);
        assert!(r.density.passed);
    }

    #[test]
    fn tiny_cn_is_domain_error() {
        let p = params(5, 1, 1, 10, 2, Rational::new(1, 2));
        assert_eq!(
            verify_class_p(&Graph::complete(5), &p, VerifyMode::Exhaustive),
            Err(VerifyError::SetSizeTooSmall { cn: 1 })
        );
    }

    #[test]
    fn propagation_on_complete_graph() {
        let r = verify_density_propagation(&Graph::complete(8), 2, &Rational::new(1, 10), &Rational::one()).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.conclusion_holds, Some(true));
        assert!(r.sets_checked > 0);
    }

    #[test]
    fn propagation_two_cliques_fails_hypothesis() {
        let mut edges = Vec::new();
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((base + i, base + j));
                }
            }
        }
        let g = Graph::from_edges(8, edges).unwrap();
        let r = verify_density_propagation(&g, 2, &Rational::new(1, 2), &Rational::new(1, 2)).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(r.conclusion_holds.is_none());
        let w = r.hypothesis_witness.unwrap();
        assert!(w.density == Rational::zero() || w.density == Rational::one());
    }

    #[test]
    fn edgeboost_on_complete_graph() {
        let r = verify_edgeboost(&Graph::complete(8), 8, 4, 2).unwrap();
        assert_eq!(r.bound_holds, Some(true));
        assert_eq!(r.min_edges, Some(16));
        assert_eq!(r.bound, Rational::from_integer(4));
    }

    #[test]
    fn c5_meets_mu2_hypothesis_vacuously() {
        // any two disjoint 2-sets of C_5 cover a P_4, whose every 2+2 split has a cross edge
        let r = verify_edgeboost(&Graph::cycle(5), 5, 4, 2).unwrap();
        assert!(r.hypothesis_holds);
        assert_eq!(r.pairs_checked, 0);
        assert_eq!(r.bound_holds, Some(true));
    }

    #[test]
    fn c8_fails_mu2_hypothesis() {
        let r = verify_edgeboost(&Graph::cycle(8), 8, 4, 2).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(r.bound_holds.is_none());
        let (x, y) = r.hypothesis_witness.unwrap();
        assert_eq!(Graph::cycle(8).edges_between(&x, &y), 0);
    }

    #[test]
    fn edgeboost_rejects_bad_sizes() {
        assert!(verify_edgeboost(&Graph::complete(6), 6, 3, 2).is_err());
        assert!(verify_edgeboost(&Graph::complete(6), 5, 4, 2).is_err());
    }
}

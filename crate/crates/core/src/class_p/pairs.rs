use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::rational::Rational;
use crate::subsets::{cross_edges, disjoint_partners, for_each_k_subset, k_subsets, mask_to_vec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Edge counts `e(X, Y)` over a family of disjoint pairs of equal size,
/// with the extreme pairs kept as witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairStats {
    pub set_size: usize,
    pub count: u64,
    pub sum: u128,
    pub min: Option<(u64, Vec<Vertex>, Vec<Vertex>)>,
    pub max: Option<(u64, Vec<Vertex>, Vec<Vertex>)>,
}

#[derive(Clone, Copy)]
struct MaskStats {
    count: u64,
    sum: u128,
    min: (u64, u64, u64),
    max: (u64, u64, u64),
}

impl MaskStats {
    fn empty() -> Self {
        MaskStats { count: 0, sum: 0, min: (u64::MAX, 0, 0), max: (0, 0, 0) }
    }

    fn push(&mut self, e: u64, x: u64, y: u64) {
        if self.count == 0 || e > self.max.0 {
            self.max = (e, x, y);
        }
        if e < self.min.0 {
            self.min = (e, x, y);
        }
        self.count += 1;
        self.sum += e as u128;
    }

    /// Order-respecting merge: ties keep the left (earlier) witness.
    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        MaskStats {
            count: self.count + other.count,
            sum: self.sum + other.sum,
            min: if other.min.0 < self.min.0 { other.min } else { self.min },
            max: if other.max.0 > self.max.0 { other.max } else { self.max },
        }
    }
}

/// Every unordered disjoint pair of `s`-subsets of the masked vertex set.
/// Parallel over the first set; aggregation follows canonical pair order.
pub(crate) fn exhaustive_stats(adj: &[u64], universe: u64, s: usize) -> PairStats {
    let firsts = k_subsets(universe, s);
    let agg = firsts
        .par_iter()
        .map(|&x| {
            let mut st = MaskStats::empty();
            for_each_k_subset(disjoint_partners(universe, x), s, |y| {
                st.push(cross_edges(adj, x, y), x, y);
                true
            });
            st
        })
        .reduce(MaskStats::empty, MaskStats::merge);
    PairStats {
        set_size: s,
        count: agg.count,
        sum: agg.sum,
        min: (agg.count > 0).then(|| (agg.min.0, mask_to_vec(agg.min.1), mask_to_vec(agg.min.2))),
        max: (agg.count > 0).then(|| (agg.max.0, mask_to_vec(agg.max.1), mask_to_vec(agg.max.2))),
    }
}

/// `count` uniformly random disjoint pairs of `s`-subsets of `vertices`.
pub(crate) fn sampled_stats(g: &Graph, vertices: &[Vertex], s: usize, count: usize, seed: u64) -> PairStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = PairStats { set_size: s, count: 0, sum: 0, min: None, max: None };
    if 2 * s > vertices.len() {
        return stats;
    }
    for _ in 0..count {
        let idx = sample(&mut rng, vertices.len(), 2 * s).into_vec();
        let mut x: Vec<Vertex> = idx[..s].iter().map(|&i| vertices[i]).collect();
        let mut y: Vec<Vertex> = idx[s..].iter().map(|&i| vertices[i]).collect();
        x.sort_unstable();
        y.sort_unstable();
        let e = g.edges_between(&x, &y) as u64;
        if stats.max.as_ref().is_none_or(|m| e > m.0) {
            stats.max = Some((e, x.clone(), y.clone()));
        }
        if stats.min.as_ref().is_none_or(|m| e < m.0) {
            stats.min = Some((e, x, y));
        }
        stats.count += 1;
        stats.sum += e as u128;
    }
    stats
}

/// Witnessed density for condition (iii): some `f > 0` with every checked
/// pair density within `(1 ± eps) f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityCertificate {
    pub f_g: Rational,
    pub mode: CertMode,
    pub max_rel_dev: Rational,
    pub passed: bool,
    pub pairs_checked: u64,
    /// Intersection of `[d / (1 + eps), d / (1 - eps)]` over checked pairs;
    /// the upper end is unbounded when `eps >= 1`.
    pub feasible_interval: Option<(Rational, Option<Rational>)>,
    pub mean_density: Option<Rational>,
    pub worst_pair: Option<(Vec<Vertex>, Vec<Vertex>)>,
    /// No disjoint pair of the required size exists.
    pub vacuous: bool,
}

fn rel_dev(e: u64, s2: u64, f: &Rational) -> Rational {
    let d = Rational::from((e, s2));
    let diff = if d >= *f { &d - f } else { f - &d };
    &diff / f
}

impl DensityCertificate {
    fn vacuous(mode: CertMode) -> Self {
        DensityCertificate {
            f_g: Rational::one(),
            mode,
            max_rel_dev: Rational::zero(),
            passed: true,
            pairs_checked: 0,
            feasible_interval: None,
            mean_density: None,
            worst_pair: None,
            vacuous: true,
        }
    }

    /// Fits `f_G`: the mean pair density when it works, otherwise the lower
    /// end of the feasible interval when that is nonempty.
    pub fn fit(stats: &PairStats, eps: &Rational, mode: CertMode) -> Self {
        let (Some(min), Some(max)) = (&stats.min, &stats.max) else {
            return Self::vacuous(mode);
        };
        let s2 = (stats.set_size * stats.set_size) as u64;
        let one = Rational::one();
        let d_min = Rational::from((min.0, s2));
        let d_max = Rational::from((max.0, s2));
        let lo = &d_max / &(&one + eps);
        let feasible = if max.0 == 0 {
            None
        } else if *eps < one {
            let hi = &d_min / &(&one - eps);
            (lo <= hi).then_some((lo.clone(), Some(hi)))
        } else {
            Some((lo.clone(), None))
        };
        let mean = Rational(num_rational::BigRational::new(
            stats.sum.into(),
            (num_bigint::BigInt::from(stats.count)) * num_bigint::BigInt::from(s2),
        ));
        let mean_ok = mean.is_positive() && rel_dev(min.0, s2, &mean) <= *eps && rel_dev(max.0, s2, &mean) <= *eps;
        let f = if mean_ok || feasible.is_none() { mean.clone() } else { lo };
        let (dev, worst) = if f.is_positive() {
            let dl = rel_dev(min.0, s2, &f);
            let dh = rel_dev(max.0, s2, &f);
            if dh >= dl {
                (dh, (max.1.clone(), max.2.clone()))
            } else {
                (dl, (min.1.clone(), min.2.clone()))
            }
        } else {
            (Rational::one(), (max.1.clone(), max.2.clone()))
        };
        let passed = f.is_positive() && dev <= *eps;
        DensityCertificate {
            f_g: f,
            mode,
            max_rel_dev: dev,
            passed,
            pairs_checked: stats.count,
            feasible_interval: feasible,
            mean_density: Some(mean),
            worst_pair: Some(worst),
            vacuous: false,
        }
    }

    /// Certifies against a prescribed density `target` with relative
    /// tolerance `tol`.
    pub fn against(stats: &PairStats, target: &Rational, tol: &Rational, mode: CertMode) -> Self {
        let (Some(min), Some(max)) = (&stats.min, &stats.max) else {
            let mut c = Self::vacuous(mode);
            c.f_g = target.clone();
            return c;
        };
        let s2 = (stats.set_size * stats.set_size) as u64;
        let dl = rel_dev(min.0, s2, target);
        let dh = rel_dev(max.0, s2, target);
        let (dev, worst) =
            if dh >= dl { (dh, (max.1.clone(), max.2.clone())) } else { (dl, (min.1.clone(), min.2.clone())) };
        DensityCertificate {
            f_g: target.clone(),
            mode,
            passed: target.is_positive() && dev <= *tol,
            max_rel_dev: dev,
            pairs_checked: stats.count,
            feasible_interval: None,
            mean_density: None,
            worst_pair: Some(worst),
            vacuous: false,
        }
    }
}

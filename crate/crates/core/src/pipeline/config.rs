use serde::{Deserialize, Serialize};

use crate::class_p::{ClassPConfig, GenerationMode};
use crate::colouring::EdgeColouring;
use crate::graph::Vertex;
use crate::partition::PartitionMode;
use crate::rational::Rational;

/// Largest host the driver will build, in edges.
pub const MAX_HOST_EDGES: u128 = 20_000_000;

/// Where the base graph `G` comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseSpec {
    ClassP(ClassPConfig),
    Edges { n: usize, edges: Vec<(Vertex, Vertex)> },
}

/// How the host is coloured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ColouringSpec {
    Monochromatic {
        colour: u8,
    },
    Random {
        seed: u64,
    },
    /// Colour 0 inside every blow-up clique, a random other colour on each
    /// edge between cliques.
    Adversarial {
        seed: u64,
    },
    Explicit(EdgeColouring),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    pub partition_mode: PartitionMode,
    pub blue_path_steps: u64,
    pub long_path_steps: u64,
    /// The resampling cap is this times the number of template edges.
    pub lll_resamples_per_edge: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            partition_mode: PartitionMode::Auto,
            blue_path_steps: 2_000_000,
            long_path_steps: 2_000_000,
            lll_resamples_per_edge: 100,
        }
    }
}

fn one() -> Rational {
    Rational::one()
}

/// One induction step at toy scale. The host is the sheared blow-up of
/// `G^R` by `clique_size`, with `R = t r` unless `big_r` overrides it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepConfig {
    pub k: usize,
    pub s: usize,
    pub r: usize,
    pub t: usize,
    /// Length of the sought path power `P_n^k`.
    pub n: usize,
    pub base: BaseSpec,
    /// `T`.
    pub clique_size: usize,
    /// `T'`.
    pub subclique_size: usize,
    #[serde(default)]
    pub big_r: Option<usize>,
    pub colouring: ColouringSpec,
    /// Segments on the long path.
    pub segments: usize,
    /// Segments discarded after sparsifying; half of `segments` by default.
    #[serde(default)]
    pub prune: Option<usize>,
    #[serde(default = "one")]
    pub sparsify_p: Rational,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budgets: Budgets,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("config field `{field}`: {message}")]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    fn new(field: &'static str, message: impl Into<String>) -> Self {
        ConfigError { field, message: message.into() }
    }
}

impl StepConfig {
    pub fn big_r(&self) -> usize {
        self.big_r.unwrap_or(self.t * self.r)
    }

    pub fn prune(&self) -> usize {
        self.prune.unwrap_or(self.segments / 2)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (field, v) in [("k", self.k), ("s", self.s), ("r", self.r), ("t", self.t), ("n", self.n)] {
            if v == 0 {
                return Err(ConfigError::new(field, "must be positive"));
            }
        }
        if self.s > 36 {
            return Err(ConfigError::new("s", "at most 36 colours"));
        }
        if self.s >= 2 && self.t < 2 {
            return Err(ConfigError::new("t", "must be at least 2 when s >= 2"));
        }
        if self.big_r() == 0 {
            return Err(ConfigError::new("big_r", "must be positive"));
        }
        if self.subclique_size > self.clique_size {
            return Err(ConfigError::new("subclique_size", "exceeds clique_size"));
        }
        if self.s == 1 {
            if self.clique_size <= self.k {
                return Err(ConfigError::new("clique_size", "must exceed k"));
            }
            if self.big_r() < self.k {
                return Err(ConfigError::new("big_r", "must be at least k"));
            }
        } else if self.subclique_size < 2 * self.k {
            return Err(ConfigError::new("subclique_size", "must be at least 2k"));
        }
        if self.s >= 2 && self.segments == 0 {
            return Err(ConfigError::new("segments", "must be positive"));
        }
        if self.prune() >= self.segments.max(1) && self.s >= 2 {
            return Err(ConfigError::new("prune", "must leave at least one segment"));
        }
        if !self.sparsify_p.is_positive() || self.sparsify_p > Rational::one() {
            return Err(ConfigError::new("sparsify_p", "must lie in (0, 1]"));
        }
        let b = &self.budgets;
        for (field, v) in [
            ("budgets.blue_path_steps", b.blue_path_steps),
            ("budgets.long_path_steps", b.long_path_steps),
            ("budgets.lll_resamples_per_edge", b.lll_resamples_per_edge),
        ] {
            if v == 0 {
                return Err(ConfigError::new(field, "must be positive"));
            }
        }
        match &self.base {
            BaseSpec::ClassP(c) if c.mode == GenerationMode::Toy && c.p.is_none() => {
                return Err(ConfigError::new("base.class_p.p", "toy mode needs p"));
            }
            BaseSpec::Edges { n, edges } => {
                if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= *n || v >= *n || u == v) {
                    return Err(ConfigError::new("base.edges.edges", format!("bad edge ({u}, {v})")));
                }
            }
            _ => {}
        }
        if let ColouringSpec::Explicit(chi) = &self.colouring {
            if chi.s() != self.s {
                return Err(ConfigError::new("colouring.explicit", "colour count differs from s"));
            }
        }
        if let ColouringSpec::Monochromatic { colour } = self.colouring {
            if colour as usize >= self.s {
                return Err(ConfigError::new("colouring.monochromatic.colour", "outside 0..s"));
            }
        }
        Ok(())
    }

    /// Toy preset: a 30-vertex cycle with chords of length 7 and 15,
    /// `k = 1`, `s = 2`, `t = 2`, `r = 1`, cliques of 6 with monochromatic
    /// triangles, and `R = t(r + 1) - 1 = 3` so that segments at distance
    /// `r` in `h` are always joined in `J`. Satisfies none of the
    /// asymptotic hypotheses; every stage is checked on its own terms.
    pub fn toy(colouring: ColouringSpec, seed: u64) -> Self {
        let n = 30;
        let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).map(|i| (i, (i + 7) % n)));
        edges.extend((0..n).step_by(2).map(|i| (i, (i + 15) % n)));
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect::<std::collections::BTreeSet<_>>();
        StepConfig {
            k: 1,
            s: 2,
            r: 1,
            t: 2,
            n: 6,
            base: BaseSpec::Edges { n, edges: edges.into_iter().collect() },
            clique_size: 6,
            subclique_size: 3,
            big_r: Some(3),
            colouring,
            segments: 6,
            prune: None,
            sparsify_p: Rational::one(),
            seed,
            budgets: Budgets::default(),
        }
    }
}

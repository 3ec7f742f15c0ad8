//! The pseudorandom class `P(a, b, c, t, eps, n)`: parameter types, the
//! good-quadruple test, generation of members from binomial random graphs,
//! and verifiers for the class conditions and the two density propositions.

mod generate;
mod pairs;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

pub use generate::{
    clean_short_cycles, generate_class_p, prune_max_degree, sample_binomial, CycleCleaning, GenerateError,
    GenerationLog, CERTIFICATION_RETRIES,
};
pub use pairs::{CertMode, DensityCertificate, PairStats};
pub use verify::{
    certify_pairs, verify_class_p, verify_density_propagation, verify_edgeboost, ClassPReport, EdgeboostReport,
    PropagationReport, VerifyError, VerifyMode, EXHAUSTIVE_PAIR_BUDGET,
};

/// `(a, b, c, eps)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodQuadruple {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub eps: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum GoodnessFailure {
    /// `a >= 2c + 1` fails.
    ATooSmall {
        a: Rational,
        required: Rational,
    },
    /// `b >= 264 a^2 / (eps^2 c^2)` fails.
    BTooSmall {
        b: Rational,
        required: Rational,
    },
    /// `eps < 1/10` fails.
    EpsTooLarge {
        eps: Rational,
    },
    NonPositive {
        field: &'static str,
    },
}

impl fmt::Display for GoodnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodnessFailure::ATooSmall { a, required } => write!(f, "a >= 2c+1 fails: a = {a} < {required}"),
            GoodnessFailure::BTooSmall { b, required } => {
                write!(f, "b >= 264 a^2 eps^-2 c^-2 fails: b = {b} < {required}")
            }
            GoodnessFailure::EpsTooLarge { eps } => write!(f, "eps < 1/10 fails: eps = {eps}"),
            GoodnessFailure::NonPositive { field } => write!(f, "{field} must be positive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub good: bool,
    pub failures: Vec<GoodnessFailure>,
}

impl GoodQuadruple {
    pub fn new(a: Rational, b: Rational, c: Rational, eps: Rational) -> Self {
        GoodQuadruple { a, b, c, eps }
    }

    /// The smallest admissible degree bound `264 a^2 / (eps^2 c^2)`.
    pub fn min_b(&self) -> Rational {
        Rational::from(264u64) * self.a.pow(2) / (self.eps.pow(2) * self.c.pow(2))
    }

    pub fn is_good(&self) -> GoodnessReport {
        is_good(self)
    }
}

pub fn is_good(q: &GoodQuadruple) -> GoodnessReport {
    let mut failures = Vec::new();
    for (field, v) in [("a", &q.a), ("b", &q.b), ("c", &q.c), ("eps", &q.eps)] {
        if !v.is_positive() {
            failures.push(GoodnessFailure::NonPositive { field });
        }
    }
    if !failures.is_empty() {
        return GoodnessReport { good: false, failures };
    }
    let a_needed = Rational::from(2u64) * q.c.clone() + Rational::one();
    if q.a < a_needed {
        failures.push(GoodnessFailure::ATooSmall { a: q.a.clone(), required: a_needed });
    }
    let b_needed = q.min_b();
    if q.b < b_needed {
        failures.push(GoodnessFailure::BTooSmall { b: q.b.clone(), required: b_needed });
    }
    if q.eps >= Rational::new(1, 10) {
        failures.push(GoodnessFailure::EpsTooLarge { eps: q.eps.clone() });
    }
    GoodnessReport { good: failures.is_empty(), failures }
}

/// `(quad, t, n)` with the rounding rule `x n -> floor(x n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPParams {
    pub quad: GoodQuadruple,
    pub t: usize,
    pub n: u64,
}

impl ClassPParams {
    pub fn an(&self) -> u64 {
        self.quad.a.floor_times(self.n).unwrap_or(0)
    }

    pub fn cn(&self) -> u64 {
        self.quad.c.floor_times(self.n).unwrap_or(0)
    }

    /// Vertex count of the binomial sample, `floor(2 a n)`.
    pub fn sample_size(&self) -> u64 {
        (Rational::from(2u64) * self.quad.a.clone()).floor_times(self.n).unwrap_or(0)
    }

    /// Degree bound as an integer: `floor(b)`.
    pub fn degree_bound(&self) -> u64 {
        self.quad.b.floor_u64().unwrap_or(u64::MAX)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerationMode {
    /// `p = 60 a / (eps^2 c^2 n)`, refused when it exceeds one.
    Paper,
    /// Caller-supplied `p`.
    Toy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationConfig {
    /// Edge probability; required in toy mode, ignored in paper mode.
    pub p: Option<Rational>,
    pub seed: u64,
    pub mode: GenerationMode,
    /// Pairs drawn when exhaustive certification is out of budget.
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_samples() -> usize {
    2000
}

impl GenerationConfig {
    pub fn toy(p: Rational, seed: u64) -> Self {
        GenerationConfig { p: Some(p), seed, mode: GenerationMode::Toy, samples: default_samples() }
    }

    pub fn paper(seed: u64) -> Self {
        GenerationConfig { p: None, seed, mode: GenerationMode::Paper, samples: default_samples() }
    }
}

/// `60 a / (eps^2 c^2 n)`.
pub fn paper_edge_probability(params: &ClassPParams) -> Rational {
    let q = &params.quad;
    Rational::from(60u64) * q.a.clone() / (q.eps.pow(2) * q.c.pow(2) * Rational::from(params.n))
}

/// The flat JSON document accepted by the `gen` and `verify-p` commands:
/// `{a, b, c, eps, t, n, p, seed, mode}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassPConfig {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub eps: Rational,
    pub t: usize,
    pub n: u64,
    #[serde(default)]
    pub p: Option<Rational>,
    #[serde(default)]
    pub seed: u64,
    pub mode: GenerationMode,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl ClassPConfig {
    pub fn params(&self) -> ClassPParams {
        ClassPParams {
            quad: GoodQuadruple::new(self.a.clone(), self.b.clone(), self.c.clone(), self.eps.clone()),
            t: self.t,
            n: self.n,
        }
    }

    pub fn generation(&self) -> GenerationConfig {
        GenerationConfig { p: self.p.clone(), seed: self.seed, mode: self.mode, samples: self.samples }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("Chernoff deviation must lie in (0, 3/2], got {0}")]
pub struct ChernoffDomainError(pub f64);

/// `2 exp(-(eps^2 / 3) E[X])`, the two-sided tail bound for a sum of
/// independent Bernoulli variables.
pub fn chernoff_bound(eps: f64, expectation: f64) -> Result<f64, ChernoffDomainError> {
    if !(eps > 0.0 && eps <= 1.5) {
        return Err(ChernoffDomainError(eps));
    }
    Ok(2.0 * (-(eps * eps / 3.0) * expectation).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(a: i64, b: i64, c: i64, eps: Rational) -> GoodQuadruple {
        GoodQuadruple::new(Rational::from_integer(a), Rational::from_integer(b), Rational::from_integer(c), eps)
    }

    #[test]
    fn goodness_examples() {
        // 264 * 9 * 400 = 950400 exactly
        let q = quad(3, 950_400, 1, Rational::new(1, 20));
        assert_eq!(q.min_b(), Rational::from_integer(950_400));
        assert!(is_good(&q).good);

        let r = is_good(&quad(3, 1000, 1, Rational::new(1, 20)));
        assert!(!r.good);
        assert!(matches!(r.failures.as_slice(), [GoodnessFailure::BTooSmall { .. }]));

        let r = is_good(&quad(2, 1_000_000_000, 1, Rational::new(1, 20)));
        assert!(matches!(r.failures.as_slice(), [GoodnessFailure::ATooSmall { .. }]));

        let r = is_good(&quad(3, 1_000_000_000, 1, Rational::new(1, 10)));
        assert!(matches!(r.failures.as_slice(), [GoodnessFailure::EpsTooLarge { .. }]));
        assert!(r.failures[0].to_string().contains("eps < 1/10"));
    }

    #[test]
    fn rounding_rule() {
        let p = ClassPParams { quad: quad(3, 1, 1, Rational::new(1, 20)), t: 2, n: 7 };
        assert_eq!((p.an(), p.cn(), p.sample_size()), (21, 7, 42));
        let p = ClassPParams {
            quad: GoodQuadruple::new(Rational::new(5, 2), Rational::one(), Rational::new(1, 3), Rational::new(1, 20)),
            t: 2,
            n: 7,
        };
        assert_eq!((p.an(), p.cn(), p.sample_size()), (17, 2, 35));
    }

    #[test]
    fn paper_probability_exceeds_one_at_desk_scale() {
        let p = ClassPParams { quad: quad(3, 950_400, 1, Rational::new(1, 20)), t: 2, n: 200 };
        assert_eq!(paper_edge_probability(&p), Rational::from_integer(360));
    }

    #[test]
    fn chernoff_examples() {
        let v = chernoff_bound(1.0, 3.0).unwrap();
        assert!((v - 2.0 * (-1.0f64).exp()).abs() < 1e-12);
        assert!((v - 0.735_759).abs() < 1e-6);
        let v = chernoff_bound(1.5, 4.0).unwrap();
        assert!((v - 0.099_574).abs() < 1e-6);
        assert!((chernoff_bound(1e-9, 1.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(chernoff_bound(0.0, 1.0).is_err());
        assert!(chernoff_bound(1.6, 1.0).is_err());
    }

    #[test]
    fn chernoff_monotone_on_grid() {
        let eps: Vec<f64> = (1..=30).map(|i| i as f64 * 0.05).collect();
        let ex: Vec<f64> = (1..=40).map(|i| i as f64 * 0.5).collect();
        for &e in &eps {
            for w in ex.windows(2) {
                assert!(chernoff_bound(e, w[1]).unwrap() < chernoff_bound(e, w[0]).unwrap());
            }
        }
        for &x in &ex {
            for w in eps.windows(2) {
                assert!(chernoff_bound(w[1], x).unwrap() < chernoff_bound(w[0], x).unwrap());
            }
        }
    }

    #[test]
    fn config_document_parses() {
        let cfg: ClassPConfig = serde_json::from_str(
            r#"{"a":2,"b":"100","c":"1/4","eps":0.05,"t":2,"n":40,"p":0.5,"seed":7,"mode":"toy"}"#,
        )
        .unwrap();
        assert_eq!(cfg.params().an(), 80);
        assert_eq!(cfg.params().cn(), 10);
        assert_eq!(cfg.generation().p, Some(Rational::new(1, 2)));
        assert!(serde_json::from_str::<ClassPConfig>(
            r#"{"a":2,"b":1,"c":1,"eps":0.1,"t":2,"n":4,"mode":"toy","x":1}"#
        )
        .is_err());
    }
}

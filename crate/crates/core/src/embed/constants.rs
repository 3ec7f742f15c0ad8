use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::class_p::{is_good, GoodQuadruple, GoodnessReport};
use crate::rational::Rational;

/// Largest `s * T' * log2(s)` for which `T` is expanded exactly.
pub const EXACT_T_MAX_BITS: f64 = 1e6;

/// `T = s^(s T')`, exact when small enough, otherwise kept as a power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueSize {
    Exact(BigUint),
    Power { base: u64, exponent: BigUint },
}

impl CliqueSize {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            CliqueSize::Exact(v) => Some(v),
            CliqueSize::Power { .. } => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.exact()?.to_usize()
    }
}

impl Serialize for CliqueSize {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CliqueSize::Exact(v) => serializer.collect_str(v),
            CliqueSize::Power { base, exponent } => serializer.collect_str(&format_args!("{base}^{exponent}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueSizes {
    #[serde(serialize_with = "ser_display")]
    pub t_prime: BigUint,
    /// `log_s T = s T'`.
    #[serde(serialize_with = "ser_display")]
    pub log_s_t: BigUint,
    pub t: CliqueSize,
    /// Decimal digits of `T`; a floating-point estimate (flagged) when `T`
    /// is symbolic.
    pub t_decimal_digits: String,
    pub t_digits_exact: bool,
}

fn ser_display<S: Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsChain {
    pub k: u64,
    pub s: u64,
    pub r: u64,
    pub t: u64,
    pub quad: GoodQuadruple,
    pub d0: Rational,
    #[serde(rename = "A")]
    pub big_a: Rational,
    #[serde(rename = "C")]
    pub big_c: Rational,
    #[serde(rename = "R")]
    pub big_r: u64,
    pub delta: Rational,
    #[serde(rename = "B")]
    pub big_b: Rational,
    pub gamma: Rational,
    pub sizes: CliqueSizes,
    pub derived_goodness: GoodnessReport,
}

impl ConstantsChain {
    /// `(A, B, C, delta)`.
    pub fn derived_quad(&self) -> GoodQuadruple {
        GoodQuadruple::new(self.big_a.clone(), self.big_b.clone(), self.big_c.clone(), self.delta.clone())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("input quadruple is not good: {0:?}")]
    NotGood(GoodnessReport),
    #[error("b = {0} must be an integer")]
    NonIntegerB(Rational),
    #[error("derived quadruple is not good: {0:?}")]
    DerivedNotGood(GoodnessReport),
}

/// `T' = b^(2rk) t^(2k)` and `T = s^(s T')`.
pub fn clique_sizes(b: u64, r: u64, k: u64, t: u64, s: u64) -> CliqueSizes {
    let pow = |base: u64, e: u64| BigUint::from(base).pow(u32::try_from(e).expect("exponent fits in u32"));
    let t_prime = pow(b, 2 * r * k) * pow(t, 2 * k);
    let log_s_t = BigUint::from(s) * &t_prime;
    let bits = log_s_t.to_f64().unwrap_or(f64::INFINITY) * (s as f64).log2();
    if bits <= EXACT_T_MAX_BITS {
        let exponent = log_s_t.to_u32().expect("bounded by the bit cap");
        let value = BigUint::from(s).pow(exponent);
        let digits = value.to_string().len().to_string();
        CliqueSizes { t_prime, log_s_t, t: CliqueSize::Exact(value), t_decimal_digits: digits, t_digits_exact: true }
    } else {
        let digits = format!("{:.6e}", (log_s_t.to_f64().unwrap_or(f64::INFINITY) * (s as f64).log10()).floor() + 1.0);
        let t = CliqueSize::Power { base: s, exponent: log_s_t.clone() };
        CliqueSizes { t_prime, log_s_t, t, t_decimal_digits: digits, t_digits_exact: false }
    }
}

/// The constants chain of the induction step:
/// `A = 2 d0 (a+1) s t`, `C = min(1/(2st), eps^2 c^2 / (240 a))`, `R = t r`,
/// `delta = eps / 2`, `B = 264 A^2 / (delta^2 C^2)`, `gamma = 1/(2t)`, plus
/// the clique sizes `T'` and `T`.
pub fn constants_chain(
    k: u64,
    s: u64,
    r: u64,
    t: u64,
    quad: &GoodQuadruple,
    d0: &Rational,
) -> Result<ConstantsChain, ConstantsError> {
    for (name, v) in [("k", k), ("s", s), ("r", r), ("t", t)] {
        if v == 0 {
            return Err(ConstantsError::NonPositive(name));
        }
    }
    if !d0.is_positive() {
        return Err(ConstantsError::NonPositive("d0"));
    }
    let report = is_good(quad);
    if !report.good {
        return Err(ConstantsError::NotGood(report));
    }
    if !quad.b.is_integer() {
        return Err(ConstantsError::NonIntegerB(quad.b.clone()));
    }
    let b = quad.b.floor_u64().ok_or_else(|| ConstantsError::NonIntegerB(quad.b.clone()))?;
    let (sr, tr) = (Rational::from(s), Rational::from(t));
    let two = Rational::from(2u64);
    let big_a = &(&(&two * d0) * &(&quad.a + &Rational::one())) * &(&sr * &tr);
    let eps_c_sq = &quad.eps.pow(2) * &quad.c.pow(2);
    let big_c = (&two * &(&sr * &tr)).recip().min(&eps_c_sq / &(&Rational::from(240u64) * &quad.a));
    let delta = &quad.eps / &two;
    let big_b = &(&Rational::from(264u64) * &big_a.pow(2)) / &(&delta.pow(2) * &big_c.pow(2));
    let gamma = (&two * &tr).recip();
    let sizes = clique_sizes(b, r, k, t, s);
    let mut chain = ConstantsChain {
        k,
        s,
        r,
        t,
        quad: quad.clone(),
        d0: d0.clone(),
        big_a,
        big_c,
        big_r: t * r,
        delta,
        big_b,
        gamma,
        sizes,
        derived_goodness: GoodnessReport { good: false, failures: Vec::new() },
    };
    chain.derived_goodness = is_good(&chain.derived_quad());
    if !chain.derived_goodness.good {
        return Err(ConstantsError::DerivedNotGood(chain.derived_goodness));
    }
    Ok(chain)
}

//! Analytic envelopes `c1(n) e^{f(n)} < F(n) < c2(n) e^{f(n)}`, evaluated
//! with rigorous interval arithmetic, and their certification against exact
//! sequence values.

mod certify;
pub mod config;
mod families;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{IntervalError, RealInterval};
use crate::seq_core::SeqError;

pub use certify::{certify_envelope, certify_sequence, CertificationReport, EnvelopeFailure, Side};
pub use families::{
    binomial_bracket, calibrate_wright_beta, chen_c1, chen_c2, chen_envelope, chen_mu, fit_mahler_constants,
    lehmer_envelope, mahler_envelope, mahler_exponent, mahler_log_ratio, wright_envelope, MahlerParams,
    WrightParams,
};

#[derive(Debug, Error)]
pub enum EnvelopeError {
    #[error("precision cap of {cap} bits reached without a conclusive comparison")]
    PrecisionExhausted { cap: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error("config error: {0}")]
    Config(String),
}

/// A real-valued map on positive integers, evaluated at a requested number
/// of fractional bits.
pub type RealMap = Arc<dyn Fn(u64, u32) -> Result<RealInterval, IntervalError> + Send + Sync>;

pub fn real_map<F>(f: F) -> RealMap
where
    F: Fn(u64, u32) -> Result<RealInterval, IntervalError> + Send + Sync + 'static,
{
    Arc::new(f)
}

/// The map `n -> q` for an exact rational constant.
pub fn constant_map(q: BigRational) -> RealMap {
    real_map(move |_, prec| Ok(RealInterval::from_rational(&q, prec)))
}

/// Precision escalation policy: start at `start` fractional bits and double
/// up to `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start: 64, cap: 4096 }
    }
}

impl PrecisionPolicy {
    pub fn with_cap(cap: u32) -> Self {
        PrecisionPolicy { cap: cap.max(64), ..Self::default() }
    }

    pub fn levels(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap;
        std::iter::successors(Some(self.start), move |&p| (p < cap).then(|| (p * 2).min(cap)))
    }
}

/// Outcome of a comparison under escalation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Settled<T> {
    Decided { value: T, precision: u32 },
    Unresolved { precision: u32 },
}

/// Retries `attempt` at increasing precision until it returns `Some`.
/// [`IntervalError::ContainsZero`] counts as "not yet resolved"; other
/// interval errors abort.
pub fn escalate<T>(
    policy: &PrecisionPolicy,
    mut attempt: impl FnMut(u32) -> Result<Option<T>, IntervalError>,
) -> Result<Settled<T>, IntervalError> {
    let mut last = policy.start;
    for prec in policy.levels() {
        last = prec;
        match attempt(prec) {
            Ok(Some(value)) => return Ok(Settled::Decided { value, precision: prec }),
            Ok(None) | Err(IntervalError::ContainsZero) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(Settled::Unresolved { precision: last })
}

/// An analytic two-sided bound for a sequence, valid (as claimed) from `n0`.
#[derive(Clone)]
pub struct BoundEnvelope {
    pub label: String,
    pub f: RealMap,
    pub c1: RealMap,
    pub c2: RealMap,
    pub n0: u64,
}

impl fmt::Debug for BoundEnvelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundEnvelope")
            .field("label", &self.label)
            .field("n0", &self.n0)
            .finish_non_exhaustive()
    }
}

impl BoundEnvelope {
    pub fn lower(&self, n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
        Ok(&(self.c1)(n, prec)? * &(self.f)(n, prec)?.exp())
    }

    pub fn upper(&self, n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
        Ok(&(self.c2)(n, prec)? * &(self.f)(n, prec)?.exp())
    }

    pub fn bounds(&self, n: u64, prec: u32) -> Result<(RealInterval, RealInterval), IntervalError> {
        let e = (self.f)(n, prec)?.exp();
        Ok((&(self.c1)(n, prec)? * &e, &(self.c2)(n, prec)? * &e))
    }

    /// `(sqrt(3) / 12n)(1 -+ 1/sqrt(n)) e^{(pi/6) sqrt(24n - 1)}`, claimed for all n >= 1.
    pub fn lehmer() -> Self {
        BoundEnvelope {
            label: "lehmer".into(),
            f: real_map(chen_mu),
            c1: real_map(|n, p| families::lehmer_c(n, p, -1)),
            c2: real_map(|n, p| families::lehmer_c(n, p, 1)),
            n0: 1,
        }
    }

    /// `(sqrt(12)/(24n - 1))(1 - 1/mu -+ 1/mu^3) e^{mu(n)}`, claimed from n = 37.
    pub fn chen() -> Self {
        BoundEnvelope {
            label: "chen".into(),
            f: real_map(chen_mu),
            c1: real_map(chen_c1),
            c2: real_map(chen_c2),
            n0: 37,
        }
    }

    pub fn wright(params: &WrightParams) -> Self {
        let gamma = params.gamma.value().clone();
        let (p1, p2) = (params.clone(), params.clone());
        BoundEnvelope {
            label: "wright".into(),
            f: real_map(move |n, p| families::wright_exponent(&gamma, n, p)),
            c1: real_map(move |n, p| families::wright_c(&p1, n, p, -1)),
            c2: real_map(move |n, p| families::wright_c(&p2, n, p, 1)),
            n0: params.n_start,
        }
    }

    pub fn mahler(params: &MahlerParams) -> Self {
        let m = params.m;
        BoundEnvelope {
            label: format!("mahler:{m}"),
            f: real_map(move |n, p| mahler_exponent(m, n, p)),
            c1: constant_map(params.c1.value().clone()),
            c2: constant_map(params.c2.value().clone()),
            n0: params.n_start,
        }
    }
}

/// A named exact constant that keeps its source text (decimal or fraction).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Constant {
    text: String,
    value: BigRational,
}

impl Constant {
    pub fn parse(text: &str) -> Result<Self, EnvelopeError> {
        let value = RealInterval::parse_rational(text)?;
        Ok(Constant { text: text.trim().to_string(), value })
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        let value = BigRational::new(BigInt::from(num), BigInt::from(den));
        let text = if den == 1 { num.to_string() } else { format!("{num}/{den}") };
        Constant { text, value }
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn interval(&self, prec: u32) -> RealInterval {
        RealInterval::from_rational(&self.value, prec)
    }
}

impl TryFrom<String> for Constant {
    type Error = EnvelopeError;
    fn try_from(s: String) -> Result<Self, EnvelopeError> {
        Constant::parse(&s)
    }
}

impl From<Constant> for String {
    fn from(c: Constant) -> String {
        c.text
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_levels_double_to_cap() {
        let levels: Vec<u32> = PrecisionPolicy::default().levels().collect();
        assert_eq!(levels, vec![64, 128, 256, 512, 1024, 2048, 4096]);
        let odd: Vec<u32> = PrecisionPolicy { start: 64, cap: 100 }.levels().collect();
        assert_eq!(odd, vec![64, 100]);
    }

    #[test]
    fn escalation_stops_when_decided() {
        let policy = PrecisionPolicy::default();
        let got = escalate(&policy, |p| Ok((p >= 256).then_some(p))).unwrap();
        assert_eq!(got, Settled::Decided { value: 256, precision: 256 });
        let never = escalate::<()>(&policy, |_| Ok(None)).unwrap();
        assert_eq!(never, Settled::Unresolved { precision: 4096 });
        let zero = escalate::<()>(&policy, |_| Err(IntervalError::ContainsZero)).unwrap();
        assert_eq!(zero, Settled::Unresolved { precision: 4096 });
        assert!(escalate::<()>(&policy, |_| Err(IntervalError::Domain("x".into()))).is_err());
    }

    #[test]
    fn constants_keep_text() {
        let c = Constant::parse(" 0.43 ").unwrap();
        assert_eq!(c.text(), "0.43");
        assert_eq!(c.value(), &BigRational::new(43.into(), 100.into()));
        assert!(Constant::parse("x").is_err());
    }
}

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{BoundEnvelope, Constant, EnvelopeError};
use crate::interval::{ln2, pi, IntervalError, RealInterval};
use crate::seq_core::Terms;

fn positive(n: u64) -> Result<(), IntervalError> {
    if n == 0 {
        Err(IntervalError::Domain("envelopes are defined for n >= 1".into()))
    } else {
        Ok(())
    }
}

fn int(n: u64, prec: u32) -> RealInterval {
    RealInterval::from_int(n, prec)
}

/// mu(n) = (pi / 6) sqrt(24n - 1).
pub fn chen_mu(n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
    positive(n)?;
    let root = int(24 * n - 1, prec).sqrt()?;
    Ok((&pi(prec) * &root).div_int(&BigInt::from(6)))
}

/// (sqrt(3) / 12n)(1 + sign / sqrt(n)).
pub(crate) fn lehmer_c(n: u64, prec: u32, sign: i64) -> Result<RealInterval, IntervalError> {
    positive(n)?;
    let lead = int(3, prec).sqrt()?.div_int(&BigInt::from(12 * n));
    let corr = int(n, prec).sqrt()?.recip()?.mul_int(&BigInt::from(sign));
    Ok(&lead * &(&RealInterval::one(prec) + &corr))
}

pub fn lehmer_envelope(n: u64, prec: u32) -> Result<(RealInterval, RealInterval), EnvelopeError> {
    Ok(BoundEnvelope::lehmer().bounds(n, prec)?)
}

fn chen_c(n: u64, prec: u32, sign: i64) -> Result<RealInterval, IntervalError> {
    let mu = chen_mu(n, prec)?;
    let lead = int(12, prec).sqrt()?.div_int(&BigInt::from(24 * n - 1));
    let inv = mu.recip()?;
    let inv3 = inv.powi(3).mul_int(&BigInt::from(sign));
    let factor = &(&RealInterval::one(prec) - &inv) + &inv3;
    Ok(&lead * &factor)
}

/// (sqrt(12)/(24n - 1))(1 - 1/mu(n) - 1/mu(n)^3).
pub fn chen_c1(n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
    chen_c(n, prec, -1)
}

/// (sqrt(12)/(24n - 1))(1 - 1/mu(n) + 1/mu(n)^3).
pub fn chen_c2(n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
    chen_c(n, prec, 1)
}

pub fn chen_envelope(n: u64, prec: u32) -> Result<(RealInterval, RealInterval), EnvelopeError> {
    Ok(BoundEnvelope::chen().bounds(n, prec)?)
}

/// Enclosures of `t_{-j}(n)` and `t_{+j}(n)`, the truncated binomial
/// expansions of `sqrt(n + j)` with a `2|j|^3 n^{-5/2}` margin.
pub fn binomial_bracket(j: i64, n: u64, prec: u32) -> Result<(RealInterval, RealInterval), EnvelopeError> {
    if j.unsigned_abs() >= n {
        return Err(EnvelopeError::Domain(format!("need |j| < n, got j = {j}, n = {n}")));
    }
    let root = int(n, prec).sqrt()?;
    let inv_half = root.recip()?;
    let big_n = BigInt::from(n);
    let inv_3_2 = inv_half.div_int(&big_n);
    let inv_5_2 = inv_3_2.div_int(&big_n);
    let jj = BigInt::from(j);
    let linear = inv_half.mul_int(&jj).div_int(&BigInt::from(2));
    let quad = inv_3_2.mul_int(&(&jj * &jj)).div_int(&BigInt::from(8));
    let core = &(&root + &linear) - &quad;
    let margin = inv_5_2.mul_int(&(BigInt::from(2) * jj.abs().pow(3)));
    Ok((&core - &margin, &core + &margin))
}

/// Constants of the plane-partition envelope
/// `alpha n^{-25/36}(1 -+ beta/sqrt(n)) e^{gamma n^{2/3}}`, valid from `n_start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WrightParams {
    pub alpha: Constant,
    pub beta: Constant,
    pub gamma: Constant,
    #[serde(default = "one")]
    pub n_start: u64,
}

fn one() -> u64 {
    1
}

fn half() -> Constant {
    Constant::from_ratio(1, 2)
}

fn two() -> Constant {
    Constant::from_ratio(2, 1)
}

impl WrightParams {
    /// The calibration shipped with the crate: `gamma = 3 (zeta(3)/4)^{1/3}`
    /// and `alpha = zeta(3)^{7/36} e^{zeta'(-1)} / (2^{11/36} sqrt(3 pi))`
    /// to 28 digits, with `beta` the least two-decimal value for which the
    /// envelope contains pp(n) on `[1, 2000]`.
    pub fn calibrated() -> Self {
        WrightParams {
            alpha: Constant::parse("0.2315168134488983705603564064").expect("literal"),
            beta: Constant::parse("0.43").expect("literal"),
            gamma: Constant::parse("2.009445660877013753064908765816").expect("literal"),
            n_start: 1,
        }
    }
}

pub(crate) fn wright_exponent(gamma: &BigRational, n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
    positive(n)?;
    let n23 = int(n, prec).pow_ratio(2, 3)?;
    Ok(&RealInterval::from_rational(gamma, prec) * &n23)
}

pub(crate) fn wright_c(params: &WrightParams, n: u64, prec: u32, sign: i64) -> Result<RealInterval, IntervalError> {
    positive(n)?;
    let alpha = params.alpha.interval(prec);
    let beta = params.beta.interval(prec).mul_int(&BigInt::from(sign));
    let decay = int(n, prec).pow_ratio(-25, 36)?;
    let corr = beta.div(&int(n, prec).sqrt()?)?;
    Ok(&(&alpha * &decay) * &(&RealInterval::one(prec) + &corr))
}

pub fn wright_envelope(
    params: &WrightParams,
    n: u64,
    prec: u32,
) -> Result<(RealInterval, RealInterval), EnvelopeError> {
    if n < params.n_start {
        return Err(EnvelopeError::Domain(format!("n = {n} is below N = {}", params.n_start)));
    }
    Ok(BoundEnvelope::wright(params).bounds(n, prec)?)
}

/// Least `beta` on a 1/100 grid such that
/// `|pp(n) / (alpha n^{-25/36} e^{gamma n^{2/3}}) - 1| < beta / sqrt(n)` for
/// every `n` in `[n_lo, n_hi]`.
pub fn calibrate_wright_beta(
    alpha: &Constant,
    gamma: &Constant,
    terms: &Terms,
    n_lo: u64,
    n_hi: u64,
    prec: u32,
) -> Result<Constant, EnvelopeError> {
    let mut worst = RealInterval::zero(prec);
    for n in n_lo.max(1)..=n_hi {
        let scale = &(&alpha.interval(prec) * &int(n, prec).pow_ratio(-25, 36)?)
            * &wright_exponent(gamma.value(), n, prec)?.exp();
        let exact = RealInterval::from_int(BigInt::from(terms.get(n).clone()), prec);
        let ratio = exact.div(&scale)?;
        let dev = (&ratio - &RealInterval::one(prec)).abs();
        let need = &dev * &int(n, prec).sqrt()?;
        if need.hi_raw() > worst.hi_raw() {
            worst = need;
        }
    }
    let hundredths = (worst.hi_raw() * BigInt::from(100)) >> prec;
    let beta = BigRational::new(hundredths + 1, BigInt::from(100));
    Constant::parse(&decimal_text(&beta, 2))
}

fn decimal_text(q: &BigRational, digits: usize) -> String {
    let scaled = (q * BigRational::from_integer(BigInt::from(10).pow(digits as u32))).to_integer();
    let s = format!("{:0>width$}", scaled.abs().to_string(), width = digits + 1);
    let (int_part, frac) = s.split_at(s.len() - digits);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac}")
}

/// Constants of `c1 e^{(log n)^2 / (2 log m)} < b_m(n) < c2 e^{(log n)^2 / (2 log m)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahlerParams {
    pub m: u64,
    #[serde(default = "half")]
    pub c1: Constant,
    #[serde(default = "two")]
    pub c2: Constant,
    #[serde(default = "one")]
    pub n_start: u64,
}

impl MahlerParams {
    /// `c1 = 1/2`, `c2 = 2`.
    pub fn new(m: u64) -> Self {
        MahlerParams { m, c1: half(), c2: two(), n_start: 1 }
    }
}

/// (log n)^2 / (2 log m); exactly zero at n = 1.
pub fn mahler_exponent(m: u64, n: u64, prec: u32) -> Result<RealInterval, IntervalError> {
    positive(n)?;
    if m < 2 {
        return Err(IntervalError::Domain("m-ary base must be >= 2".into()));
    }
    if n == 1 {
        return Ok(RealInterval::zero(prec));
    }
    let log_n = int(n, prec).ln()?;
    let log_m = if m == 2 { ln2(prec) } else { int(m, prec).ln()? };
    log_n.square().div(&log_m.mul_int(&BigInt::from(2)))
}

pub fn mahler_envelope(
    params: &MahlerParams,
    n: u64,
    prec: u32,
) -> Result<(RealInterval, RealInterval), EnvelopeError> {
    Ok(BoundEnvelope::mahler(params).bounds(n, prec)?)
}

/// `log b / ((log n)^2 / (2 log m))` for an exact value `b = b_m(n)`, n >= 2.
pub fn mahler_log_ratio(m: u64, value: &BigUint, n: u64, prec: u32) -> Result<RealInterval, EnvelopeError> {
    if n < 2 {
        return Err(EnvelopeError::Domain("the Mahler exponent vanishes at n = 1".into()));
    }
    let log_b = RealInterval::ln_int(&BigInt::from(value.clone()), prec)?;
    Ok(log_b.div(&mahler_exponent(m, n, prec)?)?)
}

/// Fits constant `c1 < c2` bracketing `b_m(n) / e^{f(n)}` on `[n_lo, n_hi]`.
/// Both constants are six-significant-digit decimals pushed slightly outward.
pub fn fit_mahler_constants(
    m: u64,
    terms: &Terms,
    n_lo: u64,
    n_hi: u64,
    prec: u32,
) -> Result<MahlerParams, EnvelopeError> {
    let mut lowest: Option<f64> = None;
    let mut highest: Option<f64> = None;
    for n in n_lo.max(1)..=n_hi {
        let e = mahler_exponent(m, n, prec)?.exp();
        let exact = RealInterval::from_int(BigInt::from(terms.get(n).clone()), prec);
        let ratio = exact.div(&e)?;
        let (lo, hi) = (ratio.lo_f64(), ratio.hi_f64());
        lowest = Some(lowest.map_or(lo, |v| v.min(lo)));
        highest = Some(highest.map_or(hi, |v| v.max(hi)));
    }
    let (lo, hi) = lowest.zip(highest).ok_or_else(|| EnvelopeError::Domain("empty window".into()))?;
    let c1 = Constant::parse(&format!("{:.5e}", lo * (1.0 - 1e-5)))?;
    let c2 = Constant::parse(&format!("{:.5e}", hi * (1.0 + 1e-5)))?;
    if c1.value().is_zero() {
        return Err(EnvelopeError::Domain("fitted lower constant underflowed".into()));
    }
    Ok(MahlerParams { m, c1, c2, n_start: n_lo.max(1) })
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use super::*;

    const P: u32 = 96;

    #[test]
    fn lehmer_degenerate_at_one() {
        let (lo, hi) = lehmer_envelope(1, P).unwrap();
        assert!(lo.is_point() && lo.cmp_int(&BigInt::zero()) == Some(Ordering::Equal));
        assert!(hi.is_positive());
    }

    #[test]
    fn lehmer_contains_p26() {
        let (lo, hi) = lehmer_envelope(26, P).unwrap();
        let p26 = BigInt::from(2436);
        assert_eq!(lo.cmp_int(&p26), Some(Ordering::Less));
        assert_eq!(hi.cmp_int(&p26), Some(Ordering::Greater));
    }

    #[test]
    fn chen_mu_values() {
        let mu1 = chen_mu(1, P).unwrap();
        let want = std::f64::consts::PI * 23f64.sqrt() / 6.0;
        assert!(mu1.lo_f64() <= want + 1e-15 && mu1.hi_f64() >= want - 1e-15);
        let mut prev = mu1;
        for n in 2..200 {
            let cur = chen_mu(n, P).unwrap();
            assert!(prev.certainly_lt(&cur));
            prev = cur;
        }
        assert!(chen_mu(0, P).is_err());
    }

    #[test]
    fn chen_mu_matches_envelope_internals() {
        let env = BoundEnvelope::chen();
        let mu = chen_mu(37, P).unwrap();
        let via_env = (env.f)(37, P).unwrap();
        assert_eq!(mu, via_env);
        let (lo, _) = chen_envelope(37, P).unwrap();
        let manual = &chen_c1(37, P).unwrap() * &mu.exp();
        assert_eq!(lo, manual);
    }

    #[test]
    fn bracket_examples() {
        let (lo, hi) = binomial_bracket(0, 25, P).unwrap();
        assert_eq!(lo, hi);
        assert_eq!(lo.cmp_int(&BigInt::from(5)), Some(Ordering::Equal));
        for (j, target) in [(1i64, 26u64), (-1, 24)] {
            let (lo, hi) = binomial_bracket(j, 25, P).unwrap();
            let root = RealInterval::from_int(target, P).sqrt().unwrap();
            assert!(lo.certainly_lt(&root) && root.certainly_lt(&hi));
        }
        assert!(matches!(binomial_bracket(5, 5, P), Err(EnvelopeError::Domain(_))));
    }

    #[test]
    fn wright_ordering() {
        let params = WrightParams::calibrated();
        for n in [1u64, 2, 10, 100, 1000] {
            let (lo, hi) = wright_envelope(&params, n, P).unwrap();
            assert!(lo.certainly_lt(&hi), "n = {n}");
        }
        let late = WrightParams { n_start: 5, ..params };
        assert!(wright_envelope(&late, 4, P).is_err());
    }

    #[test]
    fn mahler_trivial_window() {
        let params = MahlerParams::new(2);
        let (lo, hi) = mahler_envelope(&params, 1, P).unwrap();
        assert_eq!(lo, RealInterval::from_frac(1, 2, P));
        assert_eq!(hi, RealInterval::from_int(2, P));
        // (log 4)^2 / (2 log 2) = 2 log 2, so e^f = 4
        let f4 = mahler_exponent(2, 4, P).unwrap();
        let four = f4.exp();
        assert_eq!(four.cmp_int(&BigInt::from(4)), None);
        assert!(four.width_raw() < BigInt::from(1u64 << 20));
    }

    #[test]
    fn decimal_text_formats() {
        assert_eq!(decimal_text(&BigRational::new(43.into(), 100.into()), 2), "0.43");
        assert_eq!(decimal_text(&BigRational::new(7.into(), 1.into()), 2), "7.00");
    }
}

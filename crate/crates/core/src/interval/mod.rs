//! Fixed-point interval arithmetic with directed rounding.
//!
//! A [`RealInterval`] at precision `p` stores two integers `lo`, `hi` and
//! represents the closed interval `[lo / 2^p, hi / 2^p]`. Every operation
//! rounds the lower endpoint toward `-inf` and the upper endpoint toward
//! `+inf`, so the true value of the computed expression always lies inside.

mod consts;
mod transcendental;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use consts::{ln2, pi};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    /// The operand interval straddles zero; more precision may resolve it.
    #[error("operand interval contains zero")]
    ContainsZero,
    /// The operand lies conclusively outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot parse constant {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Round {
    Down,
    Up,
}

impl Round {
    pub(crate) fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

pub(crate) fn shr_round(x: &BigInt, k: u32, dir: Round) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    match dir {
        Round::Down => x >> k,
        Round::Up => -((-x) >> k),
    }
}

pub(crate) fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => -((-num).div_floor(den)),
    }
}

/// Rescales a fixed-point integer from `from` fractional bits to `to`.
pub(crate) fn rescale(x: &BigInt, from: u32, to: u32, dir: Round) -> BigInt {
    match to.cmp(&from) {
        Ordering::Equal => x.clone(),
        Ordering::Greater => x << (to - from),
        Ordering::Less => shr_round(x, from - to, dir),
    }
}

fn root_round(x: &BigInt, r: u32, dir: Round) -> BigInt {
    debug_assert!(!x.is_negative());
    let ux: BigUint = x.magnitude().clone();
    let mut root = if r == 2 { ux.sqrt() } else { ux.nth_root(r) };
    if dir == Round::Up && num_traits::pow(root.clone(), r as usize) != ux {
        root += 1u32;
    }
    BigInt::from_biguint(Sign::Plus, root)
}

/// A closed real interval with dyadic endpoints at a fixed number of
/// fractional bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl RealInterval {
    /// Builds an interval from raw fixed-point endpoints. Panics if `lo > hi`.
    pub fn from_raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi, prec }
    }

    pub fn from_int<T: Into<BigInt>>(value: T, prec: u32) -> Self {
        let v: BigInt = value.into() << prec;
        RealInterval { lo: v.clone(), hi: v, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    /// Tightest enclosure of the rational `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << prec;
        RealInterval {
            lo: div_round(&scaled, &den, Round::Down),
            hi: div_round(&scaled, &den, Round::Up),
            prec,
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    pub fn from_frac(num: i64, den: i64, prec: u32) -> Self {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    /// Parses a decimal (`"2.0094"`, `"-1e-3"`) or fraction (`"55588/13824"`)
    /// literal into an exact rational.
    pub fn parse_rational(text: &str) -> Result<BigRational, IntervalError> {
        parse_rational(text)
    }

    pub fn parse(text: &str, prec: u32) -> Result<Self, IntervalError> {
        Ok(Self::from_rational(&parse_rational(text)?, prec))
    }

    pub fn lo_raw(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_raw(&self) -> &BigInt {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    /// Width in units of `2^-prec`.
    pub fn width_raw(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1u32;
        ratio_to_f64(&mid, self.prec)
    }

    pub fn lo_f64(&self) -> f64 {
        ratio_to_f64(&self.lo, self.prec)
    }

    pub fn hi_f64(&self) -> f64 {
        ratio_to_f64(&self.hi, self.prec)
    }

    /// Re-expresses the interval at another precision, rounding outward.
    pub fn with_precision(&self, prec: u32) -> Self {
        RealInterval {
            lo: rescale(&self.lo, self.prec, prec, Round::Down),
            hi: rescale(&self.hi, self.prec, prec, Round::Up),
            prec,
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        match self.prec.cmp(&other.prec) {
            Ordering::Equal => (self.clone(), other.clone()),
            Ordering::Less => (self.with_precision(other.prec), other.clone()),
            Ordering::Greater => (self.clone(), other.with_precision(self.prec)),
        }
    }

    pub fn contains_interval(&self, inner: &Self) -> bool {
        let (outer, inner) = self.aligned(inner);
        outer.lo <= inner.lo && inner.hi <= outer.hi
    }

    /// Intersection of two enclosures of the same quantity.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.aligned(other);
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        (lo <= hi).then_some(RealInterval { lo, hi, prec: a.prec })
    }

    /// `true` when every point is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// `true` when every point is `<= 0`.
    pub fn is_nonpositive(&self) -> bool {
        !self.hi.is_positive()
    }

    /// Every point of `self` is `<` every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.hi < b.lo
    }

    /// Every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.hi <= b.lo
    }

    /// Three-way strict comparison against an exact integer: `Some(Less)`
    /// when the whole interval lies below `x`, `Some(Greater)` when it lies
    /// above, `Some(Equal)` for the degenerate point `[x, x]`, `None` otherwise.
    pub fn cmp_int(&self, x: &BigInt) -> Option<Ordering> {
        let scaled = x << self.prec;
        if self.hi < scaled {
            Some(Ordering::Less)
        } else if self.lo > scaled {
            Some(Ordering::Greater)
        } else if self.lo == scaled && self.hi == scaled {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            RealInterval { lo: b, hi: a, prec: self.prec }
        } else {
            RealInterval { lo: a, hi: b, prec: self.prec }
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero integer");
        let (lo, hi) = if k.is_negative() { (&self.hi, &self.lo) } else { (&self.lo, &self.hi) };
        RealInterval {
            lo: div_round(lo, k, Round::Down),
            hi: div_round(hi, k, Round::Up),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            RealInterval {
                lo: BigInt::zero(),
                hi: (-&self.lo).max(self.hi.clone()),
                prec: self.prec,
            }
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        RealInterval {
            lo: shr_round(&(&a.lo * &a.lo), self.prec, Round::Down),
            hi: shr_round(&(&a.hi * &a.hi), self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn powi(&self, exp: u32) -> Self {
        if exp == 0 {
            return Self::one(self.prec);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = exp;
        // Positive bases keep monotone squaring; mixed signs fall back to
        // plain repeated multiplication, which is still sound.
        if !self.lo.is_negative() {
            while e > 0 {
                if e & 1 == 1 {
                    acc = Some(match acc {
                        None => base.clone(),
                        Some(a) => &a * &base,
                    });
                }
                e >>= 1;
                if e > 0 {
                    base = base.square();
                }
            }
            acc.unwrap_or_else(|| Self::one(self.prec))
        } else {
            let mut out = self.clone();
            for _ in 1..exp {
                out = &out * self;
            }
            out
        }
    }

    pub fn recip(&self) -> Result<Self, IntervalError> {
        Self::one(self.prec).div(self)
    }

    pub fn div(&self, other: &Self) -> Result<Self, IntervalError> {
        let (a, b) = self.aligned(other);
        if b.lo.is_zero() && b.hi.is_zero() {
            return Err(IntervalError::Domain("division by exact zero".into()));
        }
        if !b.lo.is_positive() && !b.hi.is_negative() {
            return Err(IntervalError::ContainsZero);
        }
        let p = a.prec;
        let cands_lo = [
            div_round(&(&a.lo << p), &b.lo, Round::Down),
            div_round(&(&a.lo << p), &b.hi, Round::Down),
            div_round(&(&a.hi << p), &b.lo, Round::Down),
            div_round(&(&a.hi << p), &b.hi, Round::Down),
        ];
        let cands_hi = [
            div_round(&(&a.lo << p), &b.lo, Round::Up),
            div_round(&(&a.lo << p), &b.hi, Round::Up),
            div_round(&(&a.hi << p), &b.lo, Round::Up),
            div_round(&(&a.hi << p), &b.hi, Round::Up),
        ];
        Ok(RealInterval {
            lo: cands_lo.into_iter().min().expect("non-empty"),
            hi: cands_hi.into_iter().max().expect("non-empty"),
            prec: p,
        })
    }

    pub fn sqrt(&self) -> Result<Self, IntervalError> {
        if self.hi.is_negative() {
            return Err(IntervalError::Domain("square root of a negative number".into()));
        }
        if self.lo.is_negative() {
            return Err(IntervalError::ContainsZero);
        }
        let p = self.prec;
        Ok(RealInterval {
            lo: root_round(&(&self.lo << p), 2, Round::Down),
            hi: root_round(&(&self.hi << p), 2, Round::Up),
            prec: p,
        })
    }

    /// `x^(num/den)` for a strictly positive base (or a non-negative base
    /// when the exponent is non-negative).
    pub fn pow_ratio(&self, num: i64, den: u32) -> Result<Self, IntervalError> {
        assert!(den > 0, "zero root index");
        if num < 0 {
            if !self.is_positive() {
                return if self.is_nonpositive() {
                    Err(IntervalError::Domain("negative power of a non-positive base".into()))
                } else {
                    Err(IntervalError::ContainsZero)
                };
            }
            return self.pow_ratio(-num, den)?.recip();
        }
        if self.hi.is_negative() {
            return Err(IntervalError::Domain("fractional power of a negative base".into()));
        }
        if self.lo.is_negative() {
            return Err(IntervalError::ContainsZero);
        }
        let q = num as u64;
        let r = den;
        let p = self.prec;
        // (X / 2^p)^(q/r) * 2^p = (X^q * 2^(p*(r - q)))^(1/r)
        let endpoint = |x: &BigInt, dir: Round| -> BigInt {
            let xq = num_traits::pow(x.clone(), q as usize);
            let shift = p as i64 * (r as i64 - q as i64);
            let radicand = if shift >= 0 {
                xq << (shift as u32)
            } else {
                shr_round(&xq, (-shift) as u32, dir)
            };
            root_round(&radicand, r, dir)
        };
        Ok(RealInterval {
            lo: endpoint(&self.lo, Round::Down),
            hi: endpoint(&self.hi, Round::Up),
            prec: p,
        })
    }

    pub fn exp(&self) -> Self {
        RealInterval {
            lo: transcendental::exp_fixed(&self.lo, self.prec, Round::Down),
            hi: transcendental::exp_fixed(&self.hi, self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn ln(&self) -> Result<Self, IntervalError> {
        if !self.hi.is_positive() {
            return Err(IntervalError::Domain("logarithm of a non-positive number".into()));
        }
        if !self.lo.is_positive() {
            return Err(IntervalError::ContainsZero);
        }
        Ok(RealInterval {
            lo: transcendental::ln_fixed(&self.lo, self.prec, Round::Down),
            hi: transcendental::ln_fixed(&self.hi, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Natural log of an exact positive integer.
    pub fn ln_int(x: &BigInt, prec: u32) -> Result<Self, IntervalError> {
        Self::from_int(x.clone(), prec).ln()
    }

    /// Lower endpoint as a decimal string rounded toward `-inf`.
    pub fn lo_decimal(&self, digits: u32) -> String {
        fixed_to_decimal(&self.lo, self.prec, digits, Round::Down)
    }

    /// Upper endpoint as a decimal string rounded toward `+inf`.
    pub fn hi_decimal(&self, digits: u32) -> String {
        fixed_to_decimal(&self.hi, self.prec, digits, Round::Up)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12) as u32;
        write!(
            f,
            "[{}, {}]@{}b",
            self.lo_decimal(digits),
            self.hi_decimal(digits),
            self.prec
        )
    }
}

impl Add for &RealInterval {
    type Output = RealInterval;
    fn add(self, rhs: &RealInterval) -> RealInterval {
        let (a, b) = self.aligned(rhs);
        RealInterval { lo: a.lo + b.lo, hi: a.hi + b.hi, prec: a.prec }
    }
}

impl Sub for &RealInterval {
    type Output = RealInterval;
    fn sub(self, rhs: &RealInterval) -> RealInterval {
        let (a, b) = self.aligned(rhs);
        RealInterval { lo: a.lo - b.hi, hi: a.hi - b.lo, prec: a.prec }
    }
}

impl Neg for &RealInterval {
    type Output = RealInterval;
    fn neg(self) -> RealInterval {
        RealInterval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }
}

impl Mul for &RealInterval {
    type Output = RealInterval;
    fn mul(self, rhs: &RealInterval) -> RealInterval {
        let (a, b) = self.aligned(rhs);
        let p = a.prec;
        let prods = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = prods.iter().min().expect("non-empty");
        let hi = prods.iter().max().expect("non-empty");
        RealInterval {
            lo: shr_round(lo, p, Round::Down),
            hi: shr_round(hi, p, Round::Up),
            prec: p,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RealInterval {
            type Output = RealInterval;
            fn $m(self, rhs: RealInterval) -> RealInterval {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RealInterval {
    type Output = RealInterval;
    fn neg(self) -> RealInterval {
        -&self
    }
}

fn ratio_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    if bits > 900 {
        let shift = bits - 900;
        let head = (x >> shift).to_f64().unwrap_or(f64::NAN);
        return head * 2f64.powi(shift as i32 - prec as i32);
    }
    let v = x.to_f64().unwrap_or(f64::NAN);
    if prec > 1000 {
        v * 2f64.powi(-1000) * 2f64.powi(1000 - prec as i32)
    } else {
        v * 2f64.powi(-(prec as i32))
    }
}

fn fixed_to_decimal(x: &BigInt, prec: u32, digits: u32, dir: Round) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = shr_round(&(x * &scale), prec, dir);
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let (int_part, frac_part) = mag.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits as usize)
    }
}

fn parse_rational(text: &str) -> Result<BigRational, IntervalError> {
    let err = || IntervalError::Parse(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

//! Directed-rounding `exp` and `ln` on single fixed-point values.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{consts::ln2, div_round, rescale, shr_round, Round};

/// `exp(x / 2^p)` rounded in direction `dir`, returned at `p` fractional bits.
pub(crate) fn exp_fixed(x: &BigInt, p: u32, dir: Round) -> BigInt {
    if x.is_negative() {
        // e^x = 1 / e^-x; a lower bound needs an upper bound of e^-x
        let w = p + 8;
        let pos = exp_fixed(&(-x << 8u32), w, dir.flip());
        if pos.is_zero() {
            return BigInt::zero();
        }
        let q = div_round(&(BigInt::one() << (2 * w)), &pos, dir);
        return rescale(&q, w, p, dir);
    }
    if x.is_zero() {
        return BigInt::one() << p;
    }
    let bits = x.bits() as i64;
    // halve until the reduced argument is at most 1/2
    let k = (bits - p as i64 + 1).max(0) as u32;
    let approx = x.to_f64().unwrap_or(f64::MAX) * 2f64.powi(-(p as i32));
    let int_bits = if approx.is_finite() { (approx * std::f64::consts::LOG2_E).ceil() as u32 + 2 } else { 64 };
    let w = p + k + int_bits + 24;
    let y = x << (w - p - k);
    let one = BigInt::one() << w;

    let mut sum = one.clone();
    let mut term = one.clone();
    let mut i: u64 = 1;
    loop {
        term = div_round(&(&term * &y), &(BigInt::from(i) << w), dir);
        match dir {
            Round::Down => {
                if term.is_zero() {
                    break;
                }
                sum += &term;
            }
            Round::Up => {
                sum += &term;
                if term <= BigInt::one() {
                    // the remaining tail is below the last term
                    sum += BigInt::one();
                    break;
                }
            }
        }
        i += 1;
    }
    for _ in 0..k {
        sum = shr_round(&(&sum * &sum), w, dir);
    }
    rescale(&sum, w, p, dir)
}

/// `ln(x / 2^p)` for `x > 0`, rounded in direction `dir`.
pub(crate) fn ln_fixed(x: &BigInt, p: u32, dir: Round) -> BigInt {
    debug_assert!(x.is_positive());
    let len = x.bits() as i64;
    // x / 2^p = 2^e * m, with m in [1, 2)
    let e = len - 1 - p as i64;
    let e_bits = 64 - e.unsigned_abs().leading_zeros();
    let w = p + 40 + e_bits;
    let one = BigInt::one() << w;
    let m = rescale(x, (len - 1) as u32, w, dir);
    // t = (m - 1) / (m + 1) is increasing in m
    let t = div_round(&((&m - &one) << w), &(&m + &one), dir);

    let t2 = shr_round(&(&t * &t), w, dir);
    let mut power = t.clone();
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    loop {
        let term = div_round(&power, &BigInt::from(2 * i + 1), dir);
        match dir {
            Round::Down => {
                if term.is_zero() {
                    break;
                }
                sum += &term;
            }
            Round::Up => {
                sum += &term;
                if term <= BigInt::one() {
                    sum += BigInt::one();
                    break;
                }
            }
        }
        power = shr_round(&(&power * &t2), w, dir);
        i += 1;
    }
    let log_m = sum * 2;
    let l2 = ln2(w);
    let l2_part = match (dir, e >= 0) {
        (Round::Down, true) | (Round::Up, false) => l2.lo_raw() * BigInt::from(e),
        (Round::Up, true) | (Round::Down, false) => l2.hi_raw() * BigInt::from(e),
    };
    rescale(&(log_m + l2_part), w, p, dir)
}

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{rescale, RealInterval, Round};

type Cache = Mutex<HashMap<u32, RealInterval>>;

fn cached(cell: &'static OnceLock<Cache>, prec: u32, build: fn(u32) -> RealInterval) -> RealInterval {
    let cache = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("constant cache poisoned").get(&prec) {
        return v.clone();
    }
    let v = build(prec);
    cache
        .lock()
        .expect("constant cache poisoned")
        .insert(prec, v.clone());
    v
}

/// Enclosure of pi.
pub fn pi(prec: u32) -> RealInterval {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, prec, build_pi)
}

/// Enclosure of ln 2.
pub fn ln2(prec: u32) -> RealInterval {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, prec, build_ln2)
}

/// Truncated series for atan(1/k) at `w` fractional bits together with an
/// error bound in ulps.
fn atan_inv(k: u32, w: u32) -> (BigInt, BigInt) {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power = (BigInt::one() << w) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * i + 1);
        if term.is_zero() {
            break;
        }
        if i.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        i += 1;
    }
    // each term is off by < 2 ulps; the alternating tail is below 1 ulp
    (sum, BigInt::from(2 * i + 2))
}

fn build_pi(prec: u32) -> RealInterval {
    let w = prec + 32;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let approx = a * 16 - b * 4;
    let err = ea * 16 + eb * 4;
    RealInterval::from_raw(
        rescale(&(&approx - &err), w, prec, Round::Down),
        rescale(&(&approx + &err), w, prec, Round::Up),
        prec,
    )
}

fn build_ln2(prec: u32) -> RealInterval {
    // ln 2 = 2 atanh(1/3)
    let w = prec + 32;
    let nine = BigInt::from(9);
    let mut power = (BigInt::one() << w) / BigInt::from(3);
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * i + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        power /= &nine;
        i += 1;
    }
    let err = BigInt::from(2 * i + 4);
    let lo = (&sum - &err) * 2;
    let hi = (&sum + &err) * 2;
    RealInterval::from_raw(
        rescale(&lo, w, prec, Round::Down),
        rescale(&hi, w, prec, Round::Up),
        prec,
    )
}

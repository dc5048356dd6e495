//! Prefix generators. Each returns the values at indices `0..=n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SeqError;

/// Extends `table` (holding p(0..k)) with p(k..=n) via Euler's
/// pentagonal-number recurrence.
pub fn euler_extend(table: &mut Vec<BigUint>, n: usize) {
    if table.is_empty() {
        table.push(BigUint::one());
    }
    for i in table.len()..=n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &table[i - g1];
            if g2 <= i {
                *acc += &table[i - g2];
            }
        }
        table.push(plus - minus);
    }
}

/// p(0..=n).
pub fn euler_prefix(n: usize) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(n + 1);
    euler_extend(&mut table, n);
    table
}

/// p_A(0..=n) for a finite part set, by the coin-change DP.
pub fn restricted_prefix(parts: &[u64], n: usize) -> Vec<BigUint> {
    let mut table = vec![BigUint::zero(); n + 1];
    table[0] = BigUint::one();
    for &a in parts {
        let a = a as usize;
        for k in a..=n {
            let (lo, hi) = table.split_at_mut(k);
            hi[0] += &lo[k - a];
        }
    }
    table
}

/// pp(0..=n) by extracting coefficients of prod_k (1 - x^k)^(-k).
///
/// Multiplying by (1 - x^k)^(-k) is done as the inverse of multiplying by
/// (1 - x^k)^k, i.e. `G[i] = A[i] - sum_{j=1..k} (-1)^j C(k, j) G[i - jk]`.
pub fn plane_prefix_product(n: usize) -> Vec<BigUint> {
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::one();
    for k in 1..=n {
        let jmax = k.min(n / k);
        let mut binom: Vec<BigInt> = Vec::with_capacity(jmax + 1);
        binom.push(BigInt::one());
        for j in 1..=jmax {
            let prev = &binom[j - 1];
            binom.push(prev * BigInt::from(k - j + 1) / BigInt::from(j));
        }
        for i in k..=n {
            let mut acc = BigInt::zero();
            let mut j = 1;
            while j <= jmax && j * k <= i {
                let t = &binom[j] * &coeffs[i - j * k];
                if j % 2 == 1 {
                    acc += t;
                } else {
                    acc -= t;
                }
                j += 1;
            }
            coeffs[i] += acc;
        }
    }
    coeffs.into_iter().map(to_unsigned).collect()
}

/// pp(0..=n) by `n pp(n) = sum_{k=1..n} sigma_2(k) pp(n - k)`.
pub fn plane_prefix_divisor(n: usize) -> Result<Vec<BigUint>, SeqError> {
    let mut sigma2 = vec![0u128; n + 1];
    for d in 1..=n {
        let sq = (d as u128) * (d as u128);
        for m in (d..=n).step_by(d) {
            sigma2[m] += sq;
        }
    }
    let mut table: Vec<BigUint> = Vec::with_capacity(n + 1);
    table.push(BigUint::one());
    for m in 1..=n {
        let mut acc = BigUint::zero();
        for k in 1..=m {
            acc += &table[m - k] * BigUint::from(sigma2[k]);
        }
        let (q, r) = acc.div_rem(&BigUint::from(m));
        if !r.is_zero() {
            return Err(SeqError::InternalInconsistency(format!(
                "divisor-sum recurrence not divisible at n = {m}"
            )));
        }
        table.push(q);
    }
    Ok(table)
}

/// Extends b_m(0..k) to b_m(0..=n) via b(0) = 1, b(mk + i) = b(mk),
/// b(mk) = b(mk - 1) + b(k).
pub fn mary_extend(m: u64, table: &mut Vec<BigUint>, n: usize) {
    let m = m as usize;
    if table.is_empty() {
        table.push(BigUint::one());
    }
    for k in table.len()..=n {
        let v = if k % m != 0 {
            table[k - k % m].clone()
        } else {
            &table[k - 1] + &table[k / m]
        };
        table.push(v);
    }
}

/// q(0..=n) = F_0, F_2, F_4, ... using q(k + 1) = 3 q(k) - q(k - 1).
pub fn fib_even_extend(table: &mut Vec<BigUint>, n: usize) {
    if table.is_empty() {
        table.push(BigUint::zero());
    }
    if table.len() == 1 && n >= 1 {
        table.push(BigUint::one());
    }
    for k in table.len()..=n {
        let v = &table[k - 1] * 3u32 - &table[k - 2];
        table.push(v);
    }
}

fn to_unsigned(x: BigInt) -> BigUint {
    x.to_biguint()
        .unwrap_or_else(|| panic!("negative coefficient {x} in a counting sequence"))
}

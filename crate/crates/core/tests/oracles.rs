//! Exact values against independent oracles: explicit enumeration, the
//! largest-part recursion, and plain machine-integer recurrences.

use std::collections::HashMap;

use num_bigint::BigUint;
use partineq::seq_core::algorithms::{plane_prefix_divisor, plane_prefix_product};
use partineq::seq_core::{eval, PartSet, SequenceSpec, Terms};

/// Number of partitions of `n` with all parts `<= k`, by the largest part.
fn p_at_most(n: u64, k: u64, memo: &mut HashMap<(u64, u64), u128>) -> u128 {
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&(n, k)) {
        return v;
    }
    let k = k.min(n);
    let v = (1..=k).map(|largest| p_at_most(n - largest, largest, memo)).sum();
    memo.insert((n, k), v);
    v
}

/// Lists every partition of `n` (non-increasing parts).
fn enumerate(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Plane partitions of `n`: arrays with non-increasing rows and columns,
/// built row by row, each row a partition dominated entrywise by the one
/// above.
fn plane_brute(n: u64) -> u64 {
    fn rows(rest: u64, above: &[u64]) -> u64 {
        if rest == 0 {
            return 1;
        }
        let mut total = 0;
        // Every non-empty row fitting under `above` with sum <= rest.
        fn fill(i: usize, cap: u64, sum_left: u64, above: &[u64], row: &mut Vec<u64>, total: &mut u64, rest: u64) {
            if !row.is_empty() {
                let used: u64 = row.iter().sum();
                *total += rows(rest - used, row);
            }
            if i >= above.len() {
                return;
            }
            for v in 1..=cap.min(above[i]).min(sum_left) {
                row.push(v);
                fill(i + 1, v, sum_left - v, above, row, total, rest);
                row.pop();
            }
        }
        fill(0, rest, rest, above, &mut Vec::new(), &mut total, rest);
        total
    }
    rows(n, &vec![n; n as usize])
}

#[test]
fn euler_matches_enumeration_up_to_30() {
    for n in 0..=30u64 {
        let listed = enumerate(n);
        assert!(listed.iter().all(|p| p.iter().sum::<u64>() == n));
        assert_eq!(eval(&SequenceSpec::EulerP, n).unwrap(), BigUint::from(listed.len()), "n = {n}");
    }
}

#[test]
fn euler_matches_largest_part_recursion_up_to_200() {
    let terms = Terms::compute(&SequenceSpec::EulerP, 200).unwrap();
    let mut memo = HashMap::new();
    for n in 0..=200u64 {
        assert_eq!(*terms.get(n), BigUint::from(p_at_most(n, n, &mut memo)), "n = {n}");
    }
    assert_eq!(*terms.get(26), BigUint::from(2436u32));
    assert_eq!(terms.get(200).to_string(), "3972999029388");
}

#[test]
fn restricted_matches_enumeration() {
    for parts in [vec![1u64], vec![1, 2], vec![2, 3], vec![1, 2, 5, 10], vec![3, 7, 11]] {
        let spec = SequenceSpec::RestrictedP(PartSet::new(parts.clone()).unwrap());
        let terms = Terms::compute(&spec, 30).unwrap();
        for n in 0..=30u64 {
            let count = enumerate(n).iter().filter(|p| p.iter().all(|x| parts.contains(x))).count();
            assert_eq!(*terms.get(n), BigUint::from(count), "{parts:?}, n = {n}");
        }
    }
}

#[test]
fn plane_matches_brute_force() {
    let terms = Terms::compute(&SequenceSpec::PlaneP, 14).unwrap();
    for n in 0..=14u64 {
        assert_eq!(*terms.get(n), BigUint::from(plane_brute(n)), "n = {n}");
    }
}

#[test]
fn plane_dual_algorithms_agree_to_2000() {
    let a = plane_prefix_product(2000);
    let b = plane_prefix_divisor(2000).unwrap();
    assert_eq!(a, b);
}

#[test]
fn mary_matches_enumeration() {
    for m in [2u64, 3, 5] {
        let terms = Terms::compute(&SequenceSpec::MAry(m), 30).unwrap();
        for n in 0..=30u64 {
            let count = enumerate(n)
                .iter()
                .filter(|p| p.iter().all(|&x| {
                    let mut y = x;
                    while y % m == 0 {
                        y /= m;
                    }
                    y == 1
                }))
                .count();
            assert_eq!(*terms.get(n), BigUint::from(count), "m = {m}, n = {n}");
        }
    }
}

#[test]
fn fib_even_matches_u128_iteration() {
    let terms = Terms::compute(&SequenceSpec::FibEven, 90).unwrap();
    let (mut a, mut b) = (0u128, 1u128);
    for k in 0..=180u64 {
        if k % 2 == 0 {
            assert_eq!(*terms.get(k / 2), BigUint::from(a), "F_{k}");
        }
        (a, b) = (b, a + b);
    }
}

#[test]
fn shifted_view_reindexes() {
    let shifted = Terms::compute(&SequenceSpec::shifted(SequenceSpec::EulerP, 26), 10).unwrap();
    let base = Terms::compute(&SequenceSpec::EulerP, 36).unwrap();
    for n in 0..=10 {
        assert_eq!(shifted.get(n), base.get(n + 26));
    }
}

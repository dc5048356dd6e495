use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::algorithms::euler_prefix;
use super::{BigCount, SeqError};

/// A partition given as the multiset of its parts, stored in non-increasing
/// order. The empty multiset is the empty partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionMultiset(Vec<u64>);

impl PartitionMultiset {
    pub fn new(mut parts: Vec<u64>) -> Result<Self, SeqError> {
        if parts.contains(&0) {
            return Err(SeqError::InvalidSpec("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionMultiset(parts))
    }

    pub fn empty() -> Self {
        PartitionMultiset(Vec::new())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// p(lambda) = prod_i p(lambda_i).
pub fn extended_p(lambda: &PartitionMultiset) -> BigCount {
    let largest = lambda.parts().first().copied().unwrap_or(0);
    let p = euler_prefix(largest as usize);
    lambda
        .parts()
        .iter()
        .fold(BigUint::one(), |acc, &part| acc * &p[part as usize])
}

/// max { p(lambda) : lambda a partition of n }.
pub fn max_partition_product(n: u64) -> BigCount {
    max_partition_product_with_witness(n).0
}

/// The maximum together with a maximizing partition recovered from the DP.
///
/// `M(n) = max(p(n), max_{1 <= k <= n/2} M(k) M(n - k))`; ties prefer the
/// single part `(n)`, then the smallest split `k`.
pub fn max_partition_product_with_witness(n: u64) -> (BigCount, PartitionMultiset) {
    assert!(n >= 1, "max_partition_product needs n >= 1");
    let n = n as usize;
    let p = euler_prefix(n);
    let mut best: Vec<BigCount> = vec![BigUint::one(); n + 1];
    let mut split = vec![0usize; n + 1];
    for m in 1..=n {
        let mut value = p[m].clone();
        let mut arg = 0;
        for k in 1..=m / 2 {
            let cand = &best[k] * &best[m - k];
            if cand > value {
                value = cand;
                arg = k;
            }
        }
        best[m] = value;
        split[m] = arg;
    }
    let mut parts = Vec::new();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        match split[m] {
            0 => parts.push(m as u64),
            k => {
                stack.push(k);
                stack.push(m - k);
            }
        }
    }
    let witness = PartitionMultiset::new(parts).expect("parts are positive");
    (best[n].clone(), witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_examples() {
        assert_eq!(extended_p(&PartitionMultiset::empty()), BigUint::from(1u32));
        assert_eq!(extended_p(&PartitionMultiset::new(vec![7]).unwrap()), BigUint::from(15u32));
        assert_eq!(extended_p(&PartitionMultiset::new(vec![4, 5]).unwrap()), BigUint::from(35u32));
        assert!(PartitionMultiset::new(vec![2, 0]).is_err());
    }

    #[test]
    fn max_product_small() {
        assert_eq!(max_partition_product(1), BigUint::from(1u32));
        assert_eq!(max_partition_product(4), BigUint::from(5u32));
        for n in 1..40 {
            let (value, witness) = max_partition_product_with_witness(n);
            assert_eq!(witness.total(), n);
            assert_eq!(extended_p(&witness), value);
        }
    }
}

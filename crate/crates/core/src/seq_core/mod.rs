//! Exact partition-type sequences.
//!
//! Every sequence is described by a [`SequenceSpec`] and evaluated exactly
//! over arbitrary-precision integers. Evaluation always fills the dense prefix
//! `[0..=n]`: [`Sequence`] keeps it in an append-only [`MemoTable`], and
//! [`Terms`] is an immutable, shareable snapshot used by the scanners.

pub mod algorithms;
mod products;
mod serialize;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use products::{extended_p, max_partition_product, max_partition_product_with_witness, PartitionMultiset};
pub use serialize::{read_terms, write_terms, PREFIX_MAGIC, PREFIX_VERSION};

/// Exact value of a counting sequence.
pub type BigCount = BigUint;

#[derive(Debug, Error)]
pub enum SeqError {
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("index {n} is below the domain start {start} of {spec}")]
    Domain { spec: String, n: u64, start: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("malformed prefix file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A finite, strictly increasing set of positive part sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PartSet(Vec<u64>);

impl PartSet {
    pub fn new(parts: Vec<u64>) -> Result<Self, SeqError> {
        if parts.is_empty() {
            return Err(SeqError::InvalidSpec("part set is empty".into()));
        }
        if parts[0] == 0 {
            return Err(SeqError::InvalidSpec("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SeqError::InvalidSpec("part set must be strictly increasing".into()));
        }
        Ok(PartSet(parts))
    }

    /// `{1, 2, ..., k}`.
    pub fn prefix(k: u64) -> Result<Self, SeqError> {
        Self::new((1..=k).collect())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for PartSet {
    type Error = SeqError;
    fn try_from(v: Vec<u64>) -> Result<Self, SeqError> {
        PartSet::new(v)
    }
}

impl From<PartSet> for Vec<u64> {
    fn from(s: PartSet) -> Vec<u64> {
        s.0
    }
}

/// A named exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SequenceSpec {
    /// p(n)
    EulerP,
    /// p_A(n) for a finite part set A
    RestrictedP(PartSet),
    /// pp(n), plane partitions
    PlaneP,
    /// b_m(n), partitions into powers of m
    MAry(u64),
    /// q(n) = F_{2n}
    FibEven,
    /// n -> inner(n + shift)
    ShiftedView(Box<SequenceSpec>, u64),
}

impl SequenceSpec {
    pub fn shifted(inner: SequenceSpec, shift: u64) -> Self {
        SequenceSpec::ShiftedView(Box::new(inner), shift)
    }

    pub fn validate(&self) -> Result<(), SeqError> {
        match self {
            SequenceSpec::MAry(m) if *m < 2 => {
                Err(SeqError::InvalidSpec(format!("m-ary base must be >= 2, got {m}")))
            }
            SequenceSpec::ShiftedView(inner, _) => inner.validate(),
            _ => Ok(()),
        }
    }

    /// First index on which positivity-dependent statements are made.
    pub fn domain_start(&self) -> u64 {
        match self {
            SequenceSpec::FibEven => 1,
            SequenceSpec::ShiftedView(inner, j) => inner.domain_start().saturating_sub(*j),
            _ => 0,
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::EulerP => write!(f, "euler"),
            SequenceSpec::RestrictedP(a) => {
                let parts: Vec<String> = a.parts().iter().map(u64::to_string).collect();
                write!(f, "restricted:{}", parts.join(","))
            }
            SequenceSpec::PlaneP => write!(f, "plane"),
            SequenceSpec::MAry(m) => write!(f, "mary:{m}"),
            SequenceSpec::FibEven => write!(f, "fib-even"),
            SequenceSpec::ShiftedView(inner, j) => write!(f, "shift:{j}:{inner}"),
        }
    }
}

impl FromStr for SequenceSpec {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, SeqError> {
        let bad = |why: &str| SeqError::InvalidSpec(format!("{s:?}: {why}"));
        let s = s.trim();
        let spec = match s {
            "euler" => SequenceSpec::EulerP,
            "plane" => SequenceSpec::PlaneP,
            "fib-even" => SequenceSpec::FibEven,
            _ => {
                if let Some(rest) = s.strip_prefix("restricted:") {
                    let parts = rest
                        .split(',')
                        .map(|p| p.trim().parse::<u64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| bad("parts must be integers"))?;
                    SequenceSpec::RestrictedP(PartSet::new(parts)?)
                } else if let Some(rest) = s.strip_prefix("mary:") {
                    SequenceSpec::MAry(rest.parse().map_err(|_| bad("base must be an integer"))?)
                } else if let Some(rest) = s.strip_prefix("shift:") {
                    let (j, inner) = rest.split_once(':').ok_or_else(|| bad("expected shift:j:inner"))?;
                    let j = j.parse().map_err(|_| bad("shift must be an integer"))?;
                    SequenceSpec::shifted(inner.parse()?, j)
                } else {
                    return Err(bad("unknown sequence"));
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<SequenceSpec> for String {
    fn from(s: SequenceSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SequenceSpec {
    type Error = SeqError;
    fn try_from(s: String) -> Result<Self, SeqError> {
        s.parse()
    }
}

/// Dense, append-only cache of sequence values `[0..len)`.
#[derive(Clone, Debug, Default)]
pub struct MemoTable {
    prefix: Vec<BigCount>,
}

impl MemoTable {
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn values(&self) -> &[BigCount] {
        &self.prefix
    }

    /// Replaces the cache with a longer recomputed prefix. Cached values must
    /// be reproduced unchanged.
    fn absorb(&mut self, fresh: Vec<BigCount>) -> Result<(), SeqError> {
        if fresh.len() < self.prefix.len() || fresh[..self.prefix.len()] != self.prefix[..] {
            return Err(SeqError::InternalInconsistency(
                "recomputed prefix disagrees with cached values".into(),
            ));
        }
        self.prefix = fresh;
        Ok(())
    }
}

/// Memoized evaluator for one [`SequenceSpec`].
#[derive(Clone, Debug)]
pub struct Sequence {
    spec: SequenceSpec,
    memo: MemoTable,
    inner: Option<Box<Sequence>>,
}

impl Sequence {
    pub fn new(spec: SequenceSpec) -> Result<Self, SeqError> {
        spec.validate()?;
        let inner = match &spec {
            SequenceSpec::ShiftedView(inner, _) => Some(Box::new(Sequence::new((**inner).clone())?)),
            _ => None,
        };
        Ok(Sequence { spec, memo: MemoTable::default(), inner })
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn memo(&self) -> &MemoTable {
        &self.memo
    }

    /// Fills the prefix `[0..=n]`.
    pub fn ensure(&mut self, n: u64) -> Result<(), SeqError> {
        let n = n as usize;
        if self.memo.len() > n {
            return Ok(());
        }
        match &self.spec {
            SequenceSpec::EulerP => algorithms::euler_extend(&mut self.memo.prefix, n),
            SequenceSpec::MAry(m) => algorithms::mary_extend(*m, &mut self.memo.prefix, n),
            SequenceSpec::FibEven => algorithms::fib_even_extend(&mut self.memo.prefix, n),
            SequenceSpec::RestrictedP(a) => {
                let fresh = algorithms::restricted_prefix(a.parts(), n);
                self.memo.absorb(fresh)?;
            }
            SequenceSpec::PlaneP => {
                let fresh = plane_prefix_checked(n)?;
                self.memo.absorb(fresh)?;
            }
            SequenceSpec::ShiftedView(_, j) => {
                let j = *j as usize;
                let inner = self.inner.as_mut().expect("shifted view has an inner evaluator");
                inner.ensure((n + j) as u64)?;
                let start = self.memo.len();
                let extra = inner.memo.values()[start + j..=n + j].to_vec();
                self.memo.prefix.extend(extra);
            }
        }
        Ok(())
    }

    /// Exact value at `n`; errors below the domain start.
    pub fn eval(&mut self, n: u64) -> Result<&BigCount, SeqError> {
        let start = self.spec.domain_start();
        if n < start {
            return Err(SeqError::Domain { spec: self.spec.to_string(), n, start });
        }
        self.ensure(n)?;
        Ok(&self.memo.values()[n as usize])
    }

    /// Raw prefix `[0..=n]`, including indices below the domain start.
    pub fn prefix(&mut self, n: u64) -> Result<&[BigCount], SeqError> {
        self.ensure(n)?;
        Ok(&self.memo.values()[..=n as usize])
    }

    pub fn terms(&mut self, n: u64) -> Result<Terms, SeqError> {
        self.ensure(n)?;
        Ok(Terms {
            label: self.spec.to_string(),
            spec: Some(self.spec.clone()),
            domain_start: self.spec.domain_start(),
            values: self.memo.values()[..=n as usize].to_vec(),
        })
    }
}

/// Immutable snapshot of a sequence prefix `[0..len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terms {
    label: String,
    spec: Option<SequenceSpec>,
    domain_start: u64,
    values: Vec<BigCount>,
}

impl Terms {
    /// Prefix `[0..=n]` of a builtin sequence.
    pub fn compute(spec: &SequenceSpec, n: u64) -> Result<Terms, SeqError> {
        Sequence::new(spec.clone())?.terms(n)
    }

    /// An ad-hoc sequence, e.g. for tests or externally supplied data.
    pub fn from_values(label: impl Into<String>, domain_start: u64, values: Vec<BigCount>) -> Terms {
        Terms { label: label.into(), spec: None, domain_start, values }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&SequenceSpec> {
        self.spec.as_ref()
    }

    pub fn domain_start(&self) -> u64 {
        self.domain_start
    }

    pub fn values(&self) -> &[BigCount] {
        &self.values
    }

    /// Largest index held.
    pub fn max_index(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> &BigCount {
        &self.values[n as usize]
    }

    pub fn try_get(&self, n: u64) -> Option<&BigCount> {
        self.values.get(n as usize)
    }
}

/// Runs both plane-partition algorithms and requires agreement.
fn plane_prefix_checked(n: usize) -> Result<Vec<BigCount>, SeqError> {
    let (product, divisor) = rayon::join(
        || algorithms::plane_prefix_product(n),
        || algorithms::plane_prefix_divisor(n),
    );
    let divisor = divisor?;
    if let Some(i) = (0..=n).find(|&i| product[i] != divisor[i]) {
        return Err(SeqError::InternalInconsistency(format!(
            "plane partition algorithms disagree at n = {i}"
        )));
    }
    Ok(product)
}

/// Exact value of `spec` at `n`.
pub fn eval(spec: &SequenceSpec, n: u64) -> Result<BigCount, SeqError> {
    Ok(Sequence::new(spec.clone())?.eval(n)?.clone())
}

pub fn euler_p(n: u64) -> BigCount {
    algorithms::euler_prefix(n as usize).pop().expect("non-empty prefix")
}

pub fn restricted_p(parts: &PartSet, n: u64) -> BigCount {
    algorithms::restricted_prefix(parts.parts(), n as usize)
        .pop()
        .expect("non-empty prefix")
}

/// pp(n), computed by two independent algorithms that must agree.
pub fn plane_p(n: u64) -> Result<BigCount, SeqError> {
    Ok(plane_prefix_checked(n as usize)?.pop().expect("non-empty prefix"))
}

pub fn mary_p(m: u64, n: u64) -> Result<BigCount, SeqError> {
    eval(&SequenceSpec::MAry(m), n)
}

/// F_{2n}; defined at n = 0 as well.
pub fn fib_even(n: u64) -> BigCount {
    let mut table = Vec::new();
    algorithms::fib_even_extend(&mut table, n as usize);
    table.swap_remove(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn spec_examples() {
        assert_eq!(eval(&SequenceSpec::EulerP, 1).unwrap(), big(1));
        assert_eq!(eval(&SequenceSpec::EulerP, 26).unwrap(), big(2436));
        assert_eq!(eval(&SequenceSpec::EulerP, 9).unwrap(), big(30));
        assert_eq!(
            eval(&SequenceSpec::MAry(2), 5).unwrap(),
            eval(&SequenceSpec::MAry(2), 4).unwrap()
        );
        assert_eq!(euler_p(0), big(1));
        assert_eq!(euler_p(10), big(42));
        assert_eq!(restricted_p(&PartSet::new(vec![1]).unwrap(), 7), big(1));
        assert_eq!(restricted_p(&PartSet::new(vec![3, 7]).unwrap(), 0), big(1));
        assert_eq!(restricted_p(&PartSet::new(vec![1, 2]).unwrap(), 4), big(3));
        assert_eq!(plane_p(0).unwrap(), big(1));
        assert_eq!(plane_p(1).unwrap(), big(1));
        assert_eq!(plane_p(2).unwrap(), big(3));
        assert_eq!(mary_p(2, 0).unwrap(), big(1));
        assert_eq!(mary_p(2, 4).unwrap(), big(4));
        assert_eq!(mary_p(3, 5).unwrap(), mary_p(3, 3).unwrap());
        assert_eq!(fib_even(1), big(1));
        assert_eq!(fib_even(3), big(8));
        assert_eq!(fib_even(2) * fib_even(2) - fib_even(1) * fib_even(3), big(1));
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(mary_p(1, 3), Err(SeqError::InvalidSpec(_))));
        assert!(PartSet::new(vec![]).is_err());
        assert!(PartSet::new(vec![0, 1]).is_err());
        assert!(PartSet::new(vec![2, 2]).is_err());
        assert!(PartSet::new(vec![3, 1]).is_err());
        assert!("mary:1".parse::<SequenceSpec>().is_err());
        assert!("nope".parse::<SequenceSpec>().is_err());
    }

    #[test]
    fn fib_even_domain() {
        let mut seq = Sequence::new(SequenceSpec::FibEven).unwrap();
        assert!(matches!(seq.eval(0), Err(SeqError::Domain { .. })));
        assert_eq!(seq.prefix(2).unwrap(), &[big(0), big(1), big(3)]);
        assert_eq!(fib_even(0), big(0));
    }

    #[test]
    fn selectors_round_trip() {
        for s in ["euler", "plane", "fib-even", "mary:3", "restricted:1,2,5", "shift:26:euler", "shift:2:shift:1:fib-even"] {
            let spec: SequenceSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn shifted_view_offsets() {
        let mut shifted = Sequence::new(SequenceSpec::shifted(SequenceSpec::EulerP, 26)).unwrap();
        assert_eq!(shifted.eval(0).unwrap(), &big(2436));
        let direct = euler_p(40);
        assert_eq!(shifted.eval(14).unwrap(), &direct);
        // extending a filled view keeps the earlier values
        shifted.ensure(100).unwrap();
        assert_eq!(shifted.memo().values()[14], direct);
        let fib = SequenceSpec::shifted(SequenceSpec::FibEven, 1);
        assert_eq!(fib.domain_start(), 0);
        assert_eq!(eval(&fib, 0).unwrap(), big(1));
    }

    #[test]
    fn memo_is_append_only() {
        let mut seq = Sequence::new(SequenceSpec::RestrictedP(PartSet::new(vec![1, 3]).unwrap())).unwrap();
        seq.ensure(10).unwrap();
        let before = seq.memo().values().to_vec();
        seq.ensure(50).unwrap();
        assert_eq!(&seq.memo().values()[..before.len()], &before[..]);
        let mut table = MemoTable::default();
        table.absorb(vec![big(1), big(2)]).unwrap();
        assert!(table.absorb(vec![big(1), big(3), big(4)]).is_err());
    }

    #[test]
    fn plane_small_values() {
        let got = Terms::compute(&SequenceSpec::PlaneP, 7).unwrap();
        let want: Vec<BigCount> = [1u64, 1, 3, 6, 13, 24, 48, 86].iter().map(|&v| big(v)).collect();
        assert_eq!(got.values(), &want[..]);
    }
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{escalate, BoundEnvelope, EnvelopeError, PrecisionPolicy, Settled};
use crate::interval::RealInterval;
use crate::seq_core::{SequenceSpec, Terms};
use crate::verdict::{clean_threshold, Horizon, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeFailure {
    pub n: u64,
    pub side: Side,
    /// Outward-rounded enclosure of the violated bound.
    pub bound: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub envelope: String,
    pub sequence: String,
    pub from: u64,
    pub to: u64,
    pub claimed_start: u64,
    pub failures: Vec<EnvelopeFailure>,
    pub unresolved: Vec<u64>,
    /// Highest precision any index needed.
    pub max_precision: u32,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unresolved.is_empty()
    }

    pub fn first_failure(&self) -> Option<u64> {
        self.failures.first().map(|f| f.n)
    }

    pub fn failing_indices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.failures.iter().map(|f| f.n).collect();
        v.dedup();
        v
    }

    /// Least `N` such that every index of `[N, to]` is certified.
    pub fn clean_start(&self) -> Option<u64> {
        clean_threshold(
            self.failures.iter().map(|f| f.n).chain(self.unresolved.iter().copied()),
            self.from,
            self.to,
        )
    }

    pub fn to_verdict(&self) -> Verdict {
        let mut v = Verdict::new(
            format!("envelope {} contains {}", self.envelope, self.sequence),
            Horizon::indices(self.from, self.to),
        );
        for f in &self.failures {
            let (lhs, rhs) = match f.side {
                Side::Lower => (f.bound.clone(), f.value.clone()),
                Side::Upper => (f.value.clone(), f.bound.clone()),
            };
            v.refute(Witness::new(vec![f.n], lhs, rhs).with_note(format!("{:?} bound violated", f.side)));
        }
        for &n in &self.unresolved {
            v.leave_unresolved(Witness::new(vec![n], "", "").with_note("precision exhausted"));
        }
        if let Some(start) = self.clean_start() {
            v.thresholds.insert("N0".into(), start);
        }
        v.note(format!("max precision used: {} bits", self.max_precision));
        v
    }
}

enum Outcome {
    Pass(u32),
    Fail(Side, RealInterval, u32),
    Unresolved(u32),
}

fn check_index(env: &BoundEnvelope, n: u64, value: &BigInt, policy: &PrecisionPolicy) -> Outcome {
    let settled = escalate(policy, |prec| {
        let (lower, upper) = env.bounds(n, prec)?;
        let low = match lower.cmp_int(value) {
            Some(Ordering::Less) => None,
            Some(_) => return Ok(Some(Some((Side::Lower, lower)))),
            None => return Ok(None),
        };
        match upper.cmp_int(value) {
            Some(Ordering::Greater) => Ok(Some(low)),
            Some(_) => Ok(Some(Some((Side::Upper, upper)))),
            None => Ok(None),
        }
    });
    match settled {
        Ok(Settled::Decided { value: None, precision }) => Outcome::Pass(precision),
        Ok(Settled::Decided { value: Some((side, bound)), precision }) => Outcome::Fail(side, bound, precision),
        Ok(Settled::Unresolved { precision }) => Outcome::Unresolved(precision),
        Err(_) => Outcome::Unresolved(policy.start),
    }
}

/// Conclusively checks `lower(n) < F(n) < upper(n)` for every `n` in
/// `[from, to]`, comparing exact integers against interval endpoints.
pub fn certify_envelope(
    env: &BoundEnvelope,
    terms: &Terms,
    from: u64,
    to: u64,
    policy: &PrecisionPolicy,
) -> Result<CertificationReport, EnvelopeError> {
    if from < 1 {
        return Err(EnvelopeError::Domain("certification starts at n >= 1".into()));
    }
    if terms.max_index() < to {
        return Err(EnvelopeError::Domain(format!(
            "sequence prefix ends at {}, need {to}",
            terms.max_index()
        )));
    }
    let outcomes: Vec<(u64, Outcome)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let value = BigInt::from(terms.get(n).clone());
            (n, check_index(env, n, &value, policy))
        })
        .collect();
    let mut report = CertificationReport {
        envelope: env.label.clone(),
        sequence: terms.label().to_string(),
        from,
        to,
        claimed_start: env.n0,
        failures: Vec::new(),
        unresolved: Vec::new(),
        max_precision: policy.start,
    };
    for (n, outcome) in outcomes {
        let prec = match outcome {
            Outcome::Pass(p) => p,
            Outcome::Fail(side, bound, p) => {
                report.failures.push(EnvelopeFailure {
                    n,
                    side,
                    bound: format!("[{}, {}]", bound.lo_decimal(6), bound.hi_decimal(6)),
                    value: terms.get(n).to_string(),
                });
                p
            }
            Outcome::Unresolved(p) => {
                report.unresolved.push(n);
                p
            }
        };
        report.max_precision = report.max_precision.max(prec);
    }
    Ok(report)
}

pub fn certify_sequence(
    env: &BoundEnvelope,
    spec: &SequenceSpec,
    from: u64,
    to: u64,
    policy: &PrecisionPolicy,
) -> Result<CertificationReport, EnvelopeError> {
    let terms = Terms::compute(spec, to)?;
    certify_envelope(env, &terms, from, to, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lehmer_small_range() {
        let report =
            certify_sequence(&BoundEnvelope::lehmer(), &SequenceSpec::EulerP, 1, 60, &PrecisionPolicy::default())
                .unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn chen_fails_below_claim() {
        let report =
            certify_sequence(&BoundEnvelope::chen(), &SequenceSpec::EulerP, 1, 50, &PrecisionPolicy::default())
                .unwrap();
        assert!(!report.passed());
        assert_eq!(report.clean_start(), Some(37));
        assert!(report.to_verdict().is_refuted());
    }

    #[test]
    fn rejects_short_prefix() {
        let terms = Terms::compute(&SequenceSpec::EulerP, 10).unwrap();
        let err = certify_envelope(&BoundEnvelope::lehmer(), &terms, 1, 20, &PrecisionPolicy::default());
        assert!(err.is_err());
    }
}

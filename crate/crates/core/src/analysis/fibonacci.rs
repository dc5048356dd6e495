use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{lc_margins, AnalysisError};
use crate::envelopes::{escalate, PrecisionPolicy, Settled};
use crate::interval::{IntervalError, RealInterval};
use crate::seq_core::{SequenceSpec, Terms};
use crate::verdict::{Horizon, Verdict, Witness};

/// (1 + sqrt 5) / 2
pub fn golden_ratio(prec: u32) -> RealInterval {
    let root5 = RealInterval::from_int(5, prec).sqrt().expect("sqrt of a positive constant");
    (&RealInterval::one(prec) + &root5).div_int(&BigInt::from(2))
}

fn root5(prec: u32) -> RealInterval {
    RealInterval::from_int(5, prec).sqrt().expect("sqrt of a positive constant")
}

fn q_terms(n: u64) -> Result<Terms, AnalysisError> {
    Ok(Terms::compute(&SequenceSpec::FibEven, n)?)
}

/// Checks `q(n)^2 - q(n+1)q(n-1) = 1` exactly for `1 <= n <= n_max`.
pub fn cassini_audit(n_max: u64) -> Result<Verdict, AnalysisError> {
    if n_max < 2 {
        return Err(AnalysisError::Domain(format!("n_max must be >= 2, got {n_max}")));
    }
    let terms = q_terms(n_max + 1)?;
    let margins = lc_margins(&terms, 1, n_max);
    let mut v = Verdict::new("cassini: q(n)^2 - q(n-1)q(n+1) = 1", Horizon::indices(1, n_max));
    for (n, m) in (1..).zip(&margins) {
        if !m.is_one() {
            v.refute(Witness::new(vec![n], m.to_string(), "1").with_note("margin differs from 1"));
        }
    }
    Ok(v)
}

enum Check {
    Holds,
    Fails(Witness),
}

fn settle(
    policy: &PrecisionPolicy,
    attempt: impl FnMut(u32) -> Result<Option<Check>, IntervalError>,
) -> (Option<Check>, u32) {
    match escalate(policy, attempt) {
        Ok(Settled::Decided { value, precision }) => (Some(value), precision),
        Ok(Settled::Unresolved { precision }) => (None, precision),
        Err(_) => (None, policy.start),
    }
}

fn fold(v: &mut Verdict, results: Vec<(Vec<u64>, Option<Check>, u32)>) {
    let mut top = 0;
    for (idx, outcome, prec) in results {
        top = top.max(prec);
        match outcome {
            Some(Check::Holds) => {}
            Some(Check::Fails(w)) => v.refute(w),
            None => v.leave_unresolved(Witness::new(idx, "", "").with_note("precision exhausted")),
        }
    }
    v.note(format!("max precision used: {top} bits"));
}

/// Checks `phi^{2n}/sqrt 5 - 1 < q(n) < phi^{2n}/sqrt 5` for `1 <= n <= n_max`.
pub fn golden_bounds_audit(n_max: u64, policy: &PrecisionPolicy) -> Result<Verdict, AnalysisError> {
    if n_max < 1 {
        return Err(AnalysisError::Domain("n_max must be >= 1".into()));
    }
    let terms = q_terms(n_max)?;
    let results: Vec<_> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let q = BigInt::from(terms.get(n).clone());
            let (outcome, prec) = settle(policy, |p| {
                let upper = golden_ratio(p).powi(2 * n as u32).div(&root5(p))?;
                let lower = &upper - &RealInterval::one(p);
                let (lo_cmp, hi_cmp) = match (lower.cmp_int(&q), upper.cmp_int(&q)) {
                    (Some(l), Some(h)) => (l, h),
                    _ => return Ok(None),
                };
                Ok(Some(if lo_cmp == Ordering::Less && hi_cmp == Ordering::Greater {
                    Check::Holds
                } else {
                    let (lhs, rhs) = if lo_cmp != Ordering::Less {
                        (format!("{lower}"), q.to_string())
                    } else {
                        (q.to_string(), format!("{upper}"))
                    };
                    Check::Fails(Witness::new(vec![n], lhs, rhs))
                }))
            });
            (vec![n], outcome, prec)
        })
        .collect();
    let mut v = Verdict::new("golden bounds: phi^{2n}/sqrt5 - 1 < q(n) < phi^{2n}/sqrt5", Horizon::indices(1, n_max));
    fold(&mut v, results);
    Ok(v)
}

/// For all `b <= a` with `3 <= a + b <= sum_max`, checks
/// `q(a+b) - q(a)q(b) > (sqrt5 - 1)/5 * phi^{2(a+b)} - 1 > 0`, i.e. that the
/// BO inequality fails with the stated gap.
pub fn bo_gap_audit_q(sum_max: u64, policy: &PrecisionPolicy) -> Result<Verdict, AnalysisError> {
    if sum_max < 3 {
        return Err(AnalysisError::Domain(format!("sum_max must be >= 3, got {sum_max}")));
    }
    let terms = q_terms(sum_max)?;
    let pairs: Vec<(u64, u64)> = (1..=sum_max / 2)
        .flat_map(|b| (b..=sum_max - b).map(move |a| (a, b)))
        .filter(|&(a, b)| a + b >= 3)
        .collect();
    let results: Vec<_> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let s = a + b;
            let gap = BigInt::from(terms.get(s).clone()) - BigInt::from(terms.get(a) * terms.get(b));
            let (outcome, prec) = settle(policy, |p| {
                let coeff = (&root5(p) - &RealInterval::one(p)).div_int(&BigInt::from(5));
                let bound = &(&coeff * &golden_ratio(p).powi(2 * s as u32)) - &RealInterval::one(p);
                let (Some(vs_gap), Some(vs_zero)) = (bound.cmp_int(&gap), bound.cmp_int(&BigInt::zero())) else {
                    return Ok(None);
                };
                Ok(Some(if vs_gap == Ordering::Less && vs_zero == Ordering::Greater {
                    Check::Holds
                } else {
                    Check::Fails(Witness::new(vec![a, b], gap.to_string(), format!("{bound}")))
                }))
            });
            (vec![a, b], outcome, prec)
        })
        .collect();
    let mut v = Verdict::new(
        "q(a+b) - q(a)q(b) > (sqrt5-1)/5 phi^{2(a+b)} - 1 > 0",
        Horizon::pairs(1, sum_max - 1, sum_max),
    );
    fold(&mut v, results);
    Ok(v)
}

//! Exact brute-force scans for Bessenrodt–Ono and log-concavity violations,
//! and the Fibonacci audits.

mod fibonacci;

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal;
use crate::seq_core::{SeqError, SequenceSpec, Terms};
use crate::verdict::{clean_threshold, Horizon, Verdict, Witness};

pub use fibonacci::{bo_gap_audit_q, cassini_audit, golden_bounds_audit, golden_ratio};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Bo,
    LogConcavity,
}

/// A failure of a strict inequality `lhs > rhs`; `margin = lhs - rhs <= 0`.
///
/// BO records hold `(a, b)` with `b <= a`, `lhs = F(a)F(b)`, `rhs = F(a+b)`.
/// Log-concavity records hold `n`, `lhs = F(n)^2`, `rhs = F(n-1)F(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub kind: ViolationKind,
    pub indices: Vec<u64>,
    #[serde(with = "decimal::biguint")]
    pub lhs: BigUint,
    #[serde(with = "decimal::biguint")]
    pub rhs: BigUint,
    #[serde(with = "decimal::bigint")]
    pub margin: BigInt,
}

impl ViolationRecord {
    fn new(kind: ViolationKind, indices: Vec<u64>, lhs: BigUint, rhs: BigUint) -> Self {
        let margin = BigInt::from(lhs.clone()) - BigInt::from(rhs.clone());
        ViolationRecord { kind, indices, lhs, rhs, margin }
    }

    /// The smallest index involved (`b` for BO, `n` for log-concavity).
    pub fn min_index(&self) -> u64 {
        self.indices.iter().copied().min().unwrap_or(0)
    }

    pub fn to_witness(&self) -> Witness {
        Witness::new(self.indices.clone(), self.lhs.to_string(), self.rhs.to_string())
            .with_note(format!("margin {}", self.margin))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: String,
    pub kind: ViolationKind,
    pub region: String,
    /// Number of inequalities evaluated.
    pub checked: u64,
    pub violations: Vec<ViolationRecord>,
    /// Least `T` with no violation whose indices are all `>= T`; absent
    /// when violations reach the edge of the region.
    pub min_clean_threshold: Option<u64>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation_indices(&self) -> Vec<Vec<u64>> {
        self.violations.iter().map(|v| v.indices.clone()).collect()
    }

    pub fn to_verdict(&self) -> Verdict {
        let label = match self.kind {
            ViolationKind::Bo => format!("{}: F(a)F(b) > F(a+b)", self.spec),
            ViolationKind::LogConcavity => format!("{}: F(n)^2 > F(n-1)F(n+1)", self.spec),
        };
        let (from, to) = region_bounds(&self.region);
        let mut v = Verdict::new(label, Horizon { description: self.region.clone(), from, to });
        for r in &self.violations {
            v.refute(r.to_witness());
        }
        if let Some(t) = self.min_clean_threshold {
            v.thresholds.insert("T".into(), t);
        }
        v.note(format!("{} inequalities checked exactly", self.checked));
        v
    }

    /// One row per violation: kind, indices, lhs, rhs, margin.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), AnalysisError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["kind", "indices", "lhs", "rhs", "margin"])?;
        for r in &self.violations {
            let kind = match r.kind {
                ViolationKind::Bo => "bo",
                ViolationKind::LogConcavity => "log_concavity",
            };
            let idx: Vec<String> = r.indices.iter().map(u64::to_string).collect();
            w.write_record([
                kind.to_string(),
                idx.join(";"),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.margin.to_string(),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

fn region_bounds(region: &str) -> (u64, u64) {
    let nums: Vec<u64> = region
        .split(|c: char| !c.is_ascii_digit())
        .filter_map(|s| s.parse().ok())
        .collect();
    (nums.first().copied().unwrap_or(0), nums.last().copied().unwrap_or(0))
}

fn need(terms: &Terms, n: u64) -> Result<(), AnalysisError> {
    if terms.max_index() < n {
        return Err(AnalysisError::Domain(format!(
            "prefix of {} ends at {}, need {n}",
            terms.label(),
            terms.max_index()
        )));
    }
    Ok(())
}

fn bo_row(terms: &Terms, b: u64, a_max: u64, sum_max: u64) -> impl Iterator<Item = (u64, bool)> + '_ {
    let top = a_max.min(sum_max.saturating_sub(b));
    let fb = terms.get(b);
    (b..=top).map(move |a| (a, terms.get(a) * fb <= *terms.get(a + b)))
}

/// Every BO violation with `b_min <= b <= a <= a_max` and `a + b <= sum_max`,
/// ordered by `(b, a)`. Shared by the scanners and the criteria.
pub fn bo_region(terms: &Terms, b_min: u64, a_max: u64, sum_max: u64) -> (u64, Vec<ViolationRecord>) {
    let rows: Vec<(u64, Vec<ViolationRecord>)> = (b_min..=a_max.min(sum_max / 2))
        .into_par_iter()
        .map(|b| {
            let mut checked = 0;
            let mut found = Vec::new();
            for (a, fails) in bo_row(terms, b, a_max, sum_max) {
                checked += 1;
                if fails {
                    let lhs = terms.get(a) * terms.get(b);
                    found.push(ViolationRecord::new(ViolationKind::Bo, vec![a, b], lhs, terms.get(a + b).clone()));
                }
            }
            (checked, found)
        })
        .collect();
    let checked = rows.iter().map(|r| r.0).sum();
    (checked, rows.into_iter().flat_map(|r| r.1).collect())
}

/// Every `n` in `[n_min, n_max]` with `F(n)^2 <= F(n-1)F(n+1)`.
pub fn lc_region(terms: &Terms, n_min: u64, n_max: u64) -> Vec<ViolationRecord> {
    (n_min..=n_max)
        .into_par_iter()
        .filter_map(|n| {
            let lhs = terms.get(n) * terms.get(n);
            let rhs = terms.get(n - 1) * terms.get(n + 1);
            (lhs <= rhs).then(|| ViolationRecord::new(ViolationKind::LogConcavity, vec![n], lhs, rhs))
        })
        .collect()
}

/// Exact log-concavity margins `F(n)^2 - F(n-1)F(n+1)` for `n` in `[n_min, n_max]`.
pub fn lc_margins(terms: &Terms, n_min: u64, n_max: u64) -> Vec<BigInt> {
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| BigInt::from(terms.get(n) * terms.get(n)) - BigInt::from(terms.get(n - 1) * terms.get(n + 1)))
        .collect()
}

fn spec_name(terms: &Terms) -> String {
    terms.spec().map_or_else(|| terms.label().to_string(), ToString::to_string)
}

/// BO scan over a precomputed prefix.
pub fn scan_bo_terms(terms: &Terms, a_min: u64, sum_max: u64) -> Result<ScanReport, AnalysisError> {
    if a_min < 1 || a_min < terms.domain_start() {
        return Err(AnalysisError::Domain(format!(
            "a_min = {a_min} must be >= max(1, {})",
            terms.domain_start()
        )));
    }
    if sum_max < 2 * a_min {
        return Err(AnalysisError::Domain(format!("sum_max = {sum_max} < 2 * a_min")));
    }
    need(terms, sum_max)?;
    let (checked, violations) = bo_region(terms, a_min, sum_max, sum_max);
    let min_clean_threshold = clean_threshold(violations.iter().map(ViolationRecord::min_index), a_min, sum_max / 2);
    Ok(ScanReport {
        spec: spec_name(terms),
        kind: ViolationKind::Bo,
        region: format!("{a_min} <= b <= a, a + b <= {sum_max}"),
        checked,
        violations,
        min_clean_threshold,
    })
}

/// Checks `F(a)F(b) > F(a+b)` for all `a_min <= b <= a` with `a + b <= sum_max`.
pub fn scan_bo(seq: &SequenceSpec, a_min: u64, sum_max: u64) -> Result<ScanReport, AnalysisError> {
    let terms = Terms::compute(seq, sum_max)?;
    scan_bo_terms(&terms, a_min, sum_max)
}

pub fn scan_logconcavity_terms(terms: &Terms, n_min: u64, n_max: u64) -> Result<ScanReport, AnalysisError> {
    if n_min < terms.domain_start() + 1 {
        return Err(AnalysisError::Domain(format!("n_min = {n_min} must be >= {}", terms.domain_start() + 1)));
    }
    if n_max < n_min {
        return Err(AnalysisError::Domain(format!("empty range [{n_min}, {n_max}]")));
    }
    need(terms, n_max + 1)?;
    let violations = lc_region(terms, n_min, n_max);
    let min_clean_threshold = clean_threshold(violations.iter().map(ViolationRecord::min_index), n_min, n_max);
    Ok(ScanReport {
        spec: spec_name(terms),
        kind: ViolationKind::LogConcavity,
        region: format!("{n_min} <= n <= {n_max}"),
        checked: n_max - n_min + 1,
        violations,
        min_clean_threshold,
    })
}

/// Checks `F(n)^2 > F(n-1)F(n+1)` for every `n` in `[n_min, n_max]`.
pub fn scan_logconcavity(seq: &SequenceSpec, n_min: u64, n_max: u64) -> Result<ScanReport, AnalysisError> {
    let terms = Terms::compute(seq, n_max + 1)?;
    scan_logconcavity_terms(&terms, n_min, n_max)
}

/// Least `T` such that `F(a)F(b) > F(a+b)` for all `T <= b <= a` with
/// `a + b <= horizon`, or `None` if violations persist to `b = horizon / 2`.
pub fn find_min_bo_threshold(seq: &SequenceSpec, horizon: u64) -> Result<Option<u64>, AnalysisError> {
    if horizon < 4 {
        return Err(AnalysisError::Domain(format!("horizon must be >= 4, got {horizon}")));
    }
    let terms = Terms::compute(seq, horizon)?;
    let start = terms.domain_start().max(1);
    let failing: Vec<u64> = (start..=horizon / 2)
        .into_par_iter()
        .filter(|&b| bo_row(&terms, b, horizon, horizon).any(|(_, fails)| fails))
        .collect();
    Ok(clean_threshold(failing, start, horizon / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_bo_boundary() {
        let report = scan_bo(&SequenceSpec::EulerP, 2, 100).unwrap();
        assert!(!report.violations.is_empty());
        assert!(report.violations.iter().all(|v| v.indices[0] + v.indices[1] <= 9));
        assert!(report.violations.iter().all(|v| v.margin <= BigInt::from(0)));
    }

    #[test]
    fn euler_lc_threshold() {
        let report = scan_logconcavity(&SequenceSpec::EulerP, 2, 500).unwrap();
        assert_eq!(report.min_clean_threshold, Some(26));
        assert_eq!(report.violations.last().unwrap().indices, vec![25]);
    }

    #[test]
    fn fib_bo_never_clean() {
        assert_eq!(find_min_bo_threshold(&SequenceSpec::FibEven, 60).unwrap(), None);
    }

    #[test]
    fn csv_rows() {
        let report = scan_bo(&SequenceSpec::EulerP, 2, 9).unwrap();
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("kind,indices,lhs,rhs,margin\n"));
        assert_eq!(text.lines().count(), report.violations.len() + 1);
        assert!(text.contains("bo,2;2,4,5,-1"));
    }

    #[test]
    fn preconditions() {
        assert!(scan_bo(&SequenceSpec::EulerP, 0, 10).is_err());
        assert!(scan_bo(&SequenceSpec::EulerP, 6, 10).is_err());
        assert!(scan_logconcavity(&SequenceSpec::FibEven, 1, 10).is_err());
        assert!(find_min_bo_threshold(&SequenceSpec::EulerP, 3).is_err());
    }
}

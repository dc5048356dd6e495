//! Batched, escalating evaluation of interval conditions over many indices.
//!
//! All keys are tried at the starting precision; only the undecided ones are
//! retried at the next level, with each real map evaluated once per index and
//! level.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::envelopes::{PrecisionPolicy, RealMap};
use crate::interval::{IntervalError, RealInterval};
use crate::verdict::{clean_threshold, Horizon, Verdict, Witness};

/// Values of several real maps at one precision.
pub(crate) struct Tables {
    maps: Vec<BTreeMap<u64, Result<RealInterval, IntervalError>>>,
}

impl Tables {
    pub(crate) fn get(&self, map: usize, n: u64) -> Result<&RealInterval, IntervalError> {
        match self.maps[map].get(&n) {
            Some(Ok(v)) => Ok(v),
            Some(Err(e)) => Err(e.clone()),
            None => Err(IntervalError::Domain(format!("map {map} not tabulated at {n}"))),
        }
    }
}

pub(crate) enum Judged {
    Holds,
    Fails { lhs: String, rhs: String },
}

pub(crate) enum Decision {
    Holds,
    Fails { lhs: String, rhs: String },
    Unresolved(String),
}

pub(crate) struct Outcomes<K> {
    pub decisions: Vec<(K, Decision)>,
    pub max_precision: u32,
}

/// Decides `judge` for every key, escalating precision for undecided keys.
/// `needs(key)` lists the `(map, index)` values the judge will look up.
pub(crate) fn decide<K, N, J>(keys: Vec<K>, maps: &[&RealMap], policy: &PrecisionPolicy, needs: N, judge: J) -> Outcomes<K>
where
    K: Copy + Ord + Send + Sync,
    N: Fn(&K) -> Vec<(usize, u64)> + Sync,
    J: Fn(&K, &Tables, u32) -> Result<Option<Judged>, IntervalError> + Sync,
{
    let mut pending = keys;
    let mut done: Vec<(K, Decision)> = Vec::with_capacity(pending.len());
    let mut max_precision = policy.start;
    for prec in policy.levels() {
        if pending.is_empty() {
            break;
        }
        max_precision = prec;
        let mut wanted: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); maps.len()];
        for key in &pending {
            for (m, n) in needs(key) {
                wanted[m].insert(n);
            }
        }
        let tables = Tables {
            maps: wanted
                .iter()
                .zip(maps)
                .map(|(idx, map)| idx.par_iter().map(|&n| (n, map(n, prec))).collect::<Vec<_>>().into_iter().collect())
                .collect(),
        };
        let results: Vec<(K, Option<Decision>)> = pending
            .par_iter()
            .map(|key| {
                let d = match judge(key, &tables, prec) {
                    Ok(Some(Judged::Holds)) => Some(Decision::Holds),
                    Ok(Some(Judged::Fails { lhs, rhs })) => Some(Decision::Fails { lhs, rhs }),
                    Ok(None) | Err(IntervalError::ContainsZero) => None,
                    Err(e) => Some(Decision::Unresolved(e.to_string())),
                };
                (*key, d)
            })
            .collect();
        pending = Vec::new();
        for (key, d) in results {
            match d {
                Some(d) => done.push((key, d)),
                None => pending.push(key),
            }
        }
    }
    done.extend(
        pending
            .into_iter()
            .map(|k| (k, Decision::Unresolved(format!("undecided at {} bits", policy.cap)))),
    );
    done.sort_by_key(|d| d.0);
    Outcomes { decisions: done, max_precision }
}

/// `Some(true)` if `lhs <= rhs` conclusively, `Some(false)` if `lhs > rhs`
/// conclusively, `None` while the enclosures overlap.
pub(crate) fn settle_le(lhs: &RealInterval, rhs: &RealInterval) -> Option<bool> {
    if lhs.certainly_le(rhs) {
        Some(true)
    } else if rhs.certainly_lt(lhs) {
        Some(false)
    } else {
        None
    }
}

pub(crate) fn show(x: &RealInterval) -> String {
    format!("{x}")
}

/// How many witnesses of each kind a condition verdict keeps verbatim.
pub(crate) const WITNESS_CAP: usize = 64;

/// Describes one quantified condition for verdict assembly.
pub(crate) struct ConditionSpec<'a> {
    pub label: String,
    /// Threshold name, e.g. `"N3"`.
    pub name: &'a str,
    pub candidate: Option<u64>,
    pub horizon: Horizon,
    /// Range the discovered threshold lives in.
    pub from: u64,
    pub to: u64,
}

/// Turns decisions into a verdict, discovering the least threshold above
/// which nothing failed. `index_of` maps a key to the index the threshold
/// bounds (`b` for pair conditions).
///
/// With a candidate threshold, failures at or above it refute. Without one,
/// the condition ("there exists a threshold") is refuted only if failures
/// reach the end of the range.
pub(crate) fn condition_verdict<K>(
    spec: ConditionSpec<'_>,
    outcomes: Outcomes<K>,
    index_of: impl Fn(&K) -> u64,
    indices_of: impl Fn(&K) -> Vec<u64>,
) -> Verdict {
    let bad = outcomes
        .decisions
        .iter()
        .filter(|(_, d)| !matches!(d, Decision::Holds))
        .map(|(k, _)| index_of(k));
    let discovered = clean_threshold(bad, spec.from, spec.to);
    let mut v = Verdict::new(spec.label, spec.horizon);
    let binding = |i: u64| match spec.candidate {
        Some(c) => i >= c,
        None => discovered.is_none(),
    };
    let (mut refuting, mut excused, mut open) = (0usize, 0usize, 0usize);
    for (k, d) in &outcomes.decisions {
        let i = index_of(k);
        match d {
            Decision::Holds => {}
            Decision::Fails { lhs, rhs } => {
                let w = Witness::new(indices_of(k), lhs.clone(), rhs.clone());
                if binding(i) {
                    refuting += 1;
                    if refuting <= WITNESS_CAP {
                        v.refute(w);
                    }
                } else {
                    excused += 1;
                    if excused <= WITNESS_CAP {
                        v.below_threshold.push(w);
                    }
                }
            }
            Decision::Unresolved(why) => {
                if binding(i) || spec.candidate.is_none() {
                    open += 1;
                    if open <= WITNESS_CAP {
                        v.unresolved.push(Witness::new(indices_of(k), "", "").with_note(why.clone()));
                    }
                    if binding(i) {
                        v.status = v.status.combine(crate::verdict::Status::Inconclusive);
                    }
                }
            }
        }
    }
    if let Some(t) = discovered {
        v.thresholds.insert(spec.name.to_string(), t);
    }
    if let Some(c) = spec.candidate {
        v.note(format!("candidate {} = {c}", spec.name));
    }
    if refuting > WITNESS_CAP {
        v.note(format!("{refuting} refuting failures, first {WITNESS_CAP} listed"));
    }
    if excused > 0 {
        v.note(format!("{excused} failures below the threshold"));
    }
    v.note(format!("max precision used: {} bits", outcomes.max_precision));
    v
}

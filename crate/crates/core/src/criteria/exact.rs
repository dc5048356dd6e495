//! Exact (integer/rational) checks of the log-concavity ⇒ BO implications.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CriterionError;
use crate::analysis::{bo_region, lc_region};
use crate::seq_core::{SequenceSpec, Terms};
use crate::verdict::{Horizon, Verdict, Witness};

fn need(terms: &Terms, n: u64) -> Result<(), CriterionError> {
    if terms.max_index() < n {
        return Err(CriterionError::InvalidInput(format!("need the prefix of {} up to {n}", terms.label())));
    }
    Ok(())
}

fn ratio(num: &BigUint, den: &BigUint) -> Option<BigRational> {
    (!den.is_zero()).then(|| BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone())))
}

/// `f(n)/f(n-1) > f(n+1)/f(n)` for `n0 < n <= horizon`, compared as exact
/// rationals.
pub fn check_ratio_descent_terms(terms: &Terms, n0: u64, horizon: u64) -> Result<Verdict, CriterionError> {
    if n0 < 1 || horizon <= n0 + 1 {
        return Err(CriterionError::InvalidInput(format!("need 1 <= n0 and horizon > n0 + 1, got {n0}, {horizon}")));
    }
    need(terms, horizon + 1)?;
    let failures: Vec<Witness> = (n0 + 1..=horizon)
        .into_par_iter()
        .filter_map(|n| {
            let (prev, cur, next) = (terms.get(n - 1), terms.get(n), terms.get(n + 1));
            match (ratio(cur, prev), ratio(next, cur)) {
                (Some(left), Some(right)) if left > right => None,
                (Some(left), Some(right)) => Some(Witness::new(vec![n], left.to_string(), right.to_string())),
                _ => Some(Witness::new(vec![n], "undefined", "").with_note("zero denominator")),
            }
        })
        .collect();
    let mut v = Verdict::new(
        format!("{}: F(n)/F(n-1) > F(n+1)/F(n)", terms.label()),
        Horizon::indices(n0 + 1, horizon),
    );
    for w in failures {
        v.refute(w);
    }
    Ok(v)
}

pub fn check_ratio_descent(seq: &SequenceSpec, n0: u64, horizon: u64) -> Result<Verdict, CriterionError> {
    check_ratio_descent_terms(&Terms::compute(seq, horizon + 1)?, n0, horizon)
}

fn lc_part(terms: &Terms, from: u64, to: u64, label: String) -> Verdict {
    let mut v = Verdict::new(label, Horizon::indices(from, to));
    if from <= to {
        for r in lc_region(terms, from, to) {
            v.refute(r.to_witness());
        }
    }
    v
}

fn bo_part(terms: &Terms, b_min: u64, a_max: u64, sum_max: u64, label: String) -> Verdict {
    let (checked, violations) = bo_region(terms, b_min, a_max, sum_max);
    let mut v = Verdict::new(label, Horizon::pairs(b_min, a_max, sum_max));
    for r in &violations {
        v.refute(r.to_witness());
    }
    v.note(format!("{checked} pairs checked exactly"));
    v
}

/// Hypotheses `f(n) f(n0) > f(n + n0)` for `n0 <= n <= horizon` and
/// log-concavity on `(n0, horizon]`; conclusion `f(a) f(b) > f(a+b)` for
/// `n0 <= b <= a <= horizon - n0`.
pub fn check_prop42_terms(terms: &Terms, n0: u64, horizon: u64) -> Result<Verdict, CriterionError> {
    if n0 < 1 || horizon < 2 * n0 {
        return Err(CriterionError::InvalidInput(format!("need n0 >= 1 and horizon >= 2 n0, got {n0}, {horizon}")));
    }
    let top = (horizon + n0).max(2 * (horizon - n0)).max(horizon + 1);
    need(terms, top)?;
    let f0 = terms.get(n0);
    let shift_failures: Vec<Witness> = (n0..=horizon)
        .into_par_iter()
        .filter_map(|n| {
            let lhs = terms.get(n) * f0;
            let rhs = terms.get(n + n0);
            (lhs <= *rhs).then(|| Witness::new(vec![n], lhs.to_string(), rhs.to_string()))
        })
        .collect();
    let mut shift = Verdict::new(
        format!("hypothesis: F(n) F({n0}) > F(n + {n0})"),
        Horizon::indices(n0, horizon),
    );
    for w in shift_failures {
        shift.refute(w);
    }
    let lc = lc_part(terms, n0 + 1, horizon, format!("hypothesis: log-concave on ({n0}, {horizon}]"));
    let concl = bo_part(
        terms,
        n0,
        horizon - n0,
        2 * (horizon - n0),
        format!("conclusion: F(a)F(b) > F(a+b) for {n0} <= b <= a <= {}", horizon - n0),
    );
    let mut v = Verdict::new(format!("implication with n0 = {n0} for {}", terms.label()), Horizon::indices(n0, horizon));
    v.push_part(shift);
    v.push_part(lc);
    v.push_part(concl);
    Ok(v)
}

pub fn check_prop42(seq: &SequenceSpec, n0: u64, horizon: u64) -> Result<Verdict, CriterionError> {
    if horizon < 2 * n0 {
        return Err(CriterionError::InvalidInput(format!("horizon must be >= 2 n0 = {}", 2 * n0)));
    }
    let top = (horizon + n0).max(2 * (horizon - n0)).max(horizon + 1);
    check_prop42_terms(&Terms::compute(seq, top)?, n0, horizon)
}

/// Hypotheses `f(0) >= 1` and log-concavity on `[1, horizon]`; conclusion
/// `f(a) f(b) > f(a+b)` for all `1 <= b <= a` with `a + b <= horizon`.
pub fn check_thm43_terms(terms: &Terms, horizon: u64) -> Result<Verdict, CriterionError> {
    if horizon < 2 {
        return Err(CriterionError::InvalidInput("horizon must be >= 2".into()));
    }
    need(terms, horizon + 1)?;
    let mut start = Verdict::new("hypothesis: F(0) >= 1", Horizon::indices(0, 0));
    let f0 = terms.get(0);
    if *f0 < BigUint::from(1u32) {
        start.refute(Witness::new(vec![0], f0.to_string(), "1"));
    }
    let lc = lc_part(terms, 1, horizon, format!("hypothesis: log-concave on [1, {horizon}]"));
    let concl = bo_part(
        terms,
        1,
        horizon - 1,
        horizon,
        format!("conclusion: F(a)F(b) > F(a+b) for 1 <= b <= a, a + b <= {horizon}"),
    );
    let mut v = Verdict::new(format!("f(0) >= 1 implication for {}", terms.label()), Horizon::pairs(1, horizon - 1, horizon));
    v.push_part(start);
    v.push_part(lc);
    v.push_part(concl);
    Ok(v)
}

pub fn check_thm43(seq: &SequenceSpec, horizon: u64) -> Result<Verdict, CriterionError> {
    check_thm43_terms(&Terms::compute(seq, horizon + 1)?, horizon)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeStatus {
    Plausible,
    ViolatedOnWindow,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowMax {
    pub from: u64,
    pub to: u64,
    /// Exact maximum ratio as `p/q`.
    pub max: String,
    /// The same, rounded down to 12 decimals.
    pub max_decimal: String,
}

/// Finite-horizon evidence about `limsup f(n + n0)/f(n) < f(n0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub label: String,
    pub sequence: String,
    pub n0: u64,
    pub f_n0: String,
    /// Ratios run over `n0 < n <= horizon - n0`.
    pub horizon: u64,
    /// Running maxima over four consecutive windows; the last is the
    /// trailing window.
    pub windows: Vec<WindowMax>,
    pub status: ProbeStatus,
}

fn decimal(q: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * BigRational::from_integer(scale.clone())).floor().to_integer();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    format!("{int}.{:0>width$}", frac.to_string(), width = digits as usize)
}

/// Computes exact ratios `f(n + n0)/f(n)` for `n0 < n <= horizon - n0` and
/// compares their trailing maxima with `f(n0)`.
///
/// `Plausible`: the trailing quarter stays strictly below `f(n0)` and the
/// margin does not shrink between its two halves. `ViolatedOnWindow`: every
/// ratio in the second half of the trailing quarter is `>= f(n0)`.
/// Otherwise `Inconclusive`. A finite probe: the limsup itself is not
/// decidable from finitely many terms.
pub fn limsup_probe_terms(terms: &Terms, n0: u64, horizon: u64) -> Result<ProbeReport, CriterionError> {
    if n0 < 1 || horizon <= 2 * n0 {
        return Err(CriterionError::InvalidInput(format!("need horizon > 2 n0, got n0 = {n0}, horizon = {horizon}")));
    }
    need(terms, horizon)?;
    let (lo, hi) = (n0 + 1, horizon - n0);
    let ratios: Vec<BigRational> = (lo..=hi)
        .into_par_iter()
        .map(|n| ratio(terms.get(n + n0), terms.get(n)).ok_or(n))
        .collect::<Result<_, u64>>()
        .map_err(|n| CriterionError::InvalidInput(format!("F({n}) = 0; ratio undefined")))?;
    let len = ratios.len() as u64;
    let quarter = (len / 4).max(1);
    let mut windows = Vec::new();
    let mut start = 0u64;
    while start < len {
        let end = if windows.len() == 3 { len } else { (start + quarter).min(len) };
        let max = ratios[start as usize..end as usize].iter().max().expect("non-empty window");
        windows.push(WindowMax {
            from: lo + start,
            to: lo + end - 1,
            max: max.to_string(),
            max_decimal: decimal(max, 12),
        });
        start = end;
    }
    let f0 = BigRational::from_integer(BigInt::from(terms.get(n0).clone()));
    let tail_len = (len / 4).max(2).min(len);
    let tail = &ratios[(len - tail_len) as usize..];
    let (first, second) = tail.split_at(tail.len() / 2);
    let max_of = |s: &[BigRational]| s.iter().max().cloned();
    let status = match (max_of(first), max_of(second)) {
        (Some(m1), Some(m2)) if m1 < f0 && m2 < f0 => {
            if &f0 - &m2 >= &f0 - &m1 {
                ProbeStatus::Plausible
            } else {
                ProbeStatus::Inconclusive
            }
        }
        (_, Some(_)) if second.iter().all(|r| *r >= f0) => ProbeStatus::ViolatedOnWindow,
        _ => ProbeStatus::Inconclusive,
    };
    Ok(ProbeReport {
        label: "finite probe of limsup F(n+n0)/F(n) < F(n0); not a decision procedure".into(),
        sequence: terms.label().to_string(),
        n0,
        f_n0: terms.get(n0).to_string(),
        horizon,
        windows,
        status,
    })
}

pub fn limsup_probe(seq: &SequenceSpec, n0: u64, horizon: u64) -> Result<ProbeReport, CriterionError> {
    limsup_probe_terms(&Terms::compute(seq, horizon)?, n0, horizon)
}

impl ProbeReport {
    /// The trailing maximum as an `f64`, for display.
    pub fn trailing_max_f64(&self) -> f64 {
        self.windows.last().and_then(|w| w.max_decimal.parse::<f64>().ok()).unwrap_or(f64::NAN)
    }

    pub fn f_n0_f64(&self) -> f64 {
        self.f_n0.parse::<BigInt>().ok().and_then(|v| v.to_f64()).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_descent_examples() {
        assert!(check_ratio_descent(&SequenceSpec::EulerP, 26, 200).unwrap().is_verified());
        assert!(check_ratio_descent(&SequenceSpec::FibEven, 1, 100).unwrap().is_verified());
        let mary = check_ratio_descent(&SequenceSpec::MAry(2), 1, 50).unwrap();
        assert!(mary.is_refuted());
        assert!(mary.witnesses.iter().any(|w| w.indices[0] % 2 == 1));
    }

    #[test]
    fn prop42_examples() {
        let v = check_prop42(&SequenceSpec::EulerP, 26, 120).unwrap();
        assert!(v.is_verified(), "{v:#?}");
        assert!(check_prop42(&SequenceSpec::EulerP, 1, 20).unwrap().parts[0].is_refuted());
        assert!(check_prop42(&SequenceSpec::FibEven, 1, 20).unwrap().parts[0].is_refuted());
    }

    #[test]
    fn thm43_examples() {
        assert!(check_thm43(&SequenceSpec::shifted(SequenceSpec::EulerP, 26), 120).unwrap().is_verified());
        let fib = check_thm43(&SequenceSpec::FibEven, 40).unwrap();
        assert!(fib.parts[0].is_refuted());
        assert!(fib.parts[1].is_verified());
        assert!(fib.parts[2].is_refuted());
        for j in 1..=3 {
            assert!(check_thm43(&SequenceSpec::shifted(SequenceSpec::FibEven, j), 60).unwrap().is_verified());
        }
    }

    #[test]
    fn probe_examples() {
        let euler = limsup_probe(&SequenceSpec::EulerP, 26, 400).unwrap();
        assert_eq!(euler.status, ProbeStatus::Plausible);
        let fib = limsup_probe(&SequenceSpec::FibEven, 2, 100).unwrap();
        assert_eq!(fib.status, ProbeStatus::ViolatedOnWindow);
        assert!((fib.trailing_max_f64() - 6.854101966).abs() < 1e-6);
        let constant = Terms::from_values("const", 0, vec![BigUint::from(3u32); 50]);
        assert_eq!(limsup_probe_terms(&constant, 4, 49).unwrap().status, ProbeStatus::Plausible);
    }

    #[test]
    fn decimal_rounds_down() {
        assert_eq!(decimal(&BigRational::new(2.into(), 3.into()), 4), "0.6666");
    }
}

//! Executable forms of the general criteria: the Bessenrodt–Ono criterion,
//! the log-concavity criterion, and the log-concavity ⇒ BO implications.

mod engine;
mod exact;
mod presets;

use num_bigint::BigInt;
use thiserror::Error;

use crate::analysis::{bo_region, lc_region, AnalysisError};
use crate::envelopes::{certify_envelope, BoundEnvelope, EnvelopeError, PrecisionPolicy, RealMap, Side};
use crate::interval::RealInterval;
use crate::seq_core::{SeqError, SequenceSpec, Terms};
use crate::verdict::{clean_threshold, Horizon, Verdict};
use engine::{condition_verdict, decide, settle_le, show, ConditionSpec, Decision, Judged, Outcomes};

pub use exact::{
    check_prop42, check_prop42_terms, check_ratio_descent, check_ratio_descent_terms, check_thm43, check_thm43_terms,
    limsup_probe, limsup_probe_terms, ProbeReport, ProbeStatus, WindowMax,
};
pub use presets::{
    bo_euler_example21, bo_mary, bo_planepartition, lc_chen, preset, run_preset, Criterion, PresetInstance, PRESET_IDS,
};

#[derive(Debug, Error)]
pub enum CriterionError {
    #[error("invalid criterion input: {0}")]
    InvalidInput(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Inputs of the BO criterion. `None` thresholds are discovered.
#[derive(Clone)]
pub struct BOCriterionInputs {
    pub label: String,
    pub env: BoundEnvelope,
    pub g: RealMap,
    pub h: RealMap,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub n3: Option<u64>,
}

/// Inputs of the log-concavity criterion, plus an optional sufficient
/// "closing" inequality `lhs(n) >= rhs(n)` that implies condition 2.
#[derive(Clone)]
pub struct LCCriterionInputs {
    pub label: String,
    pub env: BoundEnvelope,
    pub h: RealMap,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub closing: Option<ClosingCheck>,
}

#[derive(Clone)]
pub struct ClosingCheck {
    pub label: String,
    pub lhs: RealMap,
    pub rhs: RealMap,
    pub candidate: Option<u64>,
}

impl std::fmt::Debug for BOCriterionInputs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BOCriterionInputs")
            .field("label", &self.label)
            .field("env", &self.env)
            .field("n1", &self.n1)
            .field("n2", &self.n2)
            .field("n3", &self.n3)
            .finish_non_exhaustive()
    }
}

impl std::fmt::Debug for LCCriterionInputs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LCCriterionInputs")
            .field("label", &self.label)
            .field("env", &self.env)
            .field("n1", &self.n1)
            .field("n2", &self.n2)
            .field("closing", &self.closing)
            .finish_non_exhaustive()
    }
}

impl std::fmt::Debug for ClosingCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClosingCheck")
            .field("label", &self.label)
            .field("candidate", &self.candidate)
            .finish_non_exhaustive()
    }
}

const F: usize = 0;
const G: usize = 1;
const H: usize = 2;
const C1: usize = 3;
const C2: usize = 4;

fn bo_maps(inputs: &BOCriterionInputs) -> [&RealMap; 5] {
    [&inputs.env.f, &inputs.g, &inputs.h, &inputs.env.c1, &inputs.env.c2]
}

fn pairs(horizon: u64) -> Vec<(u64, u64)> {
    (1..=horizon).flat_map(|b| (b..=horizon).map(move |a| (b, a))).collect()
}

fn require(horizon: u64, candidate: Option<u64>, name: &str) -> Result<(), CriterionError> {
    match candidate {
        Some(0) => Err(CriterionError::InvalidInput(format!("{name} must be positive"))),
        Some(c) if c > horizon => Err(CriterionError::InvalidInput(format!("{name} = {c} exceeds horizon {horizon}"))),
        _ if horizon == 0 => Err(CriterionError::InvalidInput("horizon must be positive".into())),
        _ => Ok(()),
    }
}

/// Condition 1: `f(a) + f(b) - f(a+b) >= g(b)` for `b <= a <= horizon`.
/// Pairs are scanned from `b = 1` to discover the least valid `N1`.
pub fn check_bo_condition1(
    inputs: &BOCriterionInputs,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    require(horizon, inputs.n1, "N1")?;
    let outcomes = decide(
        pairs(horizon),
        &bo_maps(inputs),
        policy,
        |&(b, a)| vec![(F, a), (F, b), (F, a + b), (G, b)],
        |&(b, a), t, _| {
            let lhs = &(t.get(F, a)? + t.get(F, b)?) - t.get(F, a + b)?;
            let g = t.get(G, b)?;
            Ok(settle_le(g, &lhs).map(|ok| judged(ok, &lhs, g)))
        },
    );
    Ok(pair_verdict(
        format!("{}: f(a) + f(b) - f(a+b) >= g(b)", inputs.label),
        "N1",
        inputs.n1,
        horizon,
        outcomes,
    ))
}

/// Condition 2: `c2(a+b) / c1(a) <= h(b)` for `b <= a <= horizon`; a
/// non-positive `c1(a)` counts as a failure.
pub fn check_bo_condition2(
    inputs: &BOCriterionInputs,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    require(horizon, inputs.n2, "N2")?;
    let outcomes = decide(
        pairs(horizon),
        &bo_maps(inputs),
        policy,
        |&(b, a)| vec![(C1, a), (C2, a + b), (H, b)],
        |&(b, a), t, _| {
            let c1 = t.get(C1, a)?;
            if c1.is_nonpositive() {
                return Ok(Some(Judged::Fails { lhs: format!("c1(a) = {}", show(c1)), rhs: "c1(a) > 0".into() }));
            }
            if !c1.is_positive() {
                return Ok(None);
            }
            let c2 = t.get(C2, a + b)?;
            let h = t.get(H, b)?;
            Ok(settle_le(c2, &(h * c1)).map(|ok| {
                let ratio = c2.div(c1).map(|r| show(&r)).unwrap_or_default();
                judged(ok, &ratio, h)
            }))
        },
    );
    Ok(pair_verdict(
        format!("{}: c2(a+b)/c1(a) <= h(b)", inputs.label),
        "N2",
        inputs.n2,
        horizon,
        outcomes,
    ))
}

/// Condition 3: `g(n) >= log h(n) - log c1(n)` for `1 <= n <= horizon`,
/// decided in the equivalent form `h(n) <= e^{g(n)} c1(n)`.
pub fn check_bo_condition3(
    inputs: &BOCriterionInputs,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    require(horizon, inputs.n3, "N3")?;
    let outcomes = decide(
        (1..=horizon).collect(),
        &bo_maps(inputs),
        policy,
        |&n| vec![(G, n), (H, n), (C1, n)],
        |&n, t, _| {
            let (g, h, c1) = (t.get(G, n)?, t.get(H, n)?, t.get(C1, n)?);
            if c1.is_nonpositive() {
                return Ok(Some(Judged::Fails { lhs: show(g), rhs: "+inf (c1(n) <= 0)".into() }));
            }
            Ok(settle_le(h, &(&g.exp() * c1)).map(|ok| {
                let rhs = match (h.ln(), c1.ln()) {
                    (Ok(lh), Ok(lc)) => show(&(&lh - &lc)),
                    _ => "undefined".into(),
                };
                if ok {
                    Judged::Holds
                } else {
                    Judged::Fails { lhs: show(g), rhs }
                }
            }))
        },
    );
    Ok(index_verdict(
        format!("{}: g(n) >= log h(n) - log c1(n)", inputs.label),
        "N3",
        inputs.n3,
        1,
        horizon,
        outcomes,
    ))
}

/// `g(n) > 0` and `h(n) > 0` for `1 <= n <= horizon`.
pub fn check_bo_positivity(
    inputs: &BOCriterionInputs,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    let outcomes = decide(
        (1..=horizon).collect(),
        &bo_maps(inputs),
        policy,
        |&n| vec![(G, n), (H, n)],
        |&n, t, _| positivity(t.get(G, n)?, t.get(H, n)?),
    );
    Ok(index_verdict(format!("{}: g(n) > 0 and h(n) > 0", inputs.label), "Npos", None, 1, horizon, outcomes))
}

fn positivity(g: &RealInterval, h: &RealInterval) -> Result<Option<Judged>, crate::interval::IntervalError> {
    if g.is_positive() && h.is_positive() {
        Ok(Some(Judged::Holds))
    } else if g.is_nonpositive() || h.is_nonpositive() {
        Ok(Some(Judged::Fails { lhs: format!("g = {}, h = {}", show(g), show(h)), rhs: "> 0".into() }))
    } else {
        Ok(None)
    }
}

fn judged(ok: bool, lhs: &dyn std::fmt::Display, rhs: &RealInterval) -> Judged {
    if ok {
        Judged::Holds
    } else {
        Judged::Fails { lhs: lhs.to_string(), rhs: show(rhs) }
    }
}

fn pair_verdict(
    label: String,
    name: &str,
    candidate: Option<u64>,
    horizon: u64,
    outcomes: Outcomes<(u64, u64)>,
) -> Verdict {
    condition_verdict(
        ConditionSpec {
            label,
            name,
            candidate,
            horizon: Horizon::pairs(1, horizon, 2 * horizon),
            from: 1,
            to: horizon,
        },
        outcomes,
        |&(b, _)| b,
        |&(b, a)| vec![a, b],
    )
}

fn index_verdict(
    label: String,
    name: &str,
    candidate: Option<u64>,
    from: u64,
    to: u64,
    outcomes: Outcomes<u64>,
) -> Verdict {
    condition_verdict(
        ConditionSpec { label, name, candidate, horizon: Horizon::indices(from, to), from, to },
        outcomes,
        |&n| n,
        |&n| vec![n],
    )
}

/// Certification of the envelope as a condition with claimed start `env.n0`.
fn envelope_part(
    env: &BoundEnvelope,
    terms: &Terms,
    to: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    let report = certify_envelope(env, terms, 1, to, policy)?;
    let mut decisions: Vec<(u64, Decision)> = report
        .failures
        .iter()
        .map(|f| {
            let (lhs, rhs) = match f.side {
                Side::Lower => (f.bound.clone(), f.value.clone()),
                Side::Upper => (f.value.clone(), f.bound.clone()),
            };
            (f.n, Decision::Fails { lhs, rhs })
        })
        .collect();
    decisions.extend(report.unresolved.iter().map(|&n| (n, Decision::Unresolved("precision exhausted".into()))));
    decisions.sort_by_key(|d| d.0);
    Ok(index_verdict(
        format!("envelope {}: c1(n) e^f(n) < F(n) < c2(n) e^f(n)", env.label),
        "N0",
        Some(env.n0),
        1,
        to,
        Outcomes { decisions, max_precision: report.max_precision },
    ))
}

fn combined_threshold(parts: &[&Verdict], names: &[&str]) -> Option<u64> {
    let mut t = 1;
    for (part, name) in parts.iter().zip(names) {
        t = t.max(*part.thresholds.get(*name)?);
    }
    Some(t)
}

/// Runs conditions 1–3, positivity of `g` and `h`, and envelope
/// certification on `[1, 2 horizon]`; combines the discovered thresholds as
/// `T = max{N0, N1, N2, N3, Npos}` and then checks `F(a)F(b) > F(a+b)`
/// exactly for all `T <= b <= a <= horizon`.
pub fn run_bo_criterion(
    inputs: &BOCriterionInputs,
    seq: &SequenceSpec,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    let terms = Terms::compute(seq, 2 * horizon)?;
    run_bo_criterion_terms(inputs, &terms, horizon, policy)
}

pub fn run_bo_criterion_terms(
    inputs: &BOCriterionInputs,
    terms: &Terms,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    if terms.max_index() < 2 * horizon {
        return Err(CriterionError::InvalidInput(format!("need the prefix up to {}", 2 * horizon)));
    }
    let envelope = envelope_part(&inputs.env, terms, 2 * horizon, policy)?;
    let positive = check_bo_positivity(inputs, horizon, policy)?;
    let c1 = check_bo_condition1(inputs, horizon, policy)?;
    let c2 = check_bo_condition2(inputs, horizon, policy)?;
    let c3 = check_bo_condition3(inputs, horizon, policy)?;
    let names = ["N0", "Npos", "N1", "N2", "N3"];
    let combined = combined_threshold(&[&envelope, &positive, &c1, &c2, &c3], &names);

    let mut v = Verdict::new(
        format!("BO criterion {} for {}", inputs.label, terms.label()),
        Horizon::pairs(1, horizon, 2 * horizon),
    );
    for part in [&envelope, &positive, &c1, &c2, &c3] {
        for (k, t) in &part.thresholds {
            v.thresholds.insert(k.clone(), *t);
        }
    }
    let claimed = [Some(inputs.env.n0), inputs.n1, inputs.n2, inputs.n3].into_iter().flatten().max();
    if let Some(c) = claimed {
        v.note(format!("claimed threshold max(N0, N1, N2, N3) = {c}"));
    }
    for part in [envelope, positive, c1, c2, c3] {
        v.push_part(part);
    }
    match combined {
        Some(t) if t <= horizon => {
            v.thresholds.insert("T".into(), t);
            v.push_part(bo_conclusion(terms, t, horizon));
        }
        Some(t) => v.note(format!("combined threshold {t} lies beyond the horizon; conclusion not scanned")),
        None => v.note("some condition fails up to the horizon; no combined threshold"),
    }
    Ok(v)
}

fn bo_conclusion(terms: &Terms, t: u64, horizon: u64) -> Verdict {
    let (checked, violations) = bo_region(terms, t, horizon, 2 * horizon);
    let mut v = Verdict::new(
        format!("conclusion: F(a)F(b) > F(a+b) for {t} <= b <= a <= {horizon}"),
        Horizon::pairs(t, horizon, 2 * horizon),
    );
    for r in &violations {
        v.refute(r.to_witness());
    }
    v.note(format!("{checked} pairs checked exactly"));
    v
}

fn lc_maps(inputs: &LCCriterionInputs) -> Vec<&RealMap> {
    let mut maps = vec![&inputs.env.f, &inputs.h, &inputs.h, &inputs.env.c1, &inputs.env.c2];
    if let Some(c) = &inputs.closing {
        maps.push(&c.lhs);
        maps.push(&c.rhs);
    }
    maps
}

const CL: usize = 5;
const CR: usize = 6;

/// Condition 1 of the log-concavity criterion:
/// `h(n) <= 2f(n) - f(n-1) - f(n+1)` for `2 <= n <= horizon`.
pub fn check_lc_condition1(
    inputs: &LCCriterionInputs,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    require(horizon, inputs.n1, "N1")?;
    let outcomes = decide(
        (2..=horizon).collect(),
        &lc_maps(inputs),
        policy,
        |&n| vec![(F, n - 1), (F, n), (F, n + 1), (H, n)],
        |&n, t, _| {
            let f = t.get(F, n)?;
            let rhs = &(f + f) - &(t.get(F, n - 1)? + t.get(F, n + 1)?);
            let h = t.get(H, n)?;
            Ok(settle_le(h, &rhs).map(|ok| judged(ok, h, &rhs)))
        },
    );
    Ok(index_verdict(
        format!("{}: h(n) <= 2f(n) - f(n-1) - f(n+1)", inputs.label),
        "N1",
        inputs.n1,
        2,
        horizon,
        outcomes,
    ))
}

/// Condition 2: `c2(n+1) c2(n-1) / c1(n)^2 <= e^{h(n)}` for `2 <= n <= horizon`.
pub fn check_lc_condition2(
    inputs: &LCCriterionInputs,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    require(horizon, inputs.n2, "N2")?;
    let outcomes = decide(
        (2..=horizon).collect(),
        &lc_maps(inputs),
        policy,
        |&n| vec![(C2, n - 1), (C2, n + 1), (C1, n), (H, n)],
        |&n, t, _| {
            let c1 = t.get(C1, n)?;
            if c1.is_nonpositive() {
                return Ok(Some(Judged::Fails { lhs: format!("c1(n) = {}", show(c1)), rhs: "c1(n) > 0".into() }));
            }
            if !c1.is_positive() {
                return Ok(None);
            }
            let num = t.get(C2, n - 1)? * t.get(C2, n + 1)?;
            let eh = t.get(H, n)?.exp();
            Ok(settle_le(&num, &(&eh * &c1.square())).map(|ok| {
                let ratio = num.div(&c1.square()).map(|r| show(&r)).unwrap_or_default();
                judged(ok, &ratio, &eh)
            }))
        },
    );
    Ok(index_verdict(
        format!("{}: c2(n+1) c2(n-1) / c1(n)^2 <= e^h(n)", inputs.label),
        "N2",
        inputs.n2,
        2,
        horizon,
        outcomes,
    ))
}

fn check_lc_closing(
    inputs: &LCCriterionInputs,
    closing: &ClosingCheck,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    require(horizon, closing.candidate, "closing threshold")?;
    let outcomes = decide(
        (2..=horizon).collect(),
        &lc_maps(inputs),
        policy,
        |&n| vec![(CL, n), (CR, n)],
        |&n, t, _| {
            let (l, r) = (t.get(CL, n)?, t.get(CR, n)?);
            Ok(settle_le(r, l).map(|ok| judged(ok, l, r)))
        },
    );
    Ok(index_verdict(closing.label.clone(), "Nclose", closing.candidate, 2, horizon, outcomes))
}

fn reject_vanishing_h(inputs: &LCCriterionInputs, horizon: u64, policy: &PrecisionPolicy) -> Result<(), CriterionError> {
    let zero = (2..=horizon).all(|n| {
        (inputs.h)(n, policy.start).is_ok_and(|h| h.is_point() && h.cmp_int(&BigInt::from(0)).is_some_and(|o| o.is_eq()))
    });
    if zero {
        return Err(CriterionError::InvalidInput("h vanishes identically; it must be positive".into()));
    }
    Ok(())
}

/// Runs both conditions (and the closing inequality, when present),
/// positivity of `h`, and envelope certification on `[1, horizon + 1]`.
/// The combined threshold is `T = max{N0 + 1, N1, N2, Npos}` (`n - 1` must
/// also lie in the certified range); strict log-concavity is then checked
/// exactly on `[T, horizon]`, and the exact scan below `T` is reported too.
pub fn run_lc_criterion(
    inputs: &LCCriterionInputs,
    seq: &SequenceSpec,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    let terms = Terms::compute(seq, horizon + 1)?;
    run_lc_criterion_terms(inputs, &terms, horizon, policy)
}

pub fn run_lc_criterion_terms(
    inputs: &LCCriterionInputs,
    terms: &Terms,
    horizon: u64,
    policy: &PrecisionPolicy,
) -> Result<Verdict, CriterionError> {
    if horizon < 3 {
        return Err(CriterionError::InvalidInput("horizon must be >= 3".into()));
    }
    if terms.max_index() < horizon + 1 {
        return Err(CriterionError::InvalidInput(format!("need the prefix up to {}", horizon + 1)));
    }
    reject_vanishing_h(inputs, horizon, policy)?;
    let envelope = envelope_part(&inputs.env, terms, horizon + 1, policy)?;
    let positive = {
        let outcomes = decide(
            (2..=horizon).collect(),
            &lc_maps(inputs),
            policy,
            |&n| vec![(H, n)],
            |&n, t, _| positivity(t.get(H, n)?, t.get(H, n)?),
        );
        index_verdict(format!("{}: h(n) > 0", inputs.label), "Npos", None, 2, horizon, outcomes)
    };
    let c1 = check_lc_condition1(inputs, horizon, policy)?;
    let c2 = check_lc_condition2(inputs, horizon, policy)?;

    let mut v = Verdict::new(
        format!("log-concavity criterion {} for {}", inputs.label, terms.label()),
        Horizon::indices(2, horizon),
    );
    let combined = combined_threshold(&[&envelope, &positive, &c1, &c2], &["N0", "Npos", "N1", "N2"])
        .map(|t| t.max(envelope.thresholds["N0"] + 1));
    let mut parts = vec![envelope, positive, c1, c2];
    if let Some(closing) = &inputs.closing {
        parts.push(check_lc_closing(inputs, closing, horizon, policy)?);
    }
    for part in &parts {
        for (k, t) in &part.thresholds {
            v.thresholds.insert(k.clone(), *t);
        }
    }
    for part in parts {
        v.push_part(part);
    }

    let low = lc_region(terms, 1.max(terms.domain_start() + 1), horizon);
    if let Some(t) = clean_threshold(low.iter().map(|r| r.indices[0]), 1, horizon) {
        v.thresholds.insert("LC".into(), t);
    }
    v.note(format!("exact log-concavity failures on [1, {horizon}]: {}", low.len()));

    match combined {
        Some(t) if t <= horizon => {
            v.thresholds.insert("T".into(), t);
            let mut concl = Verdict::new(
                format!("conclusion: F(n)^2 > F(n-1)F(n+1) for {t} <= n <= {horizon}"),
                Horizon::indices(t, horizon),
            );
            for r in low.iter().filter(|r| r.indices[0] >= t) {
                concl.refute(r.to_witness());
            }
            v.push_part(concl);
        }
        Some(t) => v.note(format!("combined threshold {t} lies beyond the horizon; conclusion not scanned")),
        None => v.note("some condition fails up to the horizon; no combined threshold"),
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelopes::{constant_map, real_map};
    use num_rational::BigRational;

    fn euler_inputs() -> BOCriterionInputs {
        match preset("bo-euler-example21", 2).unwrap().criterion {
            Criterion::Bo(b) => b,
            _ => unreachable!(),
        }
    }

    #[test]
    fn condition3_threshold_on_lehmer() {
        let v = check_bo_condition3(&euler_inputs(), 60, &PrecisionPolicy::default()).unwrap();
        assert_eq!(v.thresholds.get("N3"), Some(&22));
        assert!(v.is_refuted());
        assert!(v.witnesses.iter().all(|w| w.indices[0] >= 15));
        assert!(v.below_threshold.iter().any(|w| w.indices == vec![14]));
    }

    #[test]
    fn condition2_h_one_refuted() {
        let mut inputs = euler_inputs();
        inputs.h = constant_map(BigRational::from_integer(1.into()));
        inputs.n2 = Some(2);
        let v = check_bo_condition2(&inputs, 20, &PrecisionPolicy::default()).unwrap();
        assert!(v.is_refuted());
    }

    #[test]
    fn condition1_boundary_construction() {
        let mut inputs = euler_inputs();
        let f = inputs.env.f.clone();
        inputs.g = real_map(move |b, p| {
            let two_b = f(2 * b, p)?;
            let fb = f(b, p)?;
            Ok(&(&(&fb + &fb) - &two_b) + &RealInterval::from_frac(1, 1000, p))
        });
        let v = check_bo_condition1(&inputs, 10, &PrecisionPolicy::default()).unwrap();
        assert!(v.is_refuted());
        assert!(v.witnesses.iter().any(|w| w.indices[0] == w.indices[1]));
    }

    #[test]
    fn lc_rejects_zero_h() {
        let inputs = match preset("lc-chen", 2).unwrap().criterion {
            Criterion::Lc(mut l) => {
                l.h = constant_map(BigRational::from_integer(0.into()));
                l
            }
            _ => unreachable!(),
        };
        let err = run_lc_criterion(&inputs, &SequenceSpec::EulerP, 50, &PrecisionPolicy::default());
        assert!(matches!(err, Err(CriterionError::InvalidInput(_))));
    }
}

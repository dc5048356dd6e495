//! Named criterion instances.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{
    run_bo_criterion, run_lc_criterion, BOCriterionInputs, ClosingCheck, CriterionError, LCCriterionInputs,
};
use crate::envelopes::config::{ConfigFile, EnvelopeSpec};
use crate::envelopes::{
    chen_mu, constant_map, real_map, BoundEnvelope, MahlerParams, PrecisionPolicy, RealMap, WrightParams,
};
use crate::interval::{ln2, pi, IntervalError, RealInterval};
use crate::seq_core::SequenceSpec;
use crate::verdict::Verdict;

pub const PRESET_IDS: [&str; 4] = ["bo-euler-example21", "bo-planepartition", "bo-mary", "lc-chen"];

#[derive(Clone, Debug)]
pub enum Criterion {
    Bo(BOCriterionInputs),
    Lc(LCCriterionInputs),
}

#[derive(Clone, Debug)]
pub struct PresetInstance {
    pub id: String,
    pub seq: SequenceSpec,
    pub criterion: Criterion,
}

fn int(n: u64, prec: u32) -> RealInterval {
    RealInterval::from_int(n, prec)
}

fn constant(num: i64, den: i64) -> RealMap {
    constant_map(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Lehmer envelope, `g(b) = (pi/12) sqrt(24b - 1) - 1/24`, `h = 2`,
/// `N1 = 1`, `N2 = 9`, `N3 = 15`.
pub fn bo_euler_example21() -> BOCriterionInputs {
    BOCriterionInputs {
        label: "bo-euler-example21".into(),
        env: BoundEnvelope::lehmer(),
        g: real_map(|n, p| Ok(&chen_mu(n, p)?.div_int(&BigInt::from(2)) - &RealInterval::from_frac(1, 24, p))),
        h: constant(2, 1),
        n1: Some(1),
        n2: Some(9),
        n3: Some(15),
    }
}

/// Wright envelope, `g(n) = (gamma/3) n^{2/3}`, `h = 2 beta + 1`,
/// `N1 = N`, `N2 = max(N, ceil((beta + 1)^2))`, `N3` discovered.
pub fn bo_planepartition(params: &WrightParams) -> BOCriterionInputs {
    let env = BoundEnvelope::wright(params);
    let f = env.f.clone();
    let beta = params.beta.value();
    let one = BigRational::from_integer(BigInt::from(1));
    let h = beta * BigRational::from_integer(BigInt::from(2)) + &one;
    let sq = (beta + &one) * (beta + &one);
    let n2 = sq.ceil().to_integer().try_into().unwrap_or(u64::MAX).max(params.n_start);
    BOCriterionInputs {
        label: "bo-planepartition".into(),
        env,
        g: real_map(move |n, p| Ok(f(n, p)?.div_int(&BigInt::from(3)))),
        h: constant_map(h),
        n1: Some(params.n_start),
        n2: Some(n2),
        n3: None,
    }
}

fn log_base(m: u64, prec: u32) -> Result<RealInterval, IntervalError> {
    if m == 2 {
        Ok(ln2(prec))
    } else {
        int(m, prec).ln()
    }
}

/// Mahler envelope with constant `c1, c2`,
/// `g(n) = ((log n - 2 log 2) log n - 3/2) / (2 log m)`, `h = c2/c1`; all
/// thresholds discovered.
pub fn bo_mary(params: &MahlerParams) -> BOCriterionInputs {
    let m = params.m;
    BOCriterionInputs {
        label: format!("bo-mary:{m}"),
        env: BoundEnvelope::mahler(params),
        g: real_map(move |n, p| {
            let log_n = if n == 1 { RealInterval::zero(p) } else { int(n, p).ln()? };
            let two_log2 = ln2(p).mul_int(&BigInt::from(2));
            let inner = &(&(&log_n - &two_log2) * &log_n) - &RealInterval::from_frac(3, 2, p);
            inner.div(&log_base(m, p)?.mul_int(&BigInt::from(2)))
        }),
        h: constant_map(params.c2.value() / params.c1.value()),
        n1: None,
        n2: None,
        n3: None,
    }
}

/// `(sqrt(24) pi / 6)(n^{-3/2}/4 - (55588/13824) n^{-5/2})`.
fn chen_h(n: u64, p: u32) -> Result<RealInterval, IntervalError> {
    let lead = &int(24, p).sqrt()? * &pi(p).div_int(&BigInt::from(6));
    let a = int(n, p).pow_ratio(-3, 2)?.div_int(&BigInt::from(4));
    let b = &int(n, p).pow_ratio(-5, 2)? * &RealInterval::from_frac(55588, 13824, p);
    Ok(&lead * &(&a - &b))
}

/// `(1 + 576/((24n - 1)^2 - 576))^{5/2} (1 + 24 sqrt(6) / (7 pi^3) n^{-3/2})`.
fn chen_majorant(n: u64, p: u32) -> Result<RealInterval, IntervalError> {
    let d = BigInt::from(24 * n - 1);
    let first = RealInterval::from_ratio(&(&d * &d), &(&d * &d - 576), p).pow_ratio(5, 2)?;
    let coeff = int(6, p).sqrt()?.mul_int(&BigInt::from(24)).div(&pi(p).powi(3).mul_int(&BigInt::from(7)))?;
    let second = &RealInterval::one(p) + &(&coeff * &int(n, p).pow_ratio(-3, 2)?);
    Ok(&first * &second)
}

/// Chen envelope with the explicit `h` and closing inequality
/// `1 + h(n) >= majorant(n)`, claimed from 94; `N1`, `N2` discovered.
pub fn lc_chen() -> LCCriterionInputs {
    LCCriterionInputs {
        label: "lc-chen".into(),
        env: BoundEnvelope::chen(),
        h: real_map(chen_h),
        n1: None,
        n2: None,
        closing: Some(ClosingCheck {
            label: "lc-chen: 1 + h(n) >= (1 + 24^2/((24n-1)^2 - 24^2))^{5/2} (1 + 24 sqrt6/(7 pi^3) n^{-3/2})".into(),
            lhs: real_map(|n, p| Ok(&RealInterval::one(p) + &chen_h(n, p)?)),
            rhs: real_map(chen_majorant),
            candidate: Some(94),
        }),
    }
}

/// Looks up a preset; `m` is the base for `bo-mary`.
pub fn preset(id: &str, m: u64) -> Result<PresetInstance, CriterionError> {
    let (seq, criterion) = match id {
        "bo-euler-example21" => (SequenceSpec::EulerP, Criterion::Bo(bo_euler_example21())),
        "bo-planepartition" => (SequenceSpec::PlaneP, Criterion::Bo(bo_planepartition(&WrightParams::calibrated()))),
        "bo-mary" => {
            let seq = SequenceSpec::MAry(m);
            seq.validate()?;
            (seq, Criterion::Bo(bo_mary(&MahlerParams::new(m))))
        }
        "lc-chen" => (SequenceSpec::EulerP, Criterion::Lc(lc_chen())),
        other => return Err(CriterionError::UnknownPreset(other.to_string())),
    };
    Ok(PresetInstance { id: id.to_string(), seq, criterion })
}

impl PresetInstance {
    /// Applies a config file: the envelope block replaces the preset's
    /// envelope (re-deriving `g`, `h` for the Wright and Mahler families),
    /// and the criterion block overrides thresholds and a constant `h`.
    pub fn with_config(mut self, cfg: &ConfigFile) -> Result<Self, CriterionError> {
        if let Some(spec) = &cfg.envelope {
            match (&mut self.criterion, spec) {
                (Criterion::Bo(b), EnvelopeSpec::Wright(p)) if self.id == "bo-planepartition" => *b = bo_planepartition(p),
                (Criterion::Bo(b), EnvelopeSpec::Mahler(p)) if self.id == "bo-mary" => {
                    self.seq = SequenceSpec::MAry(p.m);
                    self.seq.validate()?;
                    *b = bo_mary(p);
                }
                (Criterion::Bo(b), spec) => b.env = spec.build(),
                (Criterion::Lc(l), spec) => l.env = spec.build(),
            }
        }
        if let Some(o) = &cfg.criterion {
            let env = match &mut self.criterion {
                Criterion::Bo(b) => {
                    b.n1 = o.n1.or(b.n1);
                    b.n2 = o.n2.or(b.n2);
                    b.n3 = o.n3.or(b.n3);
                    if let Some(h) = &o.h {
                        b.h = constant_map(h.value().clone());
                    }
                    &mut b.env
                }
                Criterion::Lc(l) => {
                    if o.n3.is_some() {
                        return Err(CriterionError::InvalidInput("n3 does not apply to a log-concavity preset".into()));
                    }
                    l.n1 = o.n1.or(l.n1);
                    l.n2 = o.n2.or(l.n2);
                    if let Some(h) = &o.h {
                        l.h = constant_map(h.value().clone());
                    }
                    &mut l.env
                }
            };
            if let Some(n0) = o.n0 {
                env.n0 = n0;
            }
        }
        Ok(self)
    }
}

pub fn run_preset(instance: &PresetInstance, horizon: u64, policy: &PrecisionPolicy) -> Result<Verdict, CriterionError> {
    match &instance.criterion {
        Criterion::Bo(inputs) => run_bo_criterion(inputs, &instance.seq, horizon, policy),
        Criterion::Lc(inputs) => run_lc_criterion(inputs, &instance.seq, horizon, policy),
    }
}

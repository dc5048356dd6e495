//! Property tests for the invariants the rest of the crate leans on.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use partineq::analysis::{bo_region, lc_region, scan_bo};
use partineq::cli::{execute, render, Cli, Format};
use partineq::criteria::{check_ratio_descent_terms, check_thm43_terms};
use partineq::interval::RealInterval;
use partineq::report::ReportEnvelope;
use partineq::seq_core::{read_terms, write_terms, PartSet, SequenceSpec, Terms};
use partineq::verdict::clean_threshold;
use proptest::prelude::*;

use clap::Parser;

fn contains(iv: &RealInterval, q: &BigRational) -> bool {
    iv.lo_rational() <= *q && *q <= iv.hi_rational()
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn spec_strategy() -> impl Strategy<Value = SequenceSpec> {
    prop_oneof![
        Just(SequenceSpec::EulerP),
        Just(SequenceSpec::PlaneP),
        Just(SequenceSpec::FibEven),
        (2u64..6).prop_map(SequenceSpec::MAry),
        prop::collection::btree_set(1u64..12, 1..4)
            .prop_map(|s| SequenceSpec::RestrictedP(PartSet::new(s.into_iter().collect()).unwrap())),
        (0u64..30).prop_map(|j| SequenceSpec::shifted(SequenceSpec::EulerP, j)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enclosures_contain_exact_values(num in 1i64..10_000, den in 1i64..10_000, prec in 40u32..300) {
        let q = rational(num, den);
        let x = RealInterval::from_rational(&q, prec);
        prop_assert!(contains(&x, &q));
        prop_assert!(contains(&x.square().sqrt().unwrap(), &q));
        prop_assert!(contains(&x.ln().unwrap().exp(), &q));
        let y = RealInterval::from_frac(den, num, prec);
        prop_assert!(contains(&(&x * &y), &BigRational::from_integer(1.into())));
        prop_assert!(contains(&x.pow_ratio(3, 2).unwrap().pow_ratio(2, 3).unwrap(), &q));
    }

    #[test]
    fn enclosures_nest_as_precision_grows(num in 1i64..10_000, den in 1i64..10_000, prec in 40u32..200) {
        let hi = 2 * prec + 17;
        let f = |p: u32| -> RealInterval {
            let x = RealInterval::from_frac(num, den, p);
            &x.sqrt().unwrap().exp() + &x.ln().unwrap()
        };
        let (coarse, fine) = (f(prec), f(hi));
        // Both enclose the same real, so they overlap; the finer one is
        // narrower, and after one outward rounding step it lies inside.
        prop_assert!(coarse.intersect(&fine).is_some());
        prop_assert!(fine.width_raw() >> (hi - prec) <= coarse.width_raw());
        prop_assert!(coarse.contains_interval(&fine.with_precision(prec)));
    }

    #[test]
    fn integer_comparison_is_conclusive_only_when_separated(k in 0u64..1_000_000, prec in 16u32..128) {
        let sq = RealInterval::from_int(k * k, prec).sqrt().unwrap();
        prop_assert_eq!(sq.cmp_int(&BigInt::from(k + 1)), Some(std::cmp::Ordering::Less));
        if k > 0 {
            prop_assert_eq!(sq.cmp_int(&BigInt::from(k - 1)), Some(std::cmp::Ordering::Greater));
        }
        prop_assert!(contains(&sq, &BigRational::from_integer(BigInt::from(k))));
    }

    #[test]
    fn prefix_serialization_round_trips(spec in spec_strategy(), n in 0u64..150) {
        let terms = Terms::compute(&spec, n.max(spec.domain_start())).unwrap();
        let mut buf = Vec::new();
        write_terms(&terms, &mut buf).unwrap();
        let back = read_terms(buf.as_slice()).unwrap();
        prop_assert_eq!(back.values(), terms.values());
        prop_assert_eq!(back.spec(), terms.spec());
    }

    #[test]
    fn spec_selectors_round_trip(spec in spec_strategy()) {
        let text = spec.to_string();
        prop_assert_eq!(text.parse::<SequenceSpec>().unwrap(), spec);
    }

    #[test]
    fn mary_recurrence_structure(m in 2u64..7, k in 0u64..200) {
        let terms = Terms::compute(&SequenceSpec::MAry(m), m * (k + 1)).unwrap();
        for i in 1..m {
            prop_assert_eq!(terms.get(m * k + i), terms.get(m * k));
        }
        prop_assert_eq!(terms.get(m * (k + 1)), &(terms.get(m * k + m - 1) + terms.get(k + 1)));
        // The forced log-concavity failure at n = -1 (mod m).
        let n = m * (k + 1) - 1;
        if n >= 1 {
            prop_assert!(!lc_region(&terms, n, n).is_empty());
        }
    }

    #[test]
    fn clean_threshold_matches_brute_force(failing in prop::collection::btree_set(0u64..60, 0..10), from in 0u64..20, len in 0u64..40) {
        let to = from + len;
        let fails: Vec<u64> = failing.iter().copied().filter(|n| (from..=to).contains(n)).collect();
        let brute = (from..=to).find(|&t| fails.iter().all(|&f| f < t));
        prop_assert_eq!(clean_threshold(fails.iter().copied(), from, to), brute);
    }

    /// Log-concavity and ratio descent are the same statement for positive
    /// terms; the scanner and the exact criterion must agree pointwise.
    #[test]
    fn lc_scan_agrees_with_ratio_descent(spec in spec_strategy(), lo in 1u64..40, len in 2u64..80) {
        let start = (spec.domain_start() + 1).max(2);
        let (lo, hi) = (lo.max(start), lo.max(start) + len);
        let terms = Terms::compute(&spec, hi + 1).unwrap();
        prop_assume!((lo - 1..=hi + 1).all(|n| *terms.get(n) > BigUint::from(0u32)));
        let scan: Vec<u64> = lc_region(&terms, lo, hi).iter().map(|r| r.indices[0]).collect();
        let mut ratio: Vec<u64> = check_ratio_descent_terms(&terms, lo - 1, hi).unwrap()
            .witnesses.iter().map(|w| w.indices[0]).collect();
        ratio.sort_unstable();
        prop_assert_eq!(scan, ratio);
    }

    /// The implication's conclusion part and the BO scanner look at the same
    /// pairs and must report the same violations.
    #[test]
    fn bo_scan_agrees_with_implication_conclusion(spec in spec_strategy(), horizon in 4u64..90) {
        let start = spec.domain_start();
        let terms = Terms::compute(&spec, horizon + 1 + start).unwrap();
        prop_assume!(start <= 1);
        let (_, region) = bo_region(&terms, 1, horizon - 1, horizon);
        let verdict = check_thm43_terms(&terms, horizon).unwrap();
        let conclusion = &verdict.parts[2];
        let mut a: Vec<Vec<u64>> = region.iter().map(|r| r.indices.clone()).collect();
        let mut b: Vec<Vec<u64>> = conclusion.witnesses.iter().map(|w| w.indices.clone()).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(&a[..a.len().min(64)], &b[..b.len().min(64)]);
        prop_assert_eq!(region.is_empty(), conclusion.is_verified());
        prop_assert!(verdict.well_formed());
    }

    #[test]
    fn scan_threshold_is_clean(spec in spec_strategy(), sum_max in 4u64..120) {
        prop_assume!(spec.domain_start() <= 1);
        let report = scan_bo(&spec, 1, sum_max).unwrap();
        if let Some(t) = report.min_clean_threshold {
            prop_assert!(report.violations.iter().all(|v| v.min_index() < t));
            if t > 1 {
                prop_assert!(report.violations.iter().any(|v| v.min_index() == t - 1));
            }
        }
    }

    #[test]
    fn reports_are_deterministic(spec in spec_strategy(), sum_max in 4u64..60) {
        let spec = spec.to_string();
        let sm = sum_max.to_string();
        let args = ["partineq", "--no-timing", "scan", "bo", spec.as_str(), "--sum-max", sm.as_str()];
        let one = render(&execute(&Cli::try_parse_from(args).unwrap()).unwrap(), Format::Json).unwrap();
        let two = render(&execute(&Cli::try_parse_from(args).unwrap()).unwrap(), Format::Json).unwrap();
        prop_assert_eq!(&one, &two);
        prop_assert_eq!(ReportEnvelope::from_json(&one).unwrap().to_json(), one);
    }
}

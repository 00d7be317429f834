use std::collections::HashSet;

use proptest::prelude::*;
use qsource::engine::*;
use qsource::{EvalError, FieldKind, Params, Regime, C64, Q};

#[test]
fn point_seeds_are_stable_and_distinct() {
    assert_eq!(
        point_seed(42, "rational.identity", 3),
        point_seed(42, "rational.identity", 3)
    );
    let seeds: HashSet<u64> = (0..100)
        .map(|i| point_seed(42, "rational.identity", i))
        .collect();
    assert_eq!(seeds.len(), 100);
    assert_ne!(point_seed(42, "a", 0), point_seed(42, "b", 0));
    assert_ne!(point_seed(1, "a", 0), point_seed(2, "a", 0));
}

#[test]
fn sampling_is_deterministic() {
    let config = SamplingConfig {
        master_seed: 9,
        ..SamplingConfig::default()
    };
    for regime in [Regime::Rational, Regime::Trig, Regime::TrigLambda] {
        let a = sample_params::<Q>(regime, &config, "x", 4, 3, 2).unwrap();
        let b = sample_params::<Q>(regime, &config, "x", 4, 3, 2).unwrap();
        assert_eq!(a, b);
        let c = sample_params::<C64>(regime, &config, "x", 4, 3, 2).unwrap();
        let d = sample_params::<C64>(regime, &config, "x", 4, 3, 2).unwrap();
        assert_eq!(c, d);
    }
    let e = sample_params::<C64>(Regime::Elliptic, &config, "x", 0, 3, 3).unwrap();
    assert_eq!(
        e,
        sample_params::<C64>(Regime::Elliptic, &config, "x", 0, 3, 3).unwrap()
    );
}

#[test]
fn empty_sizes_sample_empty_vectors() {
    let config = SamplingConfig::default();
    for regime in [Regime::Rational, Regime::Trig, Regime::Elliptic] {
        let p = sample_params::<C64>(regime, &config, "empty", 0, 0, 0).unwrap();
        assert!(p.u().is_empty() && p.v().is_empty());
    }
}

#[test]
fn thousand_draws_never_hit_the_cap() {
    let config = SamplingConfig::default();
    for i in 0..1000 {
        sample_params::<C64>(Regime::Trig, &config, "smoke", i, 3, 3).unwrap();
        sample_params::<Q>(Regime::Rational, &config, "smoke", i, 3, 2).unwrap();
    }
    for i in 0..200 {
        sample_params::<C64>(Regime::Elliptic, &config, "smoke", i, 3, 3).unwrap();
    }
}

#[test]
fn complex_draws_respect_ranges() {
    let config = SamplingConfig {
        master_seed: 3,
        ..SamplingConfig::default()
    };
    for i in 0..200 {
        let Params::Trig(t) =
            sample_params::<C64>(Regime::Trig, &config, "ranges", i, 3, 3).unwrap()
        else {
            panic!("wrong regime");
        };
        let r = t.q.norm();
        assert!(
            (0.2..=0.8).contains(&r) || (1.25..=5.0).contains(&r),
            "|q| = {r}"
        );
        for x in t.u.iter().chain(&t.v) {
            assert!((0.2..=3.0).contains(&x.norm()));
        }
        let Params::Elliptic(e) =
            sample_params::<C64>(Regime::Elliptic, &config, "ranges", i, 2, 2).unwrap()
        else {
            panic!("wrong regime");
        };
        assert!(e.p.norm() <= 0.5);
    }
}

#[test]
fn exact_draws_are_small_rationals() {
    let config = SamplingConfig::default();
    for i in 0..100 {
        let p = sample_params::<Q>(Regime::Rational, &config, "ranges", i, 2, 2).unwrap();
        for x in p.u().iter().chain(p.v()) {
            assert!(x.numer().magnitude() <= &20u32.into());
            assert!(x.denom() <= &20.into());
        }
    }
}

#[test]
fn resample_cap_is_reported() {
    let mut s = Sampler::new(0, FieldKind::Complex, 1e-3);
    let r: qsource::Result<()> = s.attempt(|_| Err(EvalError::Singular));
    assert_eq!(r, Err(EvalError::ResampleCap(RESAMPLE_CAP)));
    let mut calls = 0;
    let r = s.attempt(|_| {
        calls += 1;
        if calls < 5 {
            Err(EvalError::Singular)
        } else {
            Ok(calls)
        }
    });
    assert_eq!(r, Ok(5));
}

#[test]
fn guard_uses_radius_only_in_complex_field() {
    let s = Sampler::new(0, FieldKind::Complex, 1e-3);
    assert!(s.guard(&C64::new(5e-4, 0.0)).is_err());
    assert!(s.guard(&C64::new(2e-3, 0.0)).is_ok());
    assert!(s.guard(&Q::new(1.into(), 10_000.into())).is_ok());
    assert!(s.guard(&Q::from_integer(0.into())).is_err());
}

#[test]
fn config_validation() {
    assert!(SamplingConfig::default().validate().is_ok());
    let bad = SamplingConfig {
        tol_singular: 0.0,
        ..SamplingConfig::default()
    };
    assert!(bad.validate().is_err());
    let bad = SamplingConfig {
        points: Some(0),
        ..SamplingConfig::default()
    };
    assert!(bad.validate().is_err());
    let bad = SamplingConfig {
        tol_match: Some(-1.0),
        ..SamplingConfig::default()
    };
    assert!(bad.validate().is_err());
}

#[test]
fn registry_ids_are_unique_and_sorted() {
    let reg = registry();
    let ids: Vec<&str> = reg.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted);
    for c in &reg {
        assert!(!c.anchor.is_empty(), "{}", c.id);
        assert!(!c.fields().is_empty(), "{}", c.id);
    }
    for k in 1..=10u8 {
        assert!(
            reg.iter().any(|c| c.criterion == Some(k)),
            "criterion {k} has no case"
        );
    }
}

#[test]
fn rational_identity_case_passes_exactly() {
    let reg = registry();
    let case = find_case(&reg, "rational.identity").unwrap();
    let config = SamplingConfig {
        master_seed: 5,
        points: Some(3),
        nmax: Some(3),
        ..SamplingConfig::default()
    };
    let report = verify_case(case, &config).unwrap();
    assert_eq!(report.field, FieldKind::Exact);
    assert!(report.pass);
    assert_eq!(report.max_rel_err, 0.0);
    assert_eq!(report.points.len(), 3);
    assert!(report
        .points
        .iter()
        .all(|p| p.residual == 0.0 && p.checks > 0));
}

#[test]
fn case_reports_are_reproducible() {
    let reg = registry();
    let case = find_case(&reg, "trig.identity").unwrap();
    let config = SamplingConfig {
        master_seed: 11,
        points: Some(2),
        nmax: Some(2),
        field: Some(FieldKind::Complex),
        ..SamplingConfig::default()
    };
    let a = verify_case(case, &config).unwrap();
    let b = verify_case(case, &config).unwrap();
    assert_eq!(a, b);
    assert!(a.pass);
    assert_eq!(a.tol, 1e-10);
}

#[test]
fn elliptic_identity_case_passes() {
    let reg = registry();
    let case = find_case(&reg, "elliptic.identity").unwrap();
    let config = SamplingConfig {
        points: Some(3),
        nmax: Some(3),
        ..SamplingConfig::default()
    };
    let report = verify_case(case, &config).unwrap();
    assert!(report.pass, "max_rel_err {}", report.max_rel_err);
    assert!(report.max_rel_err <= 1e-8);
}

#[test]
fn unsupported_field_is_an_error() {
    let reg = registry();
    let case = find_case(&reg, "elliptic.identity").unwrap();
    let config = SamplingConfig {
        field: Some(FieldKind::Exact),
        ..SamplingConfig::default()
    };
    assert!(!case.supports(FieldKind::Exact));
    assert!(verify_case(case, &config).is_err());
}

#[test]
fn tolerance_override_applies_to_complex_field() {
    let reg = registry();
    let case = find_case(&reg, "rational.identity").unwrap();
    let config = SamplingConfig {
        tol_match: Some(1e-6),
        field: Some(FieldKind::Complex),
        ..SamplingConfig::default()
    };
    assert_eq!(resolve_tol(case, FieldKind::Complex, &config), 1e-6);
    assert_eq!(resolve_tol(case, FieldKind::Exact, &config), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sampled_params_depend_only_on_seed_and_index(seed in any::<u64>(), index in 0usize..1000) {
        let config = SamplingConfig { master_seed: seed, ..SamplingConfig::default() };
        let a = sample_params::<Q>(Regime::Trig, &config, "prop", index, 2, 3).unwrap();
        let b = sample_params::<Q>(Regime::Trig, &config, "prop", index, 2, 3).unwrap();
        prop_assert_eq!(a, b);
    }
}

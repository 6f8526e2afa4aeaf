mod common;

use khessian::analysis::*;
use khessian::system::PowerSystemSpec;
use khessian::{GridFunction, Nonlinearity, SystemSpec};
use proptest::prelude::*;

fn single(dim: u32, k: u32, f: Nonlinearity) -> SystemSpec {
    SystemSpec::new(dim, vec![k, k], vec![f.clone(), f]).unwrap()
}

#[test]
fn cone_examples() {
    let r = cone_check(&GridFunction::from_fn(401, |t| 1.0 - t * t).unwrap());
    assert!(r.in_cone);
    assert!((r.margin - 0.1875).abs() < 1e-12);
    let r = cone_check(&GridFunction::zeros(101).unwrap());
    assert!(r.in_cone && r.margin == 0.0);
    let r = cone_check(&GridFunction::from_fn(401, |t| t).unwrap());
    assert!(r.in_cone && r.margin.abs() < 1e-15);
    assert!(!cone_check(&GridFunction::from_fn(401, |t| (1.0 - t).powi(3)).unwrap()).in_cone);
}

#[test]
fn gamma_matches_oracle_for_all_small_dimensions() {
    for dim in 2..=6 {
        for k in 1..=dim {
            let g = gamma_constant(k, dim).unwrap();
            assert!(g > 0.0);
            let oracle = common::gamma_oracle(k, dim);
            assert!(
                (g - oracle).abs() < 1e-6 * oracle,
                "k={k} N={dim}: {g} vs {oracle}"
            );
        }
    }
    assert!(gamma_constant(0, 2).is_err());
    assert!(gamma_constant(3, 2).is_err());
}

#[test]
fn gamma_error_quarters_when_points_double() {
    let reference = common::gamma_oracle(3, 3);
    let e = |m| (gamma_constant_with(3, 3, m).unwrap() - reference).abs();
    let order = (e(201) / e(401)).log2();
    assert!(order >= 1.9, "{order}");
}

#[test]
fn lower_bound_examples() {
    let linear = single(2, 1, Nonlinearity::power(1.0).unwrap());
    let square = single(2, 1, Nonlinearity::power(2.0).unwrap());
    let cap = GridFunction::from_fn(501, |t| 1.0 - t * t).unwrap();
    assert!(lower_bound_check(&linear, 0, &cap, 1.0, 1.0)
        .unwrap()
        .holds());
    let ramp = GridFunction::from_fn(501, |t| 1.0 - t).unwrap();
    let r = lower_bound_check(&square, 0, &ramp, 1.0, 2.0).unwrap();
    assert!(r.holds() && r.lhs > r.rhs);
    let zero = GridFunction::zeros(501).unwrap();
    assert!(lower_bound_check(&linear, 0, &zero, 1.0, 1.0)
        .unwrap()
        .holds());
    let r = lower_bound_check(&linear, 0, &cap, 3.0, 1.0).unwrap();
    assert_eq!(r.outcome, BoundOutcome::HypothesisNotSatisfied);
}

#[test]
fn upper_bound_examples() {
    let linear = single(2, 1, Nonlinearity::power(1.0).unwrap());
    let cap = GridFunction::from_fn(501, |t| 1.0 - t * t).unwrap();
    let r = upper_bound_check(&linear, 0, &cap, 1.0, 1.0).unwrap();
    assert!(r.holds());
    assert!(r.rhs - r.lhs >= 0.5, "slack {}", r.rhs - r.lhs);
    assert!(r.lhs <= r.sharp_rhs.unwrap() + r.slack);
    let zero = GridFunction::zeros(501).unwrap();
    assert!(upper_bound_check(&linear, 0, &zero, 1.0, 2.0)
        .unwrap()
        .holds());
    for dim in 2..=6 {
        for k in 1..=dim {
            assert!(upper_bound_prefactor(k, dim).unwrap() < 1.0);
        }
    }
}

#[test]
fn chain_bound_dominates_operator_norm() {
    let p = PowerSystemSpec::new(3, vec![1, 2], vec![2.0, 1.0]).unwrap();
    let b = chain_upper_bound(&p).unwrap();
    let v = GridFunction::from_fn(501, |t| 1.0 - t * t).unwrap();
    let tv = khessian::apply_composite_t(&p.to_system(), &v).unwrap();
    assert!(tv.sup_norm() <= b * v.sup_norm().powf(p.rho()));
}

#[test]
fn growth_examples() {
    let pure = PowerSystemSpec::new(2, vec![1, 2], vec![0.5, 0.7])
        .unwrap()
        .to_system();
    let g = classify_growth(&pure);
    assert_eq!(g.alpha, vec![0.5, 0.7]);
    assert_eq!(g.beta, g.alpha);
    for f in [&g.lower0, &g.upper0, &g.lower_inf, &g.upper_inf] {
        assert_eq!(f, &vec![1.0, 1.0]);
    }
    assert_eq!(g.condition, GrowthCondition::C1);

    let mixed = single(
        2,
        1,
        Nonlinearity::from_triples(&[(1.0, 0.0, 0.5), (1.0, 0.0, 3.0)]).unwrap(),
    );
    let g = classify_growth(&mixed);
    assert_eq!((g.alpha[0], g.beta[0]), (0.5, 3.0));
    assert_eq!(
        (g.lower0[0], g.upper0[0], g.lower_inf[0], g.upper_inf[0]),
        (1.0, 1.0, 1.0, 1.0)
    );
    assert_eq!(g.condition, GrowthCondition::C3);

    let tv = single(
        2,
        1,
        Nonlinearity::from_triples(&[(1.0, 1.0, 0.5)]).unwrap(),
    );
    let g = classify_growth(&tv);
    assert_eq!(g.lower0[0], 0.0);
    assert_eq!(g.condition, GrowthCondition::None);
}

#[test]
fn threshold_examples() {
    let p = PowerSystemSpec::new(2, vec![1, 2], vec![2.0, 3.0])
        .unwrap()
        .to_system();
    let c = multiplicity_thresholds(&p, ThresholdCase::Small { r0: 2.0 }).unwrap();
    let g2 = 0.5f64.powf(3.0);
    assert!((c.g[1] - g2).abs() < 1e-15);
    assert!((c.g[0] - g2.powf(2.0 / 2.0)).abs() < 1e-15);
    let c = multiplicity_thresholds(&p, ThresholdCase::Large { big_r0: 2.0 }).unwrap();
    assert!((c.e[1] - 0.5f64.powf(3.0)).abs() < 1e-15);
    assert!(multiplicity_thresholds(&p, ThresholdCase::Small { r0: -1.0 }).is_err());
}

#[test]
fn sublinearity_example() {
    let p = PowerSystemSpec::new(2, vec![1, 1], vec![0.5, 0.5]).unwrap();
    let v = GridFunction::from_fn(501, |t| 1.0 - t * t).unwrap();
    let r = u0_sublinearity_check(&p, &v, 0.5).unwrap();
    assert!((r.eta_analytic - 0.681_792_830_507_429).abs() < 1e-12);
    assert!(r.theta1 > 0.0 && r.theta1 <= r.theta2);
    let critical = PowerSystemSpec::new(2, vec![2, 2], vec![2.0, 2.0]).unwrap();
    assert!(matches!(
        u0_sublinearity_check(&critical, &v, 0.5),
        Err(khessian::Error::Hypothesis(_))
    ));
}

#[test]
fn admissibility_examples() {
    let convex = GridFunction::from_fn(201, |t| (t * t - 1.0) / 2.0).unwrap();
    for k in 1..=3 {
        let m = admissibility_check(&convex, k, 3).unwrap();
        assert!((m - common::binom(3, 1)).abs() < 1e-9 || m > 0.0);
    }
    assert_eq!(
        admissibility_check(&GridFunction::zeros(51).unwrap(), 1, 2).unwrap(),
        0.0
    );
    let concave = GridFunction::from_fn(201, |t| (1.0 - t * t) / 2.0).unwrap();
    assert!((admissibility_check(&concave, 1, 2).unwrap() + 2.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn critical_products_have_no_regime(g1 in 0.2f64..4.0, k1 in 1u32..=3, k2 in 1u32..=3) {
        let g2 = (k1 * k2) as f64 / g1;
        let crit = PowerSystemSpec::new(3, vec![k1, k2], vec![g1, g2]).unwrap();
        prop_assert_eq!(classify_growth(&crit.to_system()).condition, GrowthCondition::None);
        let off = PowerSystemSpec::new(3, vec![k1, k2], vec![g1, g2 * 1.01]).unwrap();
        prop_assert_ne!(classify_growth(&off.to_system()).condition, GrowthCondition::None);
    }

    #[test]
    fn thresholds_grow_with_radius(
        r in 0.01f64..10.0, factor in 1.0f64..5.0,
        c1 in 0.1f64..2.0, c2 in 0.1f64..2.0, a in 0.2f64..1.0, b in 1.5f64..4.0,
    ) {
        let f = Nonlinearity::from_triples(&[(c1, 1.0, a), (c2, 0.0, b)]).unwrap();
        let spec = SystemSpec::new(2, vec![1, 2], vec![f.clone(), f]).unwrap();
        let small = multiplicity_thresholds(&spec, ThresholdCase::Small { r0: r }).unwrap();
        let large = multiplicity_thresholds(&spec, ThresholdCase::Small { r0: r * factor }).unwrap();
        for (x, y) in small.g.iter().zip(&large.g) {
            prop_assert!(y >= x);
        }
    }
}

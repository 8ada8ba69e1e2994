//! Grid and property checks of the inequalities and orderings the bounds
//! rely on.

use std::f64::consts::LN_2;

use proptest::prelude::*;

use super::inequalities;
use crate::bounds;

#[test]
fn helper_log_inequality_on_grid() {
    for i in 1..=100 {
        for j in 1..=100 {
            let (x, y) = (i as f64 / 101.0, j as f64 / 101.0);
            assert!(inequalities::log_helper_gap(x, y) >= 0.0, "x={x} y={y}");
        }
    }
}

#[test]
fn y_bound_and_chord_inequalities_on_grid() {
    let steps = 10_000;
    for i in 0..=steps {
        let y = (1.0 - 1e-9) * i as f64 / steps as f64;
        assert!(inequalities::y_bound_gap(y) >= -1e-15, "y={y}");
        assert!(inequalities::chord_gap(y) >= -1e-15, "y={y}");
    }
    assert!(inequalities::y_bound_gap(1.0) >= 0.0);
    assert!(inequalities::chord_gap(1.0).abs() < 1e-15);
}

#[test]
fn exact_row_exponent_dominates_linearization() {
    for i in 0..=50 {
        let alpha = LN_2 + (1.0 - LN_2) * i as f64 / 50.0;
        for k in 1..=1000u64 {
            let gap = inequalities::linearized_exponent_gap(alpha, k);
            assert!(gap >= -1e-9 * k as f64, "alpha={alpha} k={k} gap={gap}");
        }
    }
}

#[test]
fn sandwich_contains_counting_bound() {
    for n in [2u64, 5, 10, 64, 100, 1000, 100_000] {
        for k in [1u64, 2, 3, 7, 20] {
            if 2 * k > n {
                continue;
            }
            let c = bounds::counting_bound(n, k).unwrap();
            let (lo, hi) = bounds::binom_sandwich(n, k).unwrap();
            assert!(lo <= c + 1e-9 && c <= hi + 1e-9, "n={n} k={k}");
        }
    }
}

#[test]
fn cor2_never_exceeds_thm4() {
    for i in 1..=200 {
        let beta = i as f64 / 201.0;
        let c2 = bounds::rate_cor2(beta).unwrap();
        let t4 = bounds::rate_thm4(beta).unwrap().rate;
        assert!(c2 <= t4 + 1e-9, "beta={beta}: {c2} > {t4}");
    }
}

#[test]
fn thm4_beats_dd_above_two_thirds() {
    for i in 1..=100 {
        let beta = 2.0 / 3.0 + 0.01 + (1.0 / 3.0 - 0.01) * i as f64 / 100.0;
        let t4 = bounds::rate_thm4(beta).unwrap().rate;
        let dd = bounds::dd_rate(beta).unwrap();
        assert!(t4 > dd, "beta={beta}: {t4} <= {dd}");
    }
}

#[test]
fn sparsity_identity_holds() {
    for n in [1e3, 1e6] {
        for beta in [0.5, 0.8] {
            let (a, b) = inequalities::sparsity_identity(n, beta);
            assert!((a - b).abs() <= 1e-9 * a.abs(), "n={n} beta={beta}");
        }
    }
}

#[test]
fn first_exponent_large_k_limit() {
    for alpha in [LN_2, 1.0] {
        let k = 1_000_000u64;
        let scaled = k as f64 * bounds::neg_ln_row_agree_k(alpha, k);
        assert!((scaled - 2.0 * alpha * (-alpha).exp()).abs() < 1e-4, "alpha={alpha}");
    }
}

proptest! {
    #[test]
    fn rates_stay_in_unit_interval(beta in 0.001f64..=1.0) {
        let t4 = bounds::rate_thm4(beta).unwrap().rate;
        let dd = bounds::dd_rate(beta).unwrap();
        let c2 = bounds::rate_cor2(beta).unwrap();
        for r in [t4, dd, c2] {
            prop_assert!((0.0..=1.0 + 1e-9).contains(&r));
        }
        prop_assert!(c2 <= t4 + 1e-9);
    }

    #[test]
    fn overlap_bound_cases_nonnegative(n in 6u64..40, k in 1u64..4, m in 1u64..60, a in 0.0f64..=1.0) {
        prop_assume!(2 * k <= n);
        let alpha = LN_2 + (1.0 - LN_2) * a;
        let b = bounds::overlap_case_bounds(n, k, m, alpha).unwrap();
        prop_assert!(b.total >= 0.0 && b.case1 >= 0.0 && b.case2 >= 0.0 && b.case3 >= 0.0);
    }
}

mod common;

use hpm_taylor::expr::{equal_sampled, Symbol};
use hpm_taylor::{parse_expr, print_expr, Expr, SamplePlan};
use proptest::prelude::*;

const FD_STEP: f64 = 1e-5;
const FD_TOLERANCE: f64 = 1e-5;
const VALUE_TOLERANCE: f64 = 1e-12;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(common::proptest_config(256))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let e = common::random_expr(&mut common::rng(seed), 3, 5);
        prop_assert_eq!(e.normalize(), e);
    }

    #[test]
    fn normalize_preserves_value(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let raw = common::smooth_expr(&mut rng, 2, 3);
        let norm = raw.normalize();
        for _ in 0..8 {
            let p = common::point(&mut rng, 2);
            let (a, b) = (raw.evaluate(&p).unwrap(), norm.evaluate(&p).unwrap());
            if !(a.is_finite() && b.is_finite()) {
                continue;
            }
            prop_assert!(close(a, b, VALUE_TOLERANCE), "{} vs {}: {a} {b}", print_expr(&raw), print_expr(&norm));
        }
    }

    #[test]
    fn print_then_parse(seed in any::<u64>()) {
        let e = common::random_expr(&mut common::rng(seed), 3, 5);
        let text = print_expr(&e);
        prop_assert_eq!(parse_expr(&text, 3).unwrap(), e, "{}", text);
    }

    #[test]
    fn derivative_is_linear(seed in any::<u64>(), a in -5i64..=5, b in -5i64..=5) {
        let mut rng = common::rng(seed);
        let f = common::smooth_expr(&mut rng, 2, 3).normalize();
        let g = common::smooth_expr(&mut rng, 2, 3).normalize();
        let combo = Expr::int(a) * f.clone() + Expr::int(b) * g.clone();
        let lhs = combo.differentiate(1);
        let rhs = Expr::int(a) * f.differentiate(1) + Expr::int(b) * g.differentiate(1);
        prop_assert!(equal_sampled(&lhs, &rhs, &SamplePlan::default()).unwrap());
    }

    #[test]
    fn product_rule(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::smooth_expr(&mut rng, 2, 3).normalize();
        let g = common::smooth_expr(&mut rng, 2, 3).normalize();
        let lhs = (f.clone() * g.clone()).differentiate(2);
        let rhs = f.differentiate(2) * g.clone() + f * g.differentiate(2);
        prop_assert!(equal_sampled(&lhs, &rhs, &SamplePlan::default()).unwrap());
    }

    #[test]
    fn derivative_matches_central_difference(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::smooth_expr(&mut rng, 2, 3).normalize();
        let df = f.differentiate(1);
        for _ in 0..4 {
            let p = common::point(&mut rng, 2);
            let (mut lo, mut hi) = (p.clone(), p.clone());
            lo[0] -= FD_STEP;
            hi[0] += FD_STEP;
            let (f_hi, f_lo) = (f.evaluate(&hi).unwrap(), f.evaluate(&lo).unwrap());
            let fd = (f_hi - f_lo) / (2.0 * FD_STEP);
            let exact = df.evaluate(&p).unwrap();
            if !(fd.is_finite() && exact.is_finite()) {
                continue;
            }
            let rounding = 4.0 * f64::EPSILON * f_hi.abs().max(f_lo.abs()) / FD_STEP;
            prop_assert!((exact - fd).abs() <= rounding + FD_TOLERANCE * (1.0 + exact.abs()), "d/dx1 {} = {}: {exact} vs {fd}", print_expr(&f), print_expr(&df));
        }
    }

    #[test]
    fn derivatives_in_distinct_variables_commute(seed in any::<u64>()) {
        let f = common::smooth_expr(&mut common::rng(seed), 2, 3).normalize();
        let a = f.differentiate(1).differentiate(2);
        let b = f.differentiate(2).differentiate(1);
        prop_assert!(equal_sampled(&a, &b, &SamplePlan::default()).unwrap());
    }

    #[test]
    fn time_derivative_ignores_space(seed in any::<u64>()) {
        let f = common::smooth_expr(&mut common::rng(seed), 2, 3).normalize();
        prop_assert!(f.derivative(Symbol::Time).is_zero());
    }
}

#[test]
fn second_derivative_of_sin_squared() {
    let e = parse_expr("sin(x1)^2", 1).unwrap();
    let d2 = e.differentiate(1).differentiate(1);
    let expected = parse_expr("2*cos(2*x1)", 1).unwrap();
    assert!(equal_sampled(&d2, &expected, &SamplePlan::default()).unwrap());
}

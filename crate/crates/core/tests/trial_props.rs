#![allow(clippy::needless_range_loop)]

use proptest::collection::vec;
use proptest::prelude::*;
use rjspectral::trial::{boundary_term, eval_trial};
use rjspectral::{CoefficientVector64, JacobiParams64, RationalMap64, TrialBasis, TrialFunction64};

fn trial(coeffs: Vec<f64>) -> TrialFunction64 {
    let basis = TrialBasis::new(
        RationalMap64::new(15.0).unwrap(),
        JacobiParams64::new(1.0, 1.0).unwrap(),
        coeffs.len(),
    )
    .unwrap();
    TrialFunction64::new(basis, CoefficientVector64::new(coeffs).unwrap()).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    vec(-1.0f64..1.0, 1..=21)
}

proptest! {
    #[test]
    fn boundary_conditions_hold_structurally(a in coeffs()) {
        let tf = trial(a);
        prop_assert!(eval_trial(&tf, 0.0, 0).unwrap().abs() < 1e-12);
        prop_assert!((eval_trial(&tf, 0.0, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slope_vanishes_at_infinity(a in coeffs()) {
        let tf = trial(a);
        let near = eval_trial(&tf, 1e4, 1).unwrap().abs();
        let far = eval_trial(&tf, 1e6, 1).unwrap().abs();
        prop_assert!(far < near, "{far:e} !< {near:e}");
        prop_assert!(far < 1e-6);
    }

    #[test]
    fn affine_in_coefficients(a in vec(-1.0f64..1.0, 12), b in vec(-1.0f64..1.0, 12), x in 0.0f64..30.0) {
        let sum: Vec<f64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        let (ta, tb, ts) = (trial(a), trial(b), trial(sum));
        for k in 0..=3 {
            let lhs = eval_trial(&ts, x, k).unwrap();
            let rhs = eval_trial(&ta, x, k).unwrap() + eval_trial(&tb, x, k).unwrap() - boundary_term(x, k).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "k={k}");
        }
    }

    #[test]
    fn derivatives_match_differences(a in vec(-1.0f64..1.0, 1..=15), x in 0.05f64..10.0) {
        let tf = trial(a);
        let h = 1e-5;
        for k in 1..=3 {
            let fd = (eval_trial(&tf, x + h, k - 1).unwrap() - eval_trial(&tf, x - h, k - 1).unwrap()) / (2.0 * h);
            let d = eval_trial(&tf, x, k).unwrap();
            let scale = d.abs().max(eval_trial(&tf, x, k - 1).unwrap().abs()).max(1e-3);
            prop_assert!((d - fd).abs() <= 1e-5 * scale, "k={k} x={x}: {d} vs {fd}");
        }
    }
}

#[test]
fn zero_coefficients_give_boundary_term() {
    let tf = trial(vec![0.0; 6]);
    for x in [0.0f64, 0.3, 1.0, 4.0, 50.0] {
        let expect = [
            x / (x * x + 1.0),
            (1.0 - x * x) / (x * x + 1.0).powi(2),
            2.0 * x * (x * x - 3.0) / (x * x + 1.0).powi(3),
            -6.0 * (x.powi(4) - 6.0 * x * x + 1.0) / (x * x + 1.0).powi(4),
        ];
        for k in 0..=3 {
            assert!(
                (eval_trial(&tf, x, k).unwrap() - expect[k]).abs() < 1e-14,
                "x={x} k={k}"
            );
        }
    }
}

#[test]
fn rejects_non_finite_coefficients() {
    assert!(CoefficientVector64::new(vec![0.0, f64::NAN]).is_err());
    assert!(CoefficientVector64::new(vec![f64::INFINITY]).is_err());
}

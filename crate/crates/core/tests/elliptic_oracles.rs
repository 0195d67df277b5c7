mod common;

use approx::assert_abs_diff_eq;
use entfluct::elliptic::{dk_dk, dq_dk, ellint_e, ellint_k, nome, EllipticPair};
use std::f64::consts::FRAC_1_SQRT_2;

#[test]
fn agm_matches_quadrature() {
    for i in 1..=99 {
        let k = i as f64 / 100.0;
        assert_abs_diff_eq!(ellint_k(k).unwrap(), common::quad_k(k), epsilon = 1e-12);
        assert_abs_diff_eq!(ellint_e(k).unwrap(), common::quad_e(k), epsilon = 1e-12);
    }
}

#[test]
fn handbook_values() {
    assert_abs_diff_eq!(ellint_k(FRAC_1_SQRT_2).unwrap(), 1.854_074_677_301_372, epsilon = 1e-14);
    assert_abs_diff_eq!(ellint_k(0.8).unwrap(), 1.995_302_777_664_729, epsilon = 1e-9);
    assert_abs_diff_eq!(ellint_e(0.5).unwrap(), 1.467_462_209_339_427, epsilon = 1e-9);
}

#[test]
fn derivatives_match_central_differences() {
    let h = 1e-6;
    for i in 1..=19 {
        let k = i as f64 * 0.05;
        let fd_k = (ellint_k(k + h).unwrap() - ellint_k(k - h).unwrap()) / (2.0 * h);
        let fd_q = (nome(k + h).unwrap() - nome(k - h).unwrap()) / (2.0 * h);
        assert_abs_diff_eq!(dk_dk(k).unwrap(), fd_k, epsilon = 1e-6);
        assert_abs_diff_eq!(dq_dk(k).unwrap(), fd_q, epsilon = 1e-6);
    }
}

#[test]
fn legendre_relation_on_a_fine_grid() {
    for i in 1..1000 {
        let k = i as f64 / 1000.0;
        assert!(EllipticPair::from_k(k).unwrap().legendre_defect() < 1e-12, "k={k}");
    }
}

#[test]
fn complementary_nome_relation() {
    for i in 1..=19 {
        let k = i as f64 * 0.05;
        let kp = ((1.0 - k) * (1.0 + k)).sqrt();
        let prod = nome(k).unwrap().ln() * nome(kp).unwrap().ln();
        assert_abs_diff_eq!(prod, std::f64::consts::PI.powi(2), epsilon = 1e-11);
    }
}

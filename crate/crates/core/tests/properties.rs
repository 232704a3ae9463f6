use proptest::prelude::*;
use sellmax_core::gain::{drift_h, drift_h_dt, gain, gain_dx};
use sellmax_core::law::{joint_density, max_cdf};
use sellmax_core::value::{classify_infimum, classify_supremum, InfimumRegime};
use sellmax_core::{ExponentSign, ModelParams};

fn params(mu: f64) -> ModelParams {
    ModelParams::new(mu, 1.0, 1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gain_dominates_and_increases(mu in -1.0..2.0f64, t in 0.0..1.0f64, x in 0.0..4.0f64, dx in 1e-3..0.5f64) {
        let p = params(mu);
        let g = gain(t, x, &p, ExponentSign::Plus).unwrap();
        prop_assert!(g >= x.exp() * (1.0 - 1e-13));
        let g2 = gain(t, x + dx, &p, ExponentSign::Plus).unwrap();
        prop_assert!(g2 >= g * (1.0 - 1e-13));
        prop_assert_eq!(gain_dx(t.min(0.999), 0.0, &p, ExponentSign::Plus).unwrap(), 0.0);
    }

    #[test]
    fn gain_with_negative_exponent_is_bounded(mu in -1.0..2.0f64, t in 0.0..1.0f64, x in 0.0..4.0f64) {
        let g = gain(t, x, &params(mu), ExponentSign::Minus).unwrap();
        prop_assert!(g > 0.0 && g <= (-x).exp() * (1.0 + 1e-13));
    }

    #[test]
    fn max_cdf_is_a_distribution(t in 0.01..3.0f64, lam in -2.0..2.0f64, x in 0.0..5.0f64, dx in 0.0..1.0f64) {
        let a = max_cdf(t, x, lam).unwrap();
        let b = max_cdf(t, x + dx, lam).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b >= a - 1e-15);
        prop_assert_eq!(max_cdf(t, 0.0, lam).unwrap(), 0.0);
    }

    #[test]
    fn joint_density_nonnegative(r in 0.01..3.0f64, s in 0.0..4.0f64, gap in 0.0..6.0f64, lam in -2.0..2.0f64) {
        prop_assert!(joint_density(r, s - gap, s, lam).unwrap() >= 0.0);
    }

    #[test]
    fn h_positive_for_nonpositive_drift(mu in -1.0..0.0f64, t in 0.0..0.999f64, x in 1e-3..4.0f64) {
        prop_assert!(drift_h(t, x, &params(mu), ExponentSign::Plus).unwrap() > 0.0);
    }

    #[test]
    fn h_negative_for_large_drift(mu in 1.0..2.0f64, t in 0.0..0.99f64, x in 0.0..2.0f64) {
        prop_assert!(drift_h(t, x, &params(mu), ExponentSign::Plus).unwrap() < 0.0);
    }

    #[test]
    fn h_increases_in_time(mu in 0.01..0.99f64, t in 0.0..0.99f64, x in 0.0..4.0f64) {
        prop_assert!(drift_h_dt(t, x, &params(mu)).unwrap() >= 0.0);
    }

    #[test]
    fn classifiers_are_thresholds(sigma in 0.1..3.0f64, eps in 1e-9..1.0f64) {
        let half = 0.5 * sigma * sigma;
        let below = ModelParams::new(half - eps, sigma, 1.0).unwrap();
        let above = ModelParams::new(half + eps, sigma, 1.0).unwrap();
        prop_assert_ne!(classify_supremum(&below), classify_supremum(&above));
        let top = ModelParams::new(sigma * sigma + eps, sigma, 1.0).unwrap();
        prop_assert_eq!(classify_infimum(&top), InfimumRegime::WaitUntilEnd);
        let low = ModelParams::new(-eps, sigma, 1.0).unwrap();
        prop_assert_eq!(classify_infimum(&low), InfimumRegime::StopImmediately);
    }
}

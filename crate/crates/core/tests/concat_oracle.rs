use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qft_lab_core::concat::{
    accuracy_after_levels, delta_for_equal_levels, k3_equal_thresholds, k3_for_same_accuracy, levels_for_accuracy,
    min_levels_oracle, NoiseParams,
};

/// Random parameters with both species below threshold.
fn sample(rng: &mut ChaCha8Rng) -> NoiseParams {
    let c2 = 10f64.powf(rng.gen_range(0.0..2.5));
    let c3 = if rng.gen_bool(0.3) { c2 } else { 10f64.powf(rng.gen_range(0.0..2.5)) };
    let cp23 = rng.gen_range(0.01..0.99);
    let p23 = cp23 / c3;
    let delta = 10f64.powf(rng.gen_range(0.0..1.5));
    let p2 = (p23 / delta).min(1.0 / c2 * 0.99);
    let epsilon = p2 * 10f64.powf(-rng.gen_range(0.0..12.0));
    NoiseParams::new(c2, p2, c3, p23, epsilon).unwrap()
}

#[test]
fn closed_form_tracks_oracle_over_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut gaps: BTreeMap<i64, usize> = BTreeMap::new();
    for _ in 0..20_000 {
        let params = sample(&mut rng);
        let k2 = rng.gen_range(0..12);
        let closed = k3_for_same_accuracy(&params, k2).unwrap() as i64;
        let oracle = min_levels_oracle(&params, k2).unwrap() as i64;
        *gaps.entry(closed - oracle).or_default() += 1;
        assert!((closed - oracle).abs() <= 1, "{params:?} k2={k2}: closed {closed} oracle {oracle}");
    }
    println!("closed − oracle histogram: {gaps:?}");
}

#[test]
fn equal_threshold_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5_000 {
        let c = 10f64.powf(rng.gen_range(0.0..2.0));
        let cp23 = rng.gen_range(0.01..0.99);
        let delta = 10f64.powf(rng.gen_range(0.0..1.5));
        let p2 = cp23 / c / delta;
        let params = NoiseParams::new(c, p2, c, cp23 / c, 1e-9).unwrap();
        for k2 in 0..6 {
            assert_eq!(
                k3_for_same_accuracy(&params, k2).unwrap(),
                k3_equal_thresholds(c, p2, delta, k2).unwrap()
            );
        }
    }
}

#[test]
fn levels_are_exact_argmin() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let params = sample(&mut rng);
        let (c, p, eps) = (params.c2, params.p2, params.epsilon);
        let k = levels_for_accuracy(c, p, eps).unwrap();
        let brute = (0..64).find(|&k| accuracy_after_levels(c, p, k).unwrap() <= eps).unwrap();
        assert_eq!(k, brute, "c={c} p={p} eps={eps}");
    }
}

#[test]
fn identical_noise_needs_no_extra_levels() {
    for k2 in 0..8 {
        let params = NoiseParams::new(36.0, 0.01, 36.0, 0.01, 1e-9).unwrap();
        assert_eq!(min_levels_oracle(&params, k2).unwrap(), k2);
        assert_eq!(k3_for_same_accuracy(&params, k2).unwrap(), k2);
    }
}

proptest! {
    #[test]
    fn accuracy_strictly_decreases(cp in 0.01f64..0.999, c in 1.0f64..200.0, k in 0u32..6) {
        let p = cp / c;
        prop_assert!(accuracy_after_levels(c, p, k + 1).unwrap() < accuracy_after_levels(c, p, k).unwrap());
    }

    #[test]
    fn delta_relates_accuracies(
        c2 in 1.0f64..100.0, c3 in 1.0f64..100.0, cp2 in 0.01f64..0.9, cp23 in 0.01f64..0.99, k in 0u32..4,
    ) {
        let params = NoiseParams::new(c2, cp2 / c2, c3, cp23 / c3, 1e-9);
        prop_assume!(params.is_ok());
        let params = params.unwrap();
        let delta = delta_for_equal_levels(&params, k).unwrap();
        let e2 = accuracy_after_levels(params.c2, params.p2, k).unwrap();
        let e3 = accuracy_after_levels(params.c3, params.p23, k).unwrap();
        prop_assume!(e2 > 1e-280 && e3 > 1e-280);
        prop_assert!(((delta * e2 - e3) / e3).abs() < 1e-12, "{}", ((delta * e2 - e3) / e3).abs());
    }
}

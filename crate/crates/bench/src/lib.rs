//! Fixtures shared by the benchmarks in `benches/`.

use num_complex::Complex64;
use qft_lab_core::concat::NoiseParams;
use qft_lab_core::sim::StateVector;

/// Seven qubits followed by seven qutrits, the register a qubit-to-qutrit
/// Steane check runs on.
pub const MIXED_RADICES: [u8; 14] = [2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3];

/// Dense deterministic state with every amplitude nonzero.
pub fn dense_state(radices: &[u8]) -> StateVector {
    let dim: usize = radices.iter().map(|&r| r as usize).product();
    let amps = (0..dim)
        .map(|i| {
            let x = i as f64;
            Complex64::new((0.37 * x).sin() + 1.1, (0.11 * x).cos())
        })
        .collect();
    StateVector::normalized(radices, amps).expect("nonzero amplitudes")
}

/// Deterministic grid of valid noise parameters with unequal thresholds.
pub fn noise_grid(count: usize) -> Vec<NoiseParams> {
    (0..count)
        .filter_map(|i| {
            let t = i as f64 / count as f64;
            let c2 = 1.0 + 99.0 * t;
            let c3 = 1.0 + 99.0 * (1.0 - t);
            let p23 = (0.05 + 0.9 * ((7.0 * t).fract())) / c3;
            let p2 = p23 / (1.0 + 9.0 * ((13.0 * t).fract()));
            (c2 * p2 < 1.0).then(|| NoiseParams::new(c2, p2, c3, p23, p2 * 1e-6).ok()).flatten()
        })
        .collect()
}

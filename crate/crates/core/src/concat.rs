//! Concatenation-level arithmetic for binary and ternary codes.
//!
//! After `k` levels a code with threshold `1/c` and physical error rate `p`
//! fails with probability `(1/c)(c·p)^(2^k)`. Everything here works from that
//! expression with base-2 logarithms.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConcatError {
    #[error("AboveThreshold: c·p = {product} is not below 1")]
    AboveThreshold { product: f64 },
    #[error("QutritAboveThreshold: log δ + log(c3·p2) = {0} is not negative")]
    QutritAboveThreshold(f64),
    #[error("invalid noise parameters: {0}")]
    InvalidParams(String),
    #[error("no level up to {0} reaches the target accuracy")]
    OracleOverflow(u32),
}

/// Largest level the brute-force oracle will try.
pub const ORACLE_MAX_LEVEL: u32 = 64;

/// The ten `(c·p23, δ)` rows of the published level-gap table.
pub const TABLE1_ROWS: [(f64, f64); 10] = [
    (0.9, 1.5),
    (0.9, 2.0),
    (0.9, 3.0),
    (0.9, 4.0),
    (0.9, 5.0),
    (0.5, 1.5),
    (0.5, 2.0),
    (0.5, 3.0),
    (0.5, 4.0),
    (0.5, 5.0),
];

/// Thresholds and error rates of a hybrid qubit/qutrit circuit.
///
/// `c2`, `c3` are inverse thresholds of the binary and ternary codes,
/// `p2`, `p23` the error rates of the qubit-only and qubit–qutrit
/// decompositions, and `epsilon` the target accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseParams {
    pub c2: f64,
    pub p2: f64,
    pub c3: f64,
    pub p23: f64,
    pub epsilon: f64,
}

impl NoiseParams {
    pub fn new(c2: f64, p2: f64, c3: f64, p23: f64, epsilon: f64) -> Result<Self, ConcatError> {
        let invalid = |m: &str| Err(ConcatError::InvalidParams(m.to_string()));
        if !(c2 >= 1.0 && c3 >= 1.0) {
            return invalid("c2 and c3 must be at least 1");
        }
        if !(p2 > 0.0 && p2 <= p23 && p23 < 1.0) {
            return invalid("need 0 < p2 <= p23 < 1");
        }
        if !(epsilon > 0.0) {
            return invalid("epsilon must be positive");
        }
        Ok(Self { c2, p2, c3, p23, epsilon })
    }

    /// Parameters from `p2` and the noise ratio `δ = p23 / p2`.
    pub fn with_delta(c2: f64, c3: f64, p2: f64, delta: f64, epsilon: f64) -> Result<Self, ConcatError> {
        if !(delta >= 1.0) {
            return Err(ConcatError::InvalidParams("delta must be at least 1".into()));
        }
        Self::new(c2, p2, c3, delta * p2, epsilon)
    }

    /// Equal-threshold parameters from the products `c·p2` and `δ`; `c = 1`.
    pub fn from_products(cp2: f64, delta: f64) -> Result<Self, ConcatError> {
        Self::with_delta(1.0, 1.0, cp2, delta, 1.0)
    }

    pub fn delta(&self) -> f64 {
        self.p23 / self.p2
    }

    fn check_thresholds(&self) -> Result<(), ConcatError> {
        below_threshold(self.c2, self.p2)?;
        below_threshold(self.c3, self.p23)
    }
}

fn below_threshold(c: f64, p: f64) -> Result<(), ConcatError> {
    let product = c * p;
    if product < 1.0 {
        Ok(())
    } else {
        Err(ConcatError::AboveThreshold { product })
    }
}

/// `(1/c)(c·p)^(2^k)`.
pub fn accuracy_after_levels(c: f64, p: f64, k: u32) -> Result<f64, ConcatError> {
    below_threshold(c, p)?;
    Ok((c * p).powf(2f64.powi(k as i32)) / c)
}

/// Smallest `k` with `accuracy_after_levels(c, p, k) <= epsilon`.
pub fn levels_for_accuracy(c: f64, p: f64, epsilon: f64) -> Result<u32, ConcatError> {
    below_threshold(c, p)?;
    if !(epsilon > 0.0) {
        return Err(ConcatError::InvalidParams("epsilon must be positive".into()));
    }
    if epsilon >= p {
        return Ok(0);
    }
    let real = ((c * epsilon).log2() / (c * p).log2()).log2();
    let mut k = if real.is_finite() && real > 0.0 { real.ceil() as u32 } else { 0 };
    // The closed form can land one off in floating point; settle on the
    // exact argmin.
    while k > 0 && accuracy_after_levels(c, p, k - 1)? <= epsilon {
        k -= 1;
    }
    while accuracy_after_levels(c, p, k)? > epsilon {
        k += 1;
    }
    Ok(k)
}

/// Ratio `δ = ε3/ε2` of the accuracies the two decompositions reach after the
/// same `k` levels.
pub fn delta_for_equal_levels(params: &NoiseParams, k: u32) -> Result<f64, ConcatError> {
    params.check_thresholds()?;
    let NoiseParams { c2, p2, c3, p23, .. } = *params;
    let log_delta = 2f64.powi(k as i32) * ((c3 * p23) / (c2 * p2)).log2() + (c2 / c3).log2();
    Ok(log_delta.exp2())
}

/// Real-valued `k3` before the outer ceiling:
/// `k2 + log((log(c2·p2) − 2^(−k2)·log(c2/c3)) / (log δ + log(c3·p2)))`.
///
/// Returns `None` when the numerator is non-negative, i.e. the qubit target
/// accuracy is already at or above `1/c3` and no qutrit level is needed.
pub fn k3_real(params: &NoiseParams, k2: u32) -> Result<Option<f64>, ConcatError> {
    params.check_thresholds()?;
    let NoiseParams { c2, p2, c3, .. } = *params;
    let denom = params.delta().log2() + (c3 * p2).log2();
    if denom >= 0.0 {
        return Err(ConcatError::QutritAboveThreshold(denom));
    }
    let numer = (c2 * p2).log2() - (c2 / c3).log2() / 2f64.powi(k2 as i32);
    if numer >= 0.0 {
        return Ok(None);
    }
    Ok(Some(k2 as f64 + (numer / denom).log2()))
}

/// Levels the qubit–qutrit decomposition needs to match the accuracy the
/// qubit-only decomposition reaches after `k2` levels.
pub fn k3_for_same_accuracy(params: &NoiseParams, k2: u32) -> Result<u32, ConcatError> {
    Ok(match k3_real(params, k2)? {
        Some(k3) if k3 > 0.0 => k3.ceil() as u32,
        _ => 0,
    })
}

/// Equal-threshold form `⌈k2 + log(log(c·p2) / (log δ + log(c·p2)))⌉`.
pub fn k3_equal_thresholds(c: f64, p2: f64, delta: f64, k2: u32) -> Result<u32, ConcatError> {
    below_threshold(c, p2)?;
    below_threshold(c, delta * p2)?;
    let denom = delta.log2() + (c * p2).log2();
    if denom >= 0.0 {
        return Err(ConcatError::QutritAboveThreshold(denom));
    }
    let k3 = k2 as f64 + ((c * p2).log2() / denom).log2();
    Ok(if k3 > 0.0 { k3.ceil() as u32 } else { 0 })
}

/// Brute-force `k3`: the first level at which the qutrit side is at least as
/// accurate as the qubit side after `k2` levels. Compares in log space so
/// deep levels do not underflow.
pub fn min_levels_oracle(params: &NoiseParams, k2: u32) -> Result<u32, ConcatError> {
    params.check_thresholds()?;
    let NoiseParams { c2, p2, c3, p23, .. } = *params;
    let target = 2f64.powi(k2 as i32) * (c2 * p2).log2() - c2.log2();
    (0..=ORACLE_MAX_LEVEL)
        .find(|&k3| 2f64.powi(k3 as i32) * (c3 * p23).log2() - c3.log2() <= target)
        .ok_or(ConcatError::OracleOverflow(ORACLE_MAX_LEVEL))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapRow {
    pub cp23: f64,
    pub delta: f64,
    pub cp2: f64,
    pub gap: u32,
}

/// Level gap `⌈k3 − k2⌉` for equal thresholds, one row per `(c·p23, δ)`.
pub fn concat_gap_table(rows: &[(f64, f64)]) -> Result<Vec<GapRow>, ConcatError> {
    rows.iter()
        .map(|&(cp23, delta)| {
            below_threshold(1.0, cp23)?;
            let cp2 = cp23 / delta;
            let params = NoiseParams::new(1.0, cp2, 1.0, cp23, 1.0)?;
            Ok(GapRow {
                cp23,
                delta,
                cp2,
                gap: k3_for_same_accuracy(&params, 0)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HybridLevels {
    /// Level both species must share.
    pub k: u32,
    pub k_qubit: u32,
    pub k_qutrit: u32,
}

/// A hybrid circuit encodes qubits and qutrits at one common level, set by
/// whichever species needs more.
pub fn hybrid_required_levels(params: &NoiseParams) -> Result<HybridLevels, ConcatError> {
    let k_qubit = levels_for_accuracy(params.c2, params.p2, params.epsilon)?;
    let k_qutrit = levels_for_accuracy(params.c3, params.p23, params.epsilon)?;
    Ok(HybridLevels {
        k: k_qubit.max(k_qutrit),
        k_qubit,
        k_qutrit,
    })
}

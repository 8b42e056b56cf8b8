use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::{check_radix, total_dim, Control, Gate, SimError, BRANCH_PRUNE, NORM_TOL};

/// Normalized pure state over a mixed-radix register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    radices: Vec<u8>,
    strides: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

/// Serialized as the radices plus every amplitude above `1e-12`, keyed by
/// its digit string.
impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            digits: String,
            re: f64,
            im: f64,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            radices: &'a [u8],
            amplitudes: Vec<Entry>,
        }
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-12)
            .map(|(i, a)| Entry {
                digits: self.digits_of(i).iter().map(|d| char::from(b'0' + d)).collect(),
                re: a.re,
                im: a.im,
            })
            .collect();
        Doc {
            radices: &self.radices,
            amplitudes,
        }
        .serialize(s)
    }
}

/// One outcome of a projective measurement on a single wire.
#[derive(Clone, Debug)]
pub struct Branch {
    pub outcome: u8,
    pub probability: f64,
    pub state: StateVector,
}

fn strides_for(radices: &[u8]) -> Vec<usize> {
    let mut strides = vec![1; radices.len()];
    for w in (0..radices.len().saturating_sub(1)).rev() {
        strides[w] = strides[w + 1] * radices[w + 1] as usize;
    }
    strides
}

/// Basis state `|digits⟩`, wire 0 first.
pub fn init_state(radices: &[u8], digits: &str) -> Result<StateVector, SimError> {
    let bad = || SimError::InvalidBasisState {
        radices: radices.to_vec(),
        digits: digits.to_string(),
    };
    for &r in radices {
        check_radix(r)?;
    }
    let parsed: Vec<u8> = digits
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    if parsed.len() != radices.len() || parsed.iter().zip(radices).any(|(d, r)| d >= r) {
        return Err(bad());
    }
    let strides = strides_for(radices);
    let index: usize = parsed.iter().zip(&strides).map(|(&d, &s)| d as usize * s).sum();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); total_dim(radices)];
    amplitudes[index] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        radices: radices.to_vec(),
        strides,
        amplitudes,
    })
}

impl StateVector {
    /// Wraps an amplitude vector, requiring unit norm within 1e-9.
    pub fn from_amplitudes(radices: &[u8], amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let state = Self::from_raw(radices, amplitudes)?;
        let n = state.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(SimError::NotNormalized(n));
        }
        Ok(state)
    }

    /// Wraps an amplitude vector and rescales it to unit norm.
    pub fn normalized(radices: &[u8], amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let mut state = Self::from_raw(radices, amplitudes)?;
        let n = state.norm_sqr().sqrt();
        if n < BRANCH_PRUNE {
            return Err(SimError::NotNormalized(0.0));
        }
        state.amplitudes.iter_mut().for_each(|a| *a /= n);
        Ok(state)
    }

    fn from_raw(radices: &[u8], amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        for &r in radices {
            check_radix(r)?;
        }
        let dim = total_dim(radices);
        if amplitudes.len() != dim {
            return Err(SimError::ShapeError(format!(
                "{} amplitudes for dimension {dim}",
                amplitudes.len()
            )));
        }
        Ok(Self {
            radices: radices.to_vec(),
            strides: strides_for(radices),
            amplitudes,
        })
    }

    pub fn radices(&self) -> &[u8] {
        &self.radices
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Index step between consecutive digits of `wire`.
    pub fn stride(&self, wire: usize) -> usize {
        self.strides[wire]
    }

    pub fn wire_count(&self) -> usize {
        self.radices.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Digit of `wire` in basis index `index`.
    #[inline]
    pub fn digit(&self, index: usize, wire: usize) -> u8 {
        ((index / self.strides[wire]) % self.radices[wire] as usize) as u8
    }

    pub fn digits_of(&self, index: usize) -> Vec<u8> {
        (0..self.wire_count()).map(|w| self.digit(index, w)).collect()
    }

    pub fn index_of(&self, digits: &[u8]) -> usize {
        digits.iter().zip(&self.strides).map(|(&d, &s)| d as usize * s).sum()
    }

    pub fn amplitude(&self, digits: &[u8]) -> Complex64 {
        self.amplitudes[self.index_of(digits)]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, SimError> {
        self.same_shape(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn fidelity(&self, other: &StateVector) -> Result<f64, SimError> {
        Ok(self.inner(other)?.norm_sqr())
    }

    fn same_shape(&self, other: &StateVector) -> Result<(), SimError> {
        if self.radices != other.radices {
            return Err(SimError::ShapeError(format!(
                "radices {:?} vs {:?}",
                self.radices, other.radices
            )));
        }
        Ok(())
    }

    /// `self ⊗ other`; the wires of `other` follow those of `self`.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut radices = self.radices.clone();
        radices.extend_from_slice(&other.radices);
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        StateVector {
            strides: strides_for(&radices),
            radices,
            amplitudes,
        }
    }

    /// Scales every amplitude by a unit-modulus phase.
    pub fn with_phase(mut self, phase: Complex64) -> StateVector {
        self.amplitudes.iter_mut().for_each(|a| *a *= phase);
        self
    }

    /// Total probability on basis states in which some wire holds a digit ≥ 2.
    pub fn non_binary_weight(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| (0..self.wire_count()).any(|w| self.digit(*i, w) >= 2))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    fn check_wire(&self, wire: usize) -> Result<(), SimError> {
        if wire >= self.wire_count() {
            return Err(SimError::InvalidWire {
                wire,
                wires: self.wire_count(),
            });
        }
        Ok(())
    }

    /// Checks that `gate` with `controls` may act on `target` of this register.
    pub fn check_gate(&self, gate: Gate, controls: &[Control], target: usize) -> Result<(), SimError> {
        self.check_wire(target)?;
        gate.check_radix(self.radices[target])?;
        for (k, c) in controls.iter().enumerate() {
            self.check_wire(c.wire)?;
            if c.wire == target || controls[..k].iter().any(|o| o.wire == c.wire) {
                return Err(SimError::RepeatedWire(c.wire));
            }
            if c.level >= self.radices[c.wire] {
                return Err(SimError::InvalidControlLevel {
                    wire: c.wire,
                    level: c.level,
                    radix: self.radices[c.wire],
                });
            }
        }
        Ok(())
    }

    /// Applies `gate` to `target` on the subspace where every control wire
    /// holds its activation level.
    pub fn apply_gate(&self, gate: Gate, controls: &[Control], target: usize) -> Result<StateVector, SimError> {
        let mut out = self.clone();
        out.apply_gate_mut(gate, controls, target)?;
        Ok(out)
    }

    pub fn apply_gate_mut(&mut self, gate: Gate, controls: &[Control], target: usize) -> Result<(), SimError> {
        self.check_gate(gate, controls, target)?;
        let m = gate.matrix();
        let r = self.radices[target] as usize;
        let stride = self.strides[target];
        let block = stride * r;
        let mut local = [Complex64::new(0.0, 0.0); 3];
        for hi in (0..self.dim()).step_by(block) {
            for base in hi..hi + stride {
                if !controls.iter().all(|c| self.digit(base, c.wire) == c.level) {
                    continue;
                }
                for (d, slot) in local.iter_mut().enumerate().take(r) {
                    *slot = self.amplitudes[base + d * stride];
                }
                for d in 0..r {
                    let row = &m[d * r..(d + 1) * r];
                    self.amplitudes[base + d * stride] =
                        row.iter().zip(&local[..r]).map(|(u, v)| u * v).sum();
                }
            }
        }
        Ok(())
    }

    /// Enumerates every outcome of measuring `wire` in the computational basis.
    pub fn measure_branches(&self, wire: usize) -> Result<Vec<Branch>, SimError> {
        self.check_wire(wire)?;
        let r = self.radices[wire];
        let mut probs = vec![0.0; r as usize];
        for (i, a) in self.amplitudes.iter().enumerate() {
            probs[self.digit(i, wire) as usize] += a.norm_sqr();
        }
        let mut branches = Vec::new();
        for (outcome, &p) in probs.iter().enumerate() {
            if p < BRANCH_PRUNE {
                continue;
            }
            let norm = p.sqrt();
            let amplitudes = self
                .amplitudes
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    if self.digit(i, wire) as usize == outcome {
                        a / norm
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            branches.push(Branch {
                outcome: outcome as u8,
                probability: p,
                state: StateVector {
                    radices: self.radices.clone(),
                    strides: self.strides.clone(),
                    amplitudes,
                },
            });
        }
        Ok(branches)
    }

    /// Amplitudes of the remaining wires given that `wire` holds `digit`.
    pub fn slice_wire(&self, wire: usize, digit: u8) -> Result<Vec<Complex64>, SimError> {
        self.check_wire(wire)?;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.digit(*i, wire) == digit)
            .map(|(_, a)| *a)
            .collect())
    }
}

/// True iff some unit-modulus `λ` gives `‖a − λb‖₂ ≤ tol`.
///
/// `λ` is fixed by the largest-magnitude entry of `b`.
pub fn equal_up_to_global_phase(a: &[Complex64], b: &[Complex64], tol: f64) -> Result<bool, SimError> {
    if a.len() != b.len() {
        return Err(SimError::ShapeError(format!("lengths {} vs {}", a.len(), b.len())));
    }
    let Some(lambda) = phase_from_pivot(a, b) else {
        return Ok(a.iter().all(|x| x.norm() <= tol));
    };
    let dist: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - lambda * y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(dist <= tol)
}

/// Unit-modulus phase taking `b` to `a` at the largest entry of `b`.
pub(crate) fn phase_from_pivot(a: &[Complex64], b: &[Complex64]) -> Option<Complex64> {
    let (k, pivot) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))?;
    if pivot.norm() == 0.0 {
        return None;
    }
    let ratio = a[k] / pivot;
    if ratio.norm() == 0.0 {
        return Some(Complex64::new(1.0, 0.0));
    }
    Some(ratio / ratio.norm())
}

use num_complex::Complex64;
use serde::Serialize;

use super::code::codespace_deviation;
use super::{QeccError, StabilizerCode, CODESPACE_TOL, FIDELITY_TOL};
use crate::sim::{init_state, Control, Gate, StateVector, STATE_DIM_LIMIT};

/// Singly controlled gate `Controlled{level, inner}`, applied either to one
/// physical wire pair or to one logical pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalGate {
    pub level: u8,
    pub inner: Gate,
}

impl TransversalGate {
    pub fn new(level: u8, inner: Gate) -> Self {
        Self { level, inner }
    }

    /// Resolves a census label (`CNOT`, `c1-ternary-cnot`, `c2-ternary-cnot`)
    /// for a given target radix.
    pub fn from_label(label: &str, target_radix: u8) -> Result<Self, QeccError> {
        let g = match (label, target_radix) {
            ("CNOT", 2) => Self::new(1, Gate::X),
            ("c1-ternary-cnot", 3) => Self::new(1, Gate::X1),
            ("c1-ternary-cnot", 2) => Self::new(1, Gate::X),
            ("c2-ternary-cnot", 3) => Self::new(2, Gate::X01),
            ("c2-ternary-cnot", 2) => Self::new(2, Gate::X),
            _ => {
                return Err(QeccError::IllegalGate(format!(
                    "{label} has no form with a radix-{target_radix} target"
                )))
            }
        };
        Ok(g)
    }

    pub fn label(&self) -> String {
        format!("C{}-{}", self.level, self.inner)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseMode {
    /// One global phase shared by every logical basis image.
    Strict,
    /// Each logical basis image may carry its own phase.
    PerBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientationReport {
    /// Verdict under the report's phase mode.
    pub logical_action_matches: bool,
    pub strict_match: bool,
    pub per_basis_match: bool,
    pub stays_in_codespace: bool,
    /// `(i, j)` logical inputs in row-major order.
    pub inputs: Vec<(u8, u8)>,
    pub fidelities: Vec<f64>,
    pub worst_fidelity: f64,
    pub worst_codespace_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransversalReport {
    pub ctrl_code: String,
    pub tgt_code: String,
    pub physical_gate: String,
    pub expected_logical_gate: String,
    pub phase_mode: PhaseMode,
    /// Physical controls on the control block.
    #[serde(flatten)]
    pub forward: OrientationReport,
    /// Physical controls on the target block, when the gate is legal that
    /// way round. The expected logical action is unchanged.
    pub reversed: Option<OrientationReport>,
}

/// Applies `physical` to each aligned wire pair of two code blocks for every
/// logical basis input and compares with `expected` acting on the logical
/// digits.
pub fn transversal_check(
    ctrl: &StabilizerCode,
    tgt: &StabilizerCode,
    physical: TransversalGate,
    expected: TransversalGate,
    mode: PhaseMode,
) -> Result<TransversalReport, QeccError> {
    if ctrl.n_physical != tgt.n_physical {
        return Err(QeccError::Shape(format!(
            "{} has {} wires but {} has {}",
            ctrl.name, ctrl.n_physical, tgt.name, tgt.n_physical
        )));
    }
    let dim = ctrl.dim() * tgt.dim();
    if dim > STATE_DIM_LIMIT {
        return Err(QeccError::DimensionLimit { dim, limit: STATE_DIM_LIMIT });
    }
    let (rc, rt) = (ctrl.wire_radix, tgt.wire_radix);
    if expected.level >= rc || expected.inner.radix() != rt {
        return Err(QeccError::IllegalGate(format!(
            "expected logical gate {} on radix {rc} → {rt}",
            expected.label()
        )));
    }
    if physical.level >= rc || physical.inner.radix() != rt {
        return Err(QeccError::IllegalGate(format!(
            "physical gate {} on radix {rc} → {rt}",
            physical.label()
        )));
    }
    let ctrl_words: Vec<StateVector> = (0..rc).map(|j| ctrl.codeword(j)).collect::<Result<_, _>>()?;
    let tgt_words: Vec<StateVector> = (0..rt).map(|j| tgt.codeword(j)).collect::<Result<_, _>>()?;
    let ctx = Context {
        ctrl,
        tgt,
        ctrl_words: &ctrl_words,
        tgt_words: &tgt_words,
        expected,
    };

    let n = ctrl.n_physical;
    let forward = ctx.run(mode, |state| {
        for i in 0..n {
            state.apply_gate_mut(physical.inner, &[Control::new(i, physical.level)], n + i)?;
        }
        Ok(())
    })?;
    let reversed = if physical.level < rt && physical.inner.radix() == rc {
        Some(ctx.run(mode, |state| {
            for i in 0..n {
                state.apply_gate_mut(physical.inner, &[Control::new(n + i, physical.level)], i)?;
            }
            Ok(())
        })?)
    } else {
        None
    };
    Ok(TransversalReport {
        ctrl_code: ctrl.name.clone(),
        tgt_code: tgt.name.clone(),
        physical_gate: physical.label(),
        expected_logical_gate: expected.label(),
        phase_mode: mode,
        forward,
        reversed,
    })
}

struct Context<'a> {
    ctrl: &'a StabilizerCode,
    tgt: &'a StabilizerCode,
    ctrl_words: &'a [StateVector],
    tgt_words: &'a [StateVector],
    expected: TransversalGate,
}

impl Context<'_> {
    /// Expected image of logical `|i, j⟩`: the expected gate's column on the
    /// two-digit logical register, re-encoded.
    fn expected_image(&self, i: u8, j: u8) -> Result<StateVector, QeccError> {
        let (rc, rt) = (self.ctrl.wire_radix, self.tgt.wire_radix);
        let logical = init_state(&[rc, rt], &format!("{i}{j}"))?.apply_gate(
            self.expected.inner,
            &[Control::new(0, self.expected.level)],
            1,
        )?;
        let mut acc: Option<Vec<Complex64>> = None;
        for (idx, amp) in logical.amplitudes().iter().enumerate() {
            if amp.norm() < 1e-15 {
                continue;
            }
            let (a, b) = (idx / rt as usize, idx % rt as usize);
            let term = self.ctrl_words[a].tensor(&self.tgt_words[b]);
            let acc = acc.get_or_insert_with(|| vec![Complex64::new(0.0, 0.0); term.dim()]);
            acc.iter_mut().zip(term.amplitudes()).for_each(|(x, y)| *x += amp * y);
        }
        let mut radices = self.ctrl_words[0].radices().to_vec();
        radices.extend_from_slice(self.tgt_words[0].radices());
        Ok(StateVector::from_amplitudes(&radices, acc.expect("unitary column is nonzero"))?)
    }

    fn run<F>(&self, mode: PhaseMode, apply: F) -> Result<OrientationReport, QeccError>
    where
        F: Fn(&mut StateVector) -> Result<(), crate::sim::SimError>,
    {
        let n = self.ctrl.n_physical;
        let mut inputs = Vec::new();
        let mut overlaps = Vec::new();
        let mut worst_dev: f64 = 0.0;
        for i in 0..self.ctrl.wire_radix {
            for j in 0..self.tgt.wire_radix {
                let mut state = self.ctrl_words[i as usize].tensor(&self.tgt_words[j as usize]);
                apply(&mut state)?;
                let radices = state.radices().to_vec();
                let dev_c = codespace_deviation(self.ctrl, state.amplitudes(), &radices, 0)?;
                let dev_t = codespace_deviation(self.tgt, state.amplitudes(), &radices, n)?;
                worst_dev = worst_dev.max(dev_c.hypot(dev_t));
                let expected = self.expected_image(i, j)?;
                overlaps.push(expected.inner(&state)?);
                inputs.push((i, j));
            }
        }
        let fidelities: Vec<f64> = overlaps.iter().map(|o| o.norm_sqr()).collect();
        let worst_fidelity = fidelities.iter().copied().fold(f64::INFINITY, f64::min);
        let per_basis_match = worst_fidelity >= 1.0 - FIDELITY_TOL;
        let reference = overlaps[0] / overlaps[0].norm().max(f64::MIN_POSITIVE);
        let strict_match = per_basis_match
            && overlaps
                .iter()
                .all(|o| (o / o.norm() - reference).norm() <= 1e-9);
        Ok(OrientationReport {
            logical_action_matches: match mode {
                PhaseMode::Strict => strict_match,
                PhaseMode::PerBasis => per_basis_match,
            },
            strict_match,
            per_basis_match,
            stays_in_codespace: worst_dev <= CODESPACE_TOL,
            inputs,
            fidelities,
            worst_fidelity,
            worst_codespace_deviation: worst_dev,
        })
    }
}

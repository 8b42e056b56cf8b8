use num_complex::Complex64;
use serde::Serialize;

use super::{in_codespace, CodeName, QeccError, StabilizerCode, CODESPACE_TOL, FIDELITY_TOL};
use crate::circuit::{ClassicalCondition, Circuit, GateInstance};
use crate::sim::{apply_circuit, equal_up_to_global_phase, Control, Gate, StateVector, NORM_TOL};

#[derive(Clone, Debug, Serialize)]
pub struct LeakageReport {
    pub final_state: StateVector,
    /// Final state has weight on some basis state with a digit 2.
    pub leaked: bool,
    /// Final state lies in span{|000⟩, |111⟩}.
    pub in_binary_codespace: bool,
}

/// Encodes `α|000⟩ + β|111⟩` on three qutrit wires, lifts every wire with
/// `X1`, injects a stray `X1` on wire 0, lowers every wire with `X2`.
pub fn leakage_experiment(alpha: Complex64, beta: Complex64) -> Result<LeakageReport, QeccError> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(QeccError::InvalidState(format!("|α|² + |β|² = {norm}")));
    }
    let radices = [3u8; 3];
    let mut amps = vec![Complex64::new(0.0, 0.0); 27];
    amps[0] = alpha;
    amps[13] = beta;
    let mut state = StateVector::from_amplitudes(&radices, amps)?;
    for w in 0..3 {
        state.apply_gate_mut(Gate::X1, &[], w)?;
    }
    state.apply_gate_mut(Gate::X1, &[], 0)?;
    for w in 0..3 {
        state.apply_gate_mut(Gate::X2, &[], w)?;
    }
    let leaked = state.non_binary_weight() > CODESPACE_TOL;
    let inside = state.amplitude(&[0, 0, 0]).norm_sqr() + state.amplitude(&[1, 1, 1]).norm_sqr();
    let in_binary_codespace = (inside - 1.0).abs() <= CODESPACE_TOL;
    Ok(LeakageReport {
        final_state: state,
        leaked,
        in_binary_codespace,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShorCnotReport {
    pub control_out: StateVector,
    pub target_out: StateVector,
    pub control_in_codespace: bool,
    pub target_in_codespace: bool,
}

/// Transversal 1-controlled `X1` from a binary Shor block holding `|0⟩_L`
/// onto a ternary Shor block holding `|2⟩_L`.
pub fn shor_cnot_experiment() -> Result<ShorCnotReport, QeccError> {
    let ctrl_code = StabilizerCode::by_name(CodeName::ShorBlockB);
    let tgt_code = StabilizerCode::by_name(CodeName::ShorBlockT);
    let mut joint = ctrl_code.codeword(0)?.tensor(&tgt_code.codeword(2)?);
    for i in 0..3 {
        joint.apply_gate_mut(Gate::X1, &[Control::new(i, 1)], 3 + i)?;
    }
    let (control_out, target_out) = factor_product(&joint, 3)?;
    Ok(ShorCnotReport {
        control_in_codespace: in_codespace(&ctrl_code, &control_out, CODESPACE_TOL)?,
        target_in_codespace: in_codespace(&tgt_code, &target_out, CODESPACE_TOL)?,
        control_out,
        target_out,
    })
}

/// Splits a state on `left ⊗ right` (the first `split` wires form `left`).
///
/// The right factor gets the convention "first non-negligible amplitude real
/// positive"; the left factor absorbs the remaining phase.
pub fn factor_product(state: &StateVector, split: usize) -> Result<(StateVector, StateVector), QeccError> {
    let (lr, rr) = state.radices().split_at(split);
    let right_dim: usize = rr.iter().map(|&r| r as usize).product();
    let amps = state.amplitudes();
    let (pivot, _) = amps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .ok_or(QeccError::Factorization(f64::INFINITY))?;
    let (pa, pb) = (pivot / right_dim, pivot % right_dim);
    let row: Vec<Complex64> = amps[pa * right_dim..(pa + 1) * right_dim].to_vec();
    let col: Vec<Complex64> = (0..amps.len() / right_dim).map(|a| amps[a * right_dim + pb]).collect();
    let mut right = StateVector::normalized(rr, row)?;
    let first = right
        .amplitudes()
        .iter()
        .find(|a| a.norm() > 1e-12)
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    right = right.with_phase(first.conj() / first.norm());
    // left_a = Σ_b conj(right_b) ψ_ab
    let left_amps: Vec<Complex64> = (0..col.len())
        .map(|a| {
            (0..right_dim)
                .map(|b| right.amplitudes()[b].conj() * amps[a * right_dim + b])
                .sum()
        })
        .collect();
    let left = StateVector::normalized(lr, left_amps)?;
    let residual = left
        .tensor(&right)
        .amplitudes()
        .iter()
        .zip(amps)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > 1e-9 {
        return Err(QeccError::Factorization(residual));
    }
    Ok((left, right))
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetBranch {
    pub outcome: u8,
    pub probability: f64,
    pub fidelity: f64,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TGadgetReport {
    pub branches: Vec<GadgetBranch>,
    pub holds: bool,
}

/// Unencoded T gadget: ancilla `|0⟩` → H → T → CNOT onto `ψ` → measure `ψ`'s
/// wire → `SX` on the ancilla when the outcome is 1. Checks every branch
/// against `T|ψ⟩` up to global phase.
pub fn t_gadget_check(psi: &StateVector) -> Result<TGadgetReport, QeccError> {
    if psi.radices() != [2] {
        return Err(QeccError::Shape("T gadget input must be one qubit".into()));
    }
    let ancilla = crate::sim::init_state(&[2], "0")?;
    let start = ancilla.tensor(psi);
    let mut prep = Circuit::new(&[2, 2]).expect("two qubits");
    prep.push(GateInstance::single(Gate::H, 0))
        .and_then(|c| c.push(GateInstance::single(Gate::T, 0)))
        .and_then(|c| c.push(GateInstance::controlled(Gate::X, 0, 1, 1)))
        .expect("gadget gates are legal");
    let mut fixup = Circuit::new(&[2, 2]).expect("two qubits");
    fixup
        .push(GateInstance {
            kind: Gate::SX,
            controls: vec![],
            target: 0,
            classical: Some(ClassicalCondition { bit: 1 }),
        })
        .expect("gadget gates are legal");

    let expected = psi.apply_gate(Gate::T, &[], 0)?;
    let prepared = apply_circuit(&prep, &start, None)?;
    let mut branches = Vec::new();
    for b in prepared.measure_branches(1)? {
        let bits = [false, b.outcome == 1];
        let corrected = apply_circuit(&fixup, &b.state, Some(&bits))?;
        let out = StateVector::normalized(&[2], corrected.slice_wire(1, b.outcome)?)?;
        let fidelity = out.fidelity(&expected)?;
        branches.push(GadgetBranch {
            outcome: b.outcome,
            probability: b.probability,
            fidelity,
            matches: fidelity >= 1.0 - FIDELITY_TOL
                && equal_up_to_global_phase(out.amplitudes(), expected.amplitudes(), 1e-9)?,
        });
    }
    Ok(TGadgetReport {
        holds: branches.iter().all(|b| b.matches),
        branches,
    })
}

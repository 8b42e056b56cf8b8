use super::{Circuit, CircuitError, GateInstance};
use crate::sim::{Gate, SimError};

fn require_radix(radices: &[u8], wire: usize, radix: u8, gate: &str) -> Result<(), CircuitError> {
    match radices.get(wire) {
        Some(&r) if r == radix => Ok(()),
        Some(&r) => Err(SimError::RadixMismatch {
            gate: gate.to_string(),
            radix: r,
        }
        .into()),
        None => Err(CircuitError::Validation(format!("wire {wire} does not exist"))),
    }
}

fn distinct(c0: usize, c1: usize, t: usize) -> Result<(), CircuitError> {
    if c0 == c1 || c0 == t || c1 == t {
        return Err(CircuitError::Validation("Toffoli wires must be distinct".into()));
    }
    Ok(())
}

/// Toffoli over three qubit wires with seven T/T† gates, six CNOTs and two
/// Hadamards.
pub fn decompose_toffoli_clifford_t(
    radices: &[u8],
    c0: usize,
    c1: usize,
    t: usize,
) -> Result<Circuit, CircuitError> {
    distinct(c0, c1, t)?;
    for w in [c0, c1, t] {
        require_radix(radices, w, 2, "toffoli-clifford-t")?;
    }
    let cx = |c, x| GateInstance::controlled(Gate::X, c, 1, x);
    let one = GateInstance::single;
    let mut circuit = Circuit::new(radices)?;
    for g in [
        one(Gate::H, t),
        cx(c1, t),
        one(Gate::Tdg, t),
        cx(c0, t),
        one(Gate::T, t),
        cx(c1, t),
        one(Gate::Tdg, t),
        cx(c0, t),
        one(Gate::T, c1),
        one(Gate::T, t),
        one(Gate::H, t),
        cx(c0, c1),
        one(Gate::T, c0),
        one(Gate::Tdg, c1),
        cx(c0, c1),
    ] {
        circuit.push(g)?;
    }
    Ok(circuit)
}

/// Toffoli with `c1` borrowed as a qutrit: raise `c1` to `|2⟩` when both
/// controls are `|1⟩`, flip `t` on `|2⟩`, then lower `c1` back.
pub fn decompose_toffoli_qutrit(
    radices: &[u8],
    c0: usize,
    c1: usize,
    t: usize,
) -> Result<Circuit, CircuitError> {
    distinct(c0, c1, t)?;
    require_radix(radices, c0, 2, "toffoli-qutrit")?;
    require_radix(radices, c1, 3, "toffoli-qutrit")?;
    require_radix(radices, t, 2, "toffoli-qutrit")?;
    let mut circuit = Circuit::new(radices)?;
    circuit
        .push(GateInstance::controlled(Gate::X1, c0, 1, c1))?
        .push(GateInstance::controlled(Gate::X, c1, 2, t))?
        .push(GateInstance::controlled(Gate::X2, c0, 1, c1))?;
    Ok(circuit)
}

/// [`decompose_toffoli_clifford_t`] on wires `[2, 2, 2]`.
pub fn toffoli_clifford_t() -> Circuit {
    decompose_toffoli_clifford_t(&[2, 2, 2], 0, 1, 2).expect("fixed layout is valid")
}

/// [`decompose_toffoli_qutrit`] on wires `[2, 3, 2]`.
pub fn toffoli_qutrit() -> Circuit {
    decompose_toffoli_qutrit(&[2, 3, 2], 0, 1, 2).expect("fixed layout is valid")
}

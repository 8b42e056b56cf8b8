use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{total_dim, SimError, StateVector, UNITARY_DIM_LIMIT};
use crate::circuit::Circuit;

/// Runs every gate of `circuit` on `state`.
///
/// Classically conditioned gates read `bits[cond.bit]`; with `bits = None`
/// such gates are an error.
pub fn apply_circuit(circuit: &Circuit, state: &StateVector, bits: Option<&[bool]>) -> Result<StateVector, SimError> {
    if state.radices() != circuit.radices().as_slice() {
        return Err(SimError::ShapeError(format!(
            "circuit radices {:?} vs state radices {:?}",
            circuit.radices(),
            state.radices()
        )));
    }
    let mut out = state.clone();
    for g in circuit.gates() {
        if let Some(cond) = g.classical {
            let bits = bits.ok_or(SimError::ClassicalControl)?;
            if !bits.get(cond.bit).copied().unwrap_or(false) {
                continue;
            }
        }
        out.apply_gate_mut(g.kind, &g.controls, g.target)?;
    }
    Ok(out)
}

/// Unitary of a circuit with no classical conditions: column `b` is the
/// image of basis state `b`.
pub fn extract_unitary(circuit: &Circuit) -> Result<DMatrix<Complex64>, SimError> {
    let radices = circuit.radices();
    let dim = total_dim(&radices);
    if dim > UNITARY_DIM_LIMIT {
        return Err(SimError::DimensionLimit {
            dim,
            limit: UNITARY_DIM_LIMIT,
        });
    }
    if circuit.gates().iter().any(|g| g.classical.is_some()) {
        return Err(SimError::ClassicalControl);
    }
    let mut u = DMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[b] = Complex64::new(1.0, 0.0);
        let basis = StateVector::from_amplitudes(&radices, amps)?;
        let col = apply_circuit(circuit, &basis, None)?;
        u.set_column(b, &nalgebra::DVector::from_column_slice(col.amplitudes()));
    }
    Ok(u)
}

/// Max-entry comparison `max |a − λb| ≤ tol`, `λ` fixed by the largest entry
/// of `b`.
pub fn matrices_equal_up_to_global_phase(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    tol: f64,
) -> Result<bool, SimError> {
    if a.shape() != b.shape() {
        return Err(SimError::ShapeError(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    let Some(lambda) = super::state::phase_from_pivot(a.as_slice(), b.as_slice()) else {
        return Ok(a.iter().all(|x| x.norm() <= tol));
    };
    Ok(a.iter().zip(b.iter()).all(|(x, y)| (x - lambda * y).norm() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, GateInstance};
    use crate::sim::Gate;

    #[test]
    fn empty_circuit_is_identity() {
        let u = extract_unitary(&Circuit::new(&[2, 2]).unwrap()).unwrap();
        assert_eq!(u, DMatrix::identity(4, 4));
    }

    #[test]
    fn x1_unitary_is_cyclic_permutation() {
        let mut c = Circuit::new(&[3]).unwrap();
        c.push(GateInstance::single(Gate::X1, 0)).unwrap();
        let u = extract_unitary(&c).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0].map(|x| one * x),
        );
        assert_eq!(u, expected);
    }

    #[test]
    fn dimension_limit() {
        let c = Circuit::new(&[2; 21]).unwrap();
        assert!(matches!(extract_unitary(&c), Err(SimError::DimensionLimit { .. })));
    }

    #[test]
    fn classical_gates_need_bits() {
        let mut c = Circuit::new(&[2, 2]).unwrap();
        let mut g = GateInstance::single(Gate::SX, 0);
        g.classical = Some(crate::circuit::ClassicalCondition { bit: 1 });
        c.push(g).unwrap();
        assert_eq!(extract_unitary(&c), Err(SimError::ClassicalControl));
        let s = crate::sim::init_state(&[2, 2], "00").unwrap();
        assert_eq!(apply_circuit(&c, &s, Some(&[false, false])).unwrap(), s);
        let fired = apply_circuit(&c, &s, Some(&[false, true])).unwrap();
        assert!((fired.amplitude(&[1, 0]).norm() - 1.0).abs() < 1e-12);
    }
}

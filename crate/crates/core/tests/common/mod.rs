#![allow(dead_code)]

use proptest::prelude::*;
use qft_lab_core::circuit::{Circuit, GateInstance};
use qft_lab_core::sim::Gate;

pub const QUBIT_GATES: [Gate; 7] = [Gate::X, Gate::Z, Gate::H, Gate::S, Gate::T, Gate::Tdg, Gate::SX];
pub const QUTRIT_GATES: [Gate; 5] = [Gate::X01, Gate::X1, Gate::X2, Gate::Z1, Gate::Z2];

pub fn gates_for(radix: u8) -> &'static [Gate] {
    if radix == 2 {
        &QUBIT_GATES
    } else {
        &QUTRIT_GATES
    }
}

pub fn radices(max_wires: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop_oneof![Just(2u8), Just(3u8)], 1..=max_wires)
}

/// A legal gate on `radices`, optionally with one control.
pub fn gate_on(radices: Vec<u8>) -> impl Strategy<Value = GateInstance> {
    let n = radices.len();
    (0..n, any::<prop::sample::Index>(), any::<bool>(), 0..n, 0u8..3).prop_map(move |(t, pick, ctl, c, lvl)| {
        let set = gates_for(radices[t]);
        let kind = set[pick.index(set.len())];
        if ctl && n > 1 && c != t {
            GateInstance::controlled(kind, c, lvl % radices[c], t)
        } else {
            GateInstance::single(kind, t)
        }
    })
}

pub fn circuit(max_wires: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    radices(max_wires).prop_flat_map(move |r| {
        prop::collection::vec(gate_on(r.clone()), 0..=max_gates).prop_map(move |gates| {
            let mut c = Circuit::new(&r).unwrap();
            for g in gates {
                c.push(g).unwrap();
            }
            c
        })
    })
}

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qft_lab_core::circuit::{
    decompose_toffoli_clifford_t, decompose_toffoli_qutrit, gate_census, parse, serialize, toffoli_clifford_t,
    toffoli_qutrit, Circuit,
};
use qft_lab_core::sim::{apply_circuit, extract_unitary, init_state, matrices_equal_up_to_global_phase};

fn toffoli_matrix() -> DMatrix<Complex64> {
    DMatrix::from_fn(8, 8, |i, j| {
        let image = if j >= 6 { j ^ 1 } else { j };
        Complex64::new((i == image) as u8 as f64, 0.0)
    })
}

/// Rows and columns of a `[2, 3, 2]` unitary with the middle digit in {0, 1}.
fn qubit_block(u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let keep: Vec<usize> = (0..12).filter(|i| (i / 2) % 3 < 2).collect();
    DMatrix::from_fn(8, 8, |i, j| u[(keep[i], keep[j])])
}

#[test]
fn clifford_t_matches_toffoli() {
    let u = extract_unitary(&toffoli_clifford_t()).unwrap();
    assert!(matrices_equal_up_to_global_phase(&u, &toffoli_matrix(), 1e-9).unwrap());
}

#[test]
fn qutrit_decomposition_matches_toffoli_on_qubit_block() {
    let u = extract_unitary(&toffoli_qutrit()).unwrap();
    let block = qubit_block(&u);
    assert!(matrices_equal_up_to_global_phase(&block, &toffoli_matrix(), 1e-9).unwrap());
    // The qubit block is closed: no leakage into c1 = |2⟩.
    for j in (0..12).filter(|j| (j / 2) % 3 < 2) {
        for i in (0..12).filter(|i| (i / 2) % 3 == 2) {
            assert!(u[(i, j)].norm() < 1e-12);
        }
    }
}

#[test]
fn decompositions_agree_with_each_other() {
    let a = extract_unitary(&toffoli_clifford_t()).unwrap();
    let b = qubit_block(&extract_unitary(&toffoli_qutrit()).unwrap());
    assert!(matrices_equal_up_to_global_phase(&a, &b, 1e-9).unwrap());
}

#[test]
fn qutrit_truth_table() {
    let c = toffoli_qutrit();
    for a in 0..2u8 {
        for b in 0..2u8 {
            for t in 0..2u8 {
                let input = init_state(&[2, 3, 2], &format!("{a}{b}{t}")).unwrap();
                let out = apply_circuit(&c, &input, None).unwrap();
                let want = init_state(&[2, 3, 2], &format!("{a}{b}{}", t ^ (a & b))).unwrap();
                assert_eq!(out, want);
            }
        }
    }
}

#[test]
fn clifford_t_sends_110_to_111() {
    let out = apply_circuit(&toffoli_clifford_t(), &init_state(&[2, 2, 2], "110").unwrap(), None).unwrap();
    assert!(out.fidelity(&init_state(&[2, 2, 2], "111").unwrap()).unwrap() > 1.0 - 1e-12);
}

#[test]
fn shapes_and_censuses() {
    let q = toffoli_qutrit();
    assert_eq!((q.len(), q.depth()), (3, 3));
    let census = gate_census(&q);
    assert_eq!(census.get("c1-ternary-cnot"), 2.0);
    assert_eq!(census.get("c2-ternary-cnot"), 1.0);
    assert_eq!(census.len(), 2);

    let ct = gate_census(&toffoli_clifford_t());
    assert_eq!((ct.get("T"), ct.get("CNOT"), ct.get("H")), (7.0, 6.0, 2.0));
    assert_eq!(ct.total(), 15.0);
    assert!(gate_census(&Circuit::new(&[2]).unwrap()).is_empty());
}

#[test]
fn decompositions_reject_wrong_radices() {
    assert!(decompose_toffoli_clifford_t(&[2, 3, 2], 0, 1, 2).is_err());
    assert!(decompose_toffoli_qutrit(&[2, 2, 2], 0, 1, 2).is_err());
    assert!(decompose_toffoli_qutrit(&[3, 3, 2], 0, 1, 2).is_err());
    assert!(decompose_toffoli_clifford_t(&[2, 2, 2], 0, 0, 2).is_err());
}

#[test]
fn inactive_control_is_untouched() {
    let out = apply_circuit(&toffoli_qutrit(), &init_state(&[2, 3, 2], "100").unwrap(), None).unwrap();
    assert_eq!(out, init_state(&[2, 3, 2], "100").unwrap());
}

proptest! {
    #[test]
    fn census_survives_json_round_trip(c in common::circuit(4, 12)) {
        let back = parse(&serialize(&c)).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(gate_census(&back), gate_census(&c));
        prop_assert_eq!(gate_census(&c).total(), c.len() as f64);
    }

    #[test]
    fn stacked_qutrit_toffolis_keep_two_to_one_ratio(picks in prop::collection::vec((0usize..5, 0usize..5, 0usize..5), 1..8)) {
        // Wires alternate qubit/qutrit so every pick can be made legal.
        let radices = [2u8, 3, 2, 3, 2];
        let mut c = Circuit::new(&radices).unwrap();
        let qubits = [0usize, 2, 4];
        let qutrits = [1usize, 3];
        for (a, b, t) in picks {
            let c0 = qubits[a % 3];
            let tgt = qubits[(a % 3 + 1 + t % 2) % 3];
            let c1 = qutrits[b % 2];
            c = c.then(&decompose_toffoli_qutrit(&radices, c0, c1, tgt).unwrap()).unwrap();
        }
        let census = gate_census(&c);
        prop_assert_eq!(census.get("c1-ternary-cnot"), 2.0 * census.get("c2-ternary-cnot"));
    }
}

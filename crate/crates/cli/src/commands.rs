use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use qft_lab_core::circuit::{self, gate_census, Circuit};
use qft_lab_core::concat::{
    self, accuracy_after_levels, concat_gap_table, delta_for_equal_levels, hybrid_required_levels,
    levels_for_accuracy, min_levels_oracle, NoiseParams, TABLE1_ROWS,
};
use qft_lab_core::qecc::{self, CodeName, PhaseMode, StabilizerCode, TransversalGate};
use qft_lab_core::resource::{
    self, adder_census_formulas, adder_census_with, adder_discrepancies, adder_toffoli_count, fig4_data, nft,
    CountMode, Decomposition, Fig4Kind, GateCostModel, TableMode,
};
use qft_lab_core::sim::{apply_circuit, extract_unitary, init_state, matrices_equal_up_to_global_phase, StateVector};

use crate::output::{json, Cell, Csv};

/// Text for stdout plus the process exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

/// A domain failure: bad physics inputs, unreadable files, failed checks.
#[derive(Debug)]
pub struct DomainError(pub String);

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for DomainError {
            fn from(e: $t) -> Self {
                DomainError(e.to_string())
            }
        }
    )*};
}
domain_from!(
    concat::ConcatError,
    resource::ResourceError,
    qecc::QeccError,
    qft_lab_core::SimError,
    qft_lab_core::CircuitError,
    std::io::Error
);

type Result<T> = std::result::Result<T, DomainError>;

pub fn reproduce_table1(digits: usize) -> Result<Outcome> {
    let mut csv = Csv::new(&["cp23", "delta", "cp2", "gap"], digits);
    for row in concat_gap_table(&TABLE1_ROWS)? {
        csv.row(&[
            Cell::Float(row.cp23),
            Cell::Float(row.delta),
            Cell::Float(row.cp2),
            Cell::Int(row.gap as u64),
        ]);
    }
    Ok(Outcome::ok(csv.finish()))
}

pub fn reproduce_fig4(
    ns: &[u64],
    kappas: &[f64],
    k2s: &[u32],
    pairs: &[(f64, f64)],
    digits: usize,
) -> Result<Outcome> {
    let mut csv = Csv::new(&["n", "kind", "kappa", "k2", "cp2", "delta", "value"], digits);
    let opt_f = |x: Option<f64>| x.map(Cell::Float).unwrap_or(Cell::Empty);
    for r in fig4_data(ns, kappas, k2s, pairs)? {
        csv.row(&[
            Cell::Int(r.n),
            Cell::Text(match r.kind {
                Fig4Kind::Bar => "bar",
                Fig4Kind::Line => "line",
            }),
            opt_f(r.kappa),
            r.k2.map(|k| Cell::Int(k as u64)).unwrap_or(Cell::Empty),
            opt_f(r.cp2),
            opt_f(r.delta),
            Cell::Float(r.value),
        ]);
    }
    Ok(Outcome::ok(csv.finish()))
}

#[derive(Clone, Copy, Debug)]
pub enum ToffoliMode {
    CliffordT,
    Qutrit,
}

pub fn decompose_toffoli(mode: ToffoliMode, verify: bool, digits: usize) -> Result<Outcome> {
    let circuit = match mode {
        ToffoliMode::CliffordT => circuit::toffoli_clifford_t(),
        ToffoliMode::Qutrit => circuit::toffoli_qutrit(),
    };
    let mut stdout = circuit::serialize(&circuit);
    stdout.push('\n');
    if !verify {
        return Ok(Outcome::ok(stdout));
    }
    let matches = matches_toffoli(&circuit)?;
    stdout.push_str(&json(&json!({ "unitary_matches_toffoli": matches }), digits));
    stdout.push('\n');
    if !matches {
        eprintln!("error: decomposition does not reproduce the Toffoli gate");
    }
    Ok(Outcome {
        stdout,
        code: if matches { 0 } else { 1 },
    })
}

/// Unitary restricted to basis states with every digit in {0, 1}, compared
/// against the 8×8 Toffoli permutation.
fn matches_toffoli(circuit: &Circuit) -> Result<bool> {
    let radices = circuit.radices();
    let u = extract_unitary(circuit)?;
    let probe = init_state(&radices, &"0".repeat(radices.len()))?;
    let keep: Vec<usize> = (0..u.nrows()).filter(|&i| probe.digits_of(i).iter().all(|&d| d < 2)).collect();
    if keep.len() != 8 {
        return Ok(false);
    }
    let block = DMatrix::from_fn(8, 8, |i, j| u[(keep[i], keep[j])]);
    let toffoli = DMatrix::from_fn(8, 8, |i, j| {
        let image = if j >= 6 { j ^ 1 } else { j };
        Complex64::new(if i == image { 1.0 } else { 0.0 }, 0.0)
    });
    Ok(matrices_equal_up_to_global_phase(&block, &toffoli, 1e-9)?)
}

pub fn qecc_leakage(alpha: Complex64, beta: Complex64, digits: usize) -> Result<Outcome> {
    let report = qecc::leakage_experiment(alpha, beta)?;
    Ok(Outcome::ok(json(
        &json!({
            "alpha": {"re": alpha.re, "im": alpha.im},
            "beta": {"re": beta.re, "im": beta.im},
            "report": report,
        }),
        digits,
    ) + "\n"))
}

pub fn qecc_shor_cnot(digits: usize) -> Result<Outcome> {
    Ok(Outcome::ok(json(&qecc::shor_cnot_experiment()?, digits) + "\n"))
}

pub fn qecc_transversal(
    ctrl: CodeName,
    tgt: CodeName,
    gate: &str,
    expect: &str,
    mode: PhaseMode,
    digits: usize,
) -> Result<Outcome> {
    let ctrl = StabilizerCode::by_name(ctrl);
    let tgt = StabilizerCode::by_name(tgt);
    let physical = TransversalGate::from_label(gate, tgt.wire_radix)?;
    let expected = TransversalGate::from_label(expect, tgt.wire_radix)?;
    let report = qecc::transversal_check(&ctrl, &tgt, physical, expected, mode)?;
    Ok(Outcome::ok(json(&report, digits) + "\n"))
}

/// `ψ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn qecc_t_gadget(theta: f64, phi: f64, digits: usize) -> Result<Outcome> {
    let psi = StateVector::normalized(
        &[2],
        vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ],
    )?;
    let report = qecc::t_gadget_check(&psi)?;
    Ok(Outcome::ok(json(&json!({ "psi": psi, "report": report }), digits) + "\n"))
}

pub fn concat_levels(c: f64, p: f64, epsilon: f64, digits: usize) -> Result<Outcome> {
    let k = levels_for_accuracy(c, p, epsilon)?;
    let accuracy = accuracy_after_levels(c, p, k)?;
    Ok(Outcome::ok(json(
        &json!({ "c": c, "p": p, "epsilon": epsilon, "k": k, "accuracy": accuracy }),
        digits,
    ) + "\n"))
}

/// Equal-threshold gap for one `(c·p23, δ)` pair, with the oracle's answer.
pub fn concat_gap(cp23: f64, delta: f64, k2: u32, digits: usize) -> Result<Outcome> {
    let row = concat_gap_table(&[(cp23, delta)])?[0];
    let params = NoiseParams::new(1.0, row.cp2, 1.0, cp23, 1.0)?;
    let k3 = concat::k3_for_same_accuracy(&params, k2)?;
    let oracle = min_levels_oracle(&params, k2)?;
    Ok(Outcome::ok(json(
        &json!({
            "cp23": cp23,
            "delta": delta,
            "cp2": row.cp2,
            "k2": k2,
            "k3": k3,
            "k3_oracle": oracle,
            "gap": row.gap,
        }),
        digits,
    ) + "\n"))
}

pub fn concat_delta(params: &NoiseParams, k: u32, digits: usize) -> Result<Outcome> {
    let delta = delta_for_equal_levels(params, k)?;
    Ok(Outcome::ok(json(&json!({ "params": params, "k": k, "delta": delta }), digits) + "\n"))
}

pub fn concat_hybrid(params: &NoiseParams, digits: usize) -> Result<Outcome> {
    let levels = hybrid_required_levels(params)?;
    Ok(Outcome::ok(json(&json!({ "params": params, "levels": levels, "k": levels.k }), digits) + "\n"))
}

#[derive(Serialize)]
struct EstimateReport {
    n: u64,
    mode: Decomposition,
    table_mode: TableMode,
    count_mode: CountMode,
    kappa_g: f64,
    k: u32,
    toffoli_count: f64,
    census: qft_lab_core::GateCensus,
    weighted_sum: f64,
    nft: f64,
    /// `Σ κ_g n_g` as a closed form in `n`, when the count is the simplified one.
    formula: Option<String>,
    metadata: resource::AdderDiscrepancies,
}

pub fn estimate_adder(
    n: u64,
    decomposition: Decomposition,
    table_mode: TableMode,
    count_mode: CountMode,
    kappa_g: f64,
    k: u32,
    digits: usize,
) -> Result<Outcome> {
    let census = adder_census_with(n, decomposition, table_mode, count_mode)?;
    let model = GateCostModel::steane(kappa_g)?;
    let weighted_sum = model.weighted_sum(&census)?;
    let total = nft(&census, &model, k)?;
    let exact_table = decomposition == Decomposition::Qubit && table_mode == TableMode::PaperTable;
    let formula = if count_mode == CountMode::Simplified || exact_table {
        Some(model.weighted_formula(&adder_census_formulas(decomposition, table_mode))?.to_string())
    } else {
        None
    };
    let report = EstimateReport {
        n,
        mode: decomposition,
        table_mode,
        count_mode,
        kappa_g,
        k,
        toffoli_count: adder_toffoli_count(n, count_mode)?,
        census,
        weighted_sum,
        nft: total,
        formula,
        metadata: adder_discrepancies(),
    };
    Ok(Outcome::ok(json(&report, digits) + "\n"))
}

pub fn sim_run(path: &std::path::Path, initial: &str, digits: usize) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DomainError(format!("cannot read {}: {e}", path.display())))?;
    let circuit = circuit::parse(&text)?;
    let start = init_state(&circuit.radices(), initial)?;
    let out = apply_circuit(&circuit, &start, None)?;
    Ok(Outcome::ok(json(
        &json!({
            "initial": initial,
            "gates": circuit.len(),
            "depth": circuit.depth(),
            "census": gate_census(&circuit),
            "final_state": out,
        }),
        digits,
    ) + "\n"))
}

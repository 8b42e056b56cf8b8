use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::{Circuit, GateInstance};
use crate::sim::Gate;

/// Gate counts keyed by canonical label.
///
/// Counts are real-valued because the closed-form adder counts carry
/// `log2` terms; circuit censuses are always integral.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
pub struct GateCensus(BTreeMap<String, f64>);

impl GateCensus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut c = Self::new();
        for (label, n) in counts {
            c.add(label, n);
        }
        c
    }

    pub fn add(&mut self, label: impl Into<String>, n: f64) {
        *self.0.entry(label.into()).or_insert(0.0) += n;
    }

    pub fn get(&self, label: &str) -> f64 {
        self.0.get(label).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|(k, v)| (k.clone(), v * factor)).collect())
    }
}

impl Serialize for GateCensus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, &v) in &self.0 {
            if v.fract() == 0.0 && v.abs() < 9.0e15 {
                map.serialize_entry(k, &(v as i64))?;
            } else {
                map.serialize_entry(k, &v)?;
            }
        }
        map.end()
    }
}

/// Canonical census label of one gate instance.
///
/// `T` and `Tdg` share the `T` label. Singly controlled NOT-like gates are
/// `CNOT` between qubits and `c{level}-ternary-cnot` once a qutrit or a
/// level-2 control is involved. Classical conditions do not change the label.
pub fn census_label(gate: &GateInstance, radices: &[u8]) -> String {
    let base = match gate.kind {
        Gate::Tdg => "T",
        k => k.label(),
    };
    match gate.controls.as_slice() {
        [] => base.to_string(),
        [c] => {
            let not_like = matches!(gate.kind, Gate::X | Gate::X1 | Gate::X2 | Gate::X01);
            let all_qubit = radices[c.wire] == 2 && radices[gate.target] == 2;
            match (not_like, c.level) {
                (true, 1) if all_qubit && gate.kind == Gate::X => "CNOT".to_string(),
                (true, 1 | 2) => format!("c{}-ternary-cnot", c.level),
                _ => format!("C{}-{base}", c.level),
            }
        }
        cs => {
            let levels: String = cs.iter().map(|c| char::from(b'0' + c.level)).collect();
            format!("C{levels}-{base}")
        }
    }
}

pub fn gate_census(circuit: &Circuit) -> GateCensus {
    let radices = circuit.radices();
    let mut census = GateCensus::new();
    for g in circuit.gates() {
        census.add(census_label(g, &radices), 1.0);
    }
    census
}

//! Mixed-radix circuit representation, Toffoli decomposition passes, gate
//! census and JSON serialization.

mod census;
mod decompose;
mod json;

pub use census::{census_label, gate_census, GateCensus};
pub use decompose::{
    decompose_toffoli_clifford_t, decompose_toffoli_qutrit, toffoli_clifford_t, toffoli_qutrit,
};
pub use json::{parse, serialize};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sim::{check_radix, Control, Gate, SimError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireSpec {
    pub id: usize,
    pub radix: u8,
}

/// Gate fires only when classical bit `bit` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalCondition {
    pub bit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateInstance {
    pub kind: Gate,
    pub controls: Vec<Control>,
    pub target: usize,
    pub classical: Option<ClassicalCondition>,
}

impl GateInstance {
    pub fn single(kind: Gate, target: usize) -> Self {
        Self {
            kind,
            controls: Vec::new(),
            target,
            classical: None,
        }
    }

    pub fn controlled(kind: Gate, control: usize, level: u8, target: usize) -> Self {
        Self {
            kind,
            controls: vec![Control::new(control, level)],
            target,
            classical: None,
        }
    }

    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().map(|c| c.wire).chain(std::iter::once(self.target))
    }
}

/// Ordered gate list over radix-2/3 wires. Every gate is validated on insert.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    wires: Vec<WireSpec>,
    gates: Vec<GateInstance>,
}

impl Circuit {
    pub fn new(radices: &[u8]) -> Result<Self, CircuitError> {
        let wires = radices
            .iter()
            .enumerate()
            .map(|(id, &r)| check_radix(r).map(|radix| WireSpec { id, radix }))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            wires,
            gates: Vec::new(),
        })
    }

    /// Builds a circuit from wire specs, which must carry ids `0..n` in order.
    pub fn from_parts(wires: Vec<WireSpec>, gates: Vec<GateInstance>) -> Result<Self, CircuitError> {
        for (k, w) in wires.iter().enumerate() {
            if w.id != k {
                return Err(CircuitError::Validation(format!(
                    "wire ids must be contiguous from 0; position {k} has id {}",
                    w.id
                )));
            }
            if !matches!(w.radix, 2 | 3) {
                return Err(CircuitError::Validation(format!(
                    "wire {} has radix {}; only 2 and 3 are supported",
                    w.id, w.radix
                )));
            }
        }
        let mut circuit = Self {
            wires,
            gates: Vec::with_capacity(gates.len()),
        };
        for g in gates {
            circuit.push(g)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: GateInstance) -> Result<&mut Self, CircuitError> {
        self.validate_gate(&gate)?;
        self.gates.push(gate);
        Ok(self)
    }

    fn validate_gate(&self, g: &GateInstance) -> Result<(), CircuitError> {
        let n = self.wires.len();
        let radix_of = |w: usize| {
            self.wires
                .get(w)
                .map(|s| s.radix)
                .ok_or_else(|| CircuitError::Validation(format!("gate references missing wire {w}")))
        };
        let tr = radix_of(g.target)?;
        if g.kind.radix() != tr {
            return Err(CircuitError::Validation(format!(
                "gate {} is not legal on radix-{tr} wire {}",
                g.kind, g.target
            )));
        }
        for (k, c) in g.controls.iter().enumerate() {
            let cr = radix_of(c.wire)?;
            if c.level >= cr {
                return Err(CircuitError::Validation(format!(
                    "control level {} is not legal on radix-{cr} wire {}",
                    c.level, c.wire
                )));
            }
            if c.wire == g.target || g.controls[..k].iter().any(|o| o.wire == c.wire) {
                return Err(CircuitError::Validation(format!("wire {} used twice by one gate", c.wire)));
            }
        }
        if let Some(cc) = g.classical {
            if cc.bit >= n {
                return Err(CircuitError::Validation(format!(
                    "classical bit {} has no matching wire",
                    cc.bit
                )));
            }
        }
        Ok(())
    }

    pub fn wires(&self) -> &[WireSpec] {
        &self.wires
    }

    pub fn radices(&self) -> Vec<u8> {
        self.wires.iter().map(|w| w.radix).collect()
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Greedy layering: a gate lands one layer after the latest gate on any
    /// of its wires.
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.wires.len()];
        let mut depth = 0;
        for g in &self.gates {
            let mut wires: Vec<usize> = g.wires().collect();
            if let Some(cc) = g.classical {
                wires.push(cc.bit);
            }
            let layer = wires.iter().map(|&w| frontier[w]).max().unwrap_or(0) + 1;
            for w in wires {
                frontier[w] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// `self` followed by `other` on the same wires.
    pub fn then(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.wires != other.wires {
            return Err(CircuitError::Validation("circuits act on different wires".into()));
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }
}

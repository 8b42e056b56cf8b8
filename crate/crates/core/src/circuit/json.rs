use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitError, GateInstance, WireSpec};

#[derive(Serialize)]
struct CircuitRef<'a> {
    wires: &'a [WireSpec],
    gates: &'a [GateInstance],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitDoc {
    wires: Vec<WireSpec>,
    gates: Vec<GateInstance>,
}

pub fn serialize(circuit: &Circuit) -> String {
    serde_json::to_string(&CircuitRef {
        wires: circuit.wires(),
        gates: circuit.gates(),
    })
    .expect("circuit serialization is infallible")
}

/// Parses circuit JSON. Syntax and type errors report line and column;
/// well-formed documents that break circuit invariants are validation errors.
pub fn parse(text: &str) -> Result<Circuit, CircuitError> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| CircuitError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Circuit::from_parts(doc.wires, doc.gates)
}

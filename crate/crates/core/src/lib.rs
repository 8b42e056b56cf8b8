//! Verification and cost modeling for fault-tolerant hybrid qubit–qutrit
//! circuits.
//!
//! - [`sim`]: dense mixed-radix state-vector simulation.
//! - [`circuit`]: circuit IR, Toffoli decompositions, census and JSON.
//! - [`qecc`]: qubit/qutrit codes and the code-level experiments.
//! - [`concat`]: concatenation-level arithmetic and its brute-force oracle.
//! - [`resource`]: fault-tolerant gate-count models and sweep tables.

// Negated comparisons are deliberate: they reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod concat;
pub mod qecc;
pub mod resource;
pub mod sim;

pub use circuit::{Circuit, CircuitError, GateCensus, GateInstance, WireSpec};
pub use concat::{ConcatError, NoiseParams};
pub use qecc::{QeccError, StabilizerCode, TransversalReport};
pub use resource::{GateCostModel, ResourceError};
pub use sim::{Control, Gate, SimError, StateVector, OMEGA};

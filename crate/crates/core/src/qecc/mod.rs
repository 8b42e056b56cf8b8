//! Qubit and qutrit stabilizer codes and the code-level experiments:
//! leakage through an intermediate `|2⟩`, the Shor-block CNOT, transversal
//! gate checks, and the T-gate teleportation gadget.

mod code;
mod experiments;
mod pauli;
mod transversal;

pub use code::{in_codespace, CodeName, StabilizerCode};
pub use experiments::{
    factor_product, leakage_experiment, shor_cnot_experiment, t_gadget_check, GadgetBranch, LeakageReport,
    ShorCnotReport, TGadgetReport,
};
pub use pauli::{PauliFactor, PauliString};
pub use transversal::{transversal_check, OrientationReport, PhaseMode, TransversalGate, TransversalReport};

use thiserror::Error;

use crate::sim::SimError;

/// Codespace-membership tolerance.
pub const CODESPACE_TOL: f64 = 1e-9;

/// Minimum fidelity for a state to count as a match.
pub const FIDELITY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QeccError {
    #[error("code construction failed: {0}")]
    CodeConstruction(String),
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("logical digit {j} is not below radix {radix}")]
    InvalidLogical { j: u8, radix: u8 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("output is not a product state (residual {0:e})")]
    Factorization(f64),
    #[error("dimension {dim} exceeds limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error("gate is not legal on these codes: {0}")]
    IllegalGate(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

//! Dense state-vector simulation over wires of radix 2 or 3.
//!
//! Wire 0 is the most significant digit of a basis index.

mod gate;
mod state;
mod unitary;

pub use gate::{Control, Gate, OMEGA};
pub use state::{equal_up_to_global_phase, init_state, Branch, StateVector};
pub use unitary::{apply_circuit, extract_unitary, matrices_equal_up_to_global_phase};

use thiserror::Error;

/// Largest total dimension [`extract_unitary`] will build a matrix for.
pub const UNITARY_DIM_LIMIT: usize = 1 << 20;

/// Largest state-vector dimension the code experiments will allocate.
pub const STATE_DIM_LIMIT: usize = 1 << 23;

/// Norm tolerance for states.
pub const NORM_TOL: f64 = 1e-9;

/// Branches lighter than this are dropped by [`StateVector::measure_branches`].
pub const BRANCH_PRUNE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid basis state {digits:?} for radices {radices:?}")]
    InvalidBasisState { radices: Vec<u8>, digits: String },
    #[error("gate {gate} is not legal on a radix-{radix} wire")]
    RadixMismatch { gate: String, radix: u8 },
    #[error("control level {level} is not legal on radix-{radix} wire {wire}")]
    InvalidControlLevel { wire: usize, level: u8, radix: u8 },
    #[error("wire radix must be 2 or 3, got {0}")]
    InvalidRadix(u8),
    #[error("wire {wire} out of range for {wires} wires")]
    InvalidWire { wire: usize, wires: usize },
    #[error("wire {0} is used more than once by one gate")]
    RepeatedWire(usize),
    #[error("dimension {dim} exceeds limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("unknown gate {0:?}")]
    UnknownGate(String),
    #[error("classically controlled gate has no unitary; supply classical bits")]
    ClassicalControl,
}

pub(crate) fn check_radix(radix: u8) -> Result<u8, SimError> {
    match radix {
        2 | 3 => Ok(radix),
        r => Err(SimError::InvalidRadix(r)),
    }
}

pub(crate) fn total_dim(radices: &[u8]) -> usize {
    radices.iter().map(|&r| r as usize).product()
}

//! Single-wire gate library for qubit and qutrit wires.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SimError;

/// Primitive cube root of unity, `exp(2πi/3)`.
pub const OMEGA: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Base (uncontrolled) gate acting on a single wire.
///
/// `X`, `Z`, `H`, `S`, `T`, `Tdg` and `SX` are qubit gates. `X1` is the cyclic
/// increment `|j⟩ → |j+1 mod 3⟩`, `X2` its inverse, `Z1|j⟩ = ω^j|j⟩`,
/// `Z2 = Z1²`, and `X01` swaps `|0⟩` and `|1⟩` while fixing `|2⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gate {
    X,
    Z,
    H,
    S,
    T,
    Tdg,
    SX,
    X01,
    X1,
    X2,
    Z1,
    Z2,
}

impl Gate {
    pub const ALL: [Gate; 12] = [
        Gate::X,
        Gate::Z,
        Gate::H,
        Gate::S,
        Gate::T,
        Gate::Tdg,
        Gate::SX,
        Gate::X01,
        Gate::X1,
        Gate::X2,
        Gate::Z1,
        Gate::Z2,
    ];

    /// Radix of the only wire kind this gate may act on.
    pub fn radix(self) -> u8 {
        match self {
            Gate::X | Gate::Z | Gate::H | Gate::S | Gate::T | Gate::Tdg | Gate::SX => 2,
            Gate::X01 | Gate::X1 | Gate::X2 | Gate::Z1 | Gate::Z2 => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Gate::X => "X",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::S => "S",
            Gate::T => "T",
            Gate::Tdg => "Tdg",
            Gate::SX => "SX",
            Gate::X01 => "X01",
            Gate::X1 => "X1",
            Gate::X2 => "X2",
            Gate::Z1 => "Z1",
            Gate::Z2 => "Z2",
        }
    }

    pub fn check_radix(self, radix: u8) -> Result<(), SimError> {
        if self.radix() == radix {
            Ok(())
        } else {
            Err(SimError::RadixMismatch {
                gate: self.label().to_string(),
                radix,
            })
        }
    }

    /// Row-major `r × r` matrix of the gate.
    ///
    /// `SX` is the product `S·X` (X first, then S): the classically
    /// controlled correction that closes the T-gate teleportation gadget.
    pub fn matrix(self) -> Vec<Complex64> {
        let t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let w2 = OMEGA * OMEGA;
        match self {
            Gate::X => vec![ZERO, ONE, ONE, ZERO],
            Gate::Z => vec![ONE, ZERO, ZERO, -ONE],
            Gate::H => vec![h, h, h, -h],
            Gate::S => vec![ONE, ZERO, ZERO, I],
            Gate::T => vec![ONE, ZERO, ZERO, t],
            Gate::Tdg => vec![ONE, ZERO, ZERO, t.conj()],
            Gate::SX => vec![ZERO, ONE, I, ZERO],
            Gate::X01 => vec![ZERO, ONE, ZERO, ONE, ZERO, ZERO, ZERO, ZERO, ONE],
            Gate::X1 => vec![ZERO, ZERO, ONE, ONE, ZERO, ZERO, ZERO, ONE, ZERO],
            Gate::X2 => vec![ZERO, ONE, ZERO, ZERO, ZERO, ONE, ONE, ZERO, ZERO],
            Gate::Z1 => vec![ONE, ZERO, ZERO, ZERO, OMEGA, ZERO, ZERO, ZERO, w2],
            Gate::Z2 => vec![ONE, ZERO, ZERO, ZERO, w2, ZERO, ZERO, ZERO, OMEGA],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Gate {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Gate::ALL
            .into_iter()
            .find(|g| g.label() == s)
            .ok_or_else(|| SimError::UnknownGate(s.to_string()))
    }
}

/// A control on `wire` that activates when the wire's digit equals `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub wire: usize,
    pub level: u8,
}

impl Control {
    pub fn new(wire: usize, level: u8) -> Self {
        Self { wire, level }
    }
}

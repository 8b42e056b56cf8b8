use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::{PauliString, QeccError};
use crate::sim::StateVector;

/// Names of the built-in codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeName {
    Rep3B,
    Rep3T,
    ShorBlockB,
    ShorBlockT,
    Shor9B,
    Shor9T,
    Steane7B,
    Steane7T,
}

impl CodeName {
    pub const ALL: [CodeName; 8] = [
        CodeName::Rep3B,
        CodeName::Rep3T,
        CodeName::ShorBlockB,
        CodeName::ShorBlockT,
        CodeName::Shor9B,
        CodeName::Shor9T,
        CodeName::Steane7B,
        CodeName::Steane7T,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeName::Rep3B => "rep3-b",
            CodeName::Rep3T => "rep3-t",
            CodeName::ShorBlockB => "shor-block-b",
            CodeName::ShorBlockT => "shor-block-t",
            CodeName::Shor9B => "shor9-b",
            CodeName::Shor9T => "shor9-t",
            CodeName::Steane7B => "steane7-b",
            CodeName::Steane7T => "steane7-t",
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeName {
    type Err = QeccError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CodeName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| QeccError::UnknownCode(s.to_string()))
    }
}

/// Stabilizer code over wires of a single radix encoding one logical qudit.
///
/// `zero_stabilizers` are extra operators that fix `|0⟩_L` but are not code
/// stabilizers (the logical-Z-type checks of the Shor family). Codeword
/// construction projects `|0…0⟩` onto the joint +1 eigenspace of generators
/// and zero stabilizers; `|j⟩_L = X_L^j |0⟩_L`.
///
/// `block_checks` apply to a lone Shor block: inside the nine-wire code the
/// inter-block X checks force every block into a definite eigenstate of its
/// block X operator, so a block state that is not such an eigenstate (e.g.
/// `|000⟩ + ω|111⟩` for qubits) counts as outside the codespace.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pub name: String,
    pub wire_radix: u8,
    pub n_physical: usize,
    pub generators: Vec<PauliString>,
    pub zero_stabilizers: Vec<PauliString>,
    pub block_checks: Vec<PauliString>,
    pub logical_x: PauliString,
    pub distance: u32,
}

impl StabilizerCode {
    /// Builds and checks a code: every operator must span `n_physical` wires
    /// of `wire_radix`, generators must commute pairwise, and the logical X
    /// and zero stabilizers must commute with every generator.
    pub fn new(
        name: impl Into<String>,
        wire_radix: u8,
        generators: Vec<PauliString>,
        zero_stabilizers: Vec<PauliString>,
        logical_x: PauliString,
        distance: u32,
    ) -> Result<Self, QeccError> {
        let name = name.into();
        let n_physical = logical_x.len();
        let all = generators.iter().chain(&zero_stabilizers).chain(std::iter::once(&logical_x));
        for op in all {
            if op.radix() != wire_radix || op.len() != n_physical {
                return Err(QeccError::CodeConstruction(format!(
                    "{name}: operator {op} does not match radix {wire_radix} on {n_physical} wires"
                )));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(QeccError::CodeConstruction(format!("{name}: generators {a} and {b} do not commute")));
                }
            }
            for b in zero_stabilizers.iter().chain(std::iter::once(&logical_x)) {
                if !a.commutes_with(b) {
                    return Err(QeccError::CodeConstruction(format!("{name}: {b} does not commute with generator {a}")));
                }
            }
        }
        Ok(Self {
            name,
            wire_radix,
            n_physical,
            generators,
            zero_stabilizers,
            block_checks: Vec::new(),
            logical_x,
            distance,
        })
    }

    pub fn with_block_checks(mut self, checks: Vec<PauliString>) -> Self {
        self.block_checks = checks;
        self
    }

    pub fn by_name(name: CodeName) -> Self {
        build(name).expect("built-in codes are valid")
    }

    /// Number of correctable errors, `⌊d/2⌋`.
    pub fn correctable(&self) -> u32 {
        self.distance / 2
    }

    pub fn dim(&self) -> usize {
        (self.wire_radix as usize).pow(self.n_physical as u32)
    }

    fn radices(&self) -> Vec<u8> {
        vec![self.wire_radix; self.n_physical]
    }

    /// Logical basis state `|j⟩_L`.
    pub fn codeword(&self, j: u8) -> Result<StateVector, QeccError> {
        if j >= self.wire_radix {
            return Err(QeccError::InvalidLogical { j, radix: self.wire_radix });
        }
        let radices = self.radices();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        amps[0] = Complex64::new(1.0, 0.0);
        for op in self.generators.iter().chain(&self.zero_stabilizers) {
            amps = project(op, &amps, &radices, 0)?;
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(QeccError::CodeConstruction(format!("{}: projector annihilates |0…0⟩", self.name)));
        }
        let first = amps.iter().find(|a| a.norm() > 1e-12).copied().unwrap_or(Complex64::new(1.0, 0.0));
        let fix = first.conj() / first.norm() / norm;
        amps.iter_mut().for_each(|a| *a *= fix);
        for _ in 0..j {
            amps = self.logical_x.apply(&amps, &radices, 0)?;
        }
        Ok(StateVector::from_amplitudes(&radices, amps)?)
    }

    /// Applies the codespace projector `∏ (1/r) Σ_m S^m` to the code's wires
    /// at `offset` within a larger register.
    pub fn project_at(&self, amps: &[Complex64], radices: &[u8], offset: usize) -> Result<Vec<Complex64>, QeccError> {
        let mut out = amps.to_vec();
        for g in &self.generators {
            out = project(g, &out, radices, offset)?;
        }
        Ok(out)
    }
}

/// `(1/r)(I + S + … + S^{r−1})` applied to `amps`.
pub(crate) fn project(op: &PauliString, amps: &[Complex64], radices: &[u8], offset: usize) -> Result<Vec<Complex64>, QeccError> {
    let r = op.radix();
    let mut acc = amps.to_vec();
    let mut power = amps.to_vec();
    for _ in 1..r {
        power = op.apply(&power, radices, offset)?;
        acc.iter_mut().zip(&power).for_each(|(a, p)| *a += p);
    }
    let inv = 1.0 / r as f64;
    acc.iter_mut().for_each(|a| *a *= inv);
    Ok(acc)
}

/// `‖P·ψ − ψ‖ ≤ tol` for the code's projector `P`.
pub fn in_codespace(code: &StabilizerCode, state: &StateVector, tol: f64) -> Result<bool, QeccError> {
    if state.radices() != code.radices().as_slice() {
        return Err(QeccError::Shape(format!(
            "state radices {:?} do not match {} ({} radix-{} wires)",
            state.radices(),
            code.name,
            code.n_physical,
            code.wire_radix
        )));
    }
    Ok(codespace_deviation(code, state.amplitudes(), state.radices(), 0)? <= tol)
}

/// `max(‖Pψ − ψ‖, block-check eigen residuals)`, computed on the nonzero
/// support of `amps` since code states are sparse.
pub(crate) fn codespace_deviation(
    code: &StabilizerCode,
    amps: &[Complex64],
    radices: &[u8],
    offset: usize,
) -> Result<f64, QeccError> {
    let state: BTreeMap<usize, Complex64> = amps
        .iter()
        .enumerate()
        .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
        .map(|(i, &a)| (i, a))
        .collect();
    let mut projected = state.clone();
    for g in &code.generators {
        let r = g.radix();
        let mut acc = projected.clone();
        let mut power = projected;
        for _ in 1..r {
            power = g.apply_sparse(&power, radices, offset)?;
            for (&i, &a) in &power {
                *acc.entry(i).or_default() += a;
            }
        }
        let inv = 1.0 / r as f64;
        acc.values_mut().for_each(|a| *a *= inv);
        projected = acc;
    }
    let zero = Complex64::new(0.0, 0.0);
    let residual = |image: &BTreeMap<usize, Complex64>, scale: Complex64| -> f64 {
        let mut sum: f64 = image
            .iter()
            .map(|(i, b)| (b - scale * state.get(i).copied().unwrap_or(zero)).norm_sqr())
            .sum();
        sum += state
            .iter()
            .filter(|(i, _)| !image.contains_key(i))
            .map(|(_, a)| (scale * a).norm_sqr())
            .sum::<f64>();
        sum.sqrt()
    };
    let mut dev = residual(&projected, Complex64::new(1.0, 0.0));
    let norm_sqr: f64 = state.values().map(|a| a.norm_sqr()).sum();
    if norm_sqr > 0.0 {
        for check in &code.block_checks {
            let image = check.apply_sparse(&state, radices, offset)?;
            let lambda = image
                .iter()
                .map(|(i, b)| state.get(i).copied().unwrap_or(zero).conj() * b)
                .sum::<Complex64>()
                / norm_sqr;
            dev = dev.max(residual(&image, lambda));
        }
    }
    Ok(dev)
}

fn parse_all(radix: u8, rows: &[&str]) -> Result<Vec<PauliString>, QeccError> {
    rows.iter().map(|r| PauliString::parse(radix, r)).collect()
}

fn build(name: CodeName) -> Result<StabilizerCode, QeccError> {
    let s = name.as_str();
    match name {
        CodeName::Rep3B => StabilizerCode::new(
            s,
            2,
            parse_all(2, &["Z Z I", "I Z Z"])?,
            vec![],
            PauliString::parse(2, "X X X")?,
            1,
        ),
        CodeName::Rep3T => StabilizerCode::new(
            s,
            3,
            parse_all(3, &["Z1 Z2 I", "I Z1 Z2"])?,
            vec![],
            PauliString::parse(3, "X1 X1 X1")?,
            1,
        ),
        CodeName::ShorBlockB => StabilizerCode::new(
            s,
            2,
            parse_all(2, &["Z Z I", "I Z Z"])?,
            parse_all(2, &["X X X"])?,
            PauliString::parse(2, "Z I I")?,
            1,
        )
        .map(|c| {
            let checks = c.zero_stabilizers.clone();
            c.with_block_checks(checks)
        }),
        CodeName::ShorBlockT => StabilizerCode::new(
            s,
            3,
            parse_all(3, &["Z1 Z2 I", "I Z1 Z2"])?,
            parse_all(3, &["X1 X1 X1"])?,
            PauliString::parse(3, "Z1 I I")?,
            1,
        )
        .map(|c| {
            let checks = c.zero_stabilizers.clone();
            c.with_block_checks(checks)
        }),
        CodeName::Shor9B => shor9(s, 2),
        CodeName::Shor9T => shor9(s, 3),
        CodeName::Steane7B => StabilizerCode::new(
            s,
            2,
            parse_all(
                2,
                &[
                    "I I I X X X X",
                    "I X X I I X X",
                    "X I X I X I X",
                    "I I I Z Z Z Z",
                    "I Z Z I I Z Z",
                    "Z I Z I Z I Z",
                ],
            )?,
            vec![],
            PauliString::parse(2, "X X X X X X X")?,
            3,
        ),
        CodeName::Steane7T => StabilizerCode::new(
            s,
            3,
            parse_all(
                3,
                &[
                    "I I I X1 X1 X1 X1",
                    "I X1 X1 I I X1 X1",
                    "X1 I X1 I X1 I X1",
                    "I I I Z1 Z2 Z2 Z1",
                    "I Z1 Z2 I I Z2 Z1",
                    "Z1 I Z2 I Z2 I Z1",
                ],
            )?,
            vec![],
            PauliString::parse(3, "X1 X1 X1 X1 X1 X1 X1")?,
            3,
        ),
    }
}

/// Three Shor blocks: `Z·Z^{-1}` checks inside each block, block-parity
/// checks `X^⊗3 (X^{-1})^⊗3` between neighbours, logical X = one `Z` per
/// block.
fn shor9(name: &str, r: u8) -> Result<StabilizerCode, QeccError> {
    let mut generators = Vec::new();
    for block in 0..3 {
        for k in 0..2 {
            let a = 3 * block + k;
            let mut g = PauliString::z_on(r, 9, &[a], 1).factors().to_vec();
            g[a + 1].z = r - 1;
            generators.push(PauliString::new(r, g));
        }
    }
    for block in 0..2 {
        let lo: Vec<usize> = (3 * block..3 * block + 3).collect();
        let hi: Vec<usize> = (3 * block + 3..3 * block + 6).collect();
        let mut g = PauliString::x_on(r, 9, &lo, 1).factors().to_vec();
        for &w in &hi {
            g[w].x = r - 1;
        }
        generators.push(PauliString::new(r, g));
    }
    let zero = (0..3)
        .map(|b| PauliString::x_on(r, 9, &[3 * b, 3 * b + 1, 3 * b + 2], 1))
        .collect();
    StabilizerCode::new(name, r, generators, zero, PauliString::z_on(r, 9, &[0, 3, 6], 1), 3)
}

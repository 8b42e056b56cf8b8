use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::QeccError;

/// `X^x Z^z` on one wire (Z acts first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PauliFactor {
    pub x: u8,
    pub z: u8,
}

/// Tensor product of generalized Pauli factors over wires of one radix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliString {
    radix: u8,
    factors: Vec<PauliFactor>,
}

fn root_of_unity(radix: u8, power: u32) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * (power % radix as u32) as f64 / radix as f64;
    match (radix, power % radix as u32) {
        (_, 0) => Complex64::new(1.0, 0.0),
        (2, 1) => Complex64::new(-1.0, 0.0),
        (3, 1) => crate::sim::OMEGA,
        (3, 2) => crate::sim::OMEGA.conj(),
        _ => Complex64::from_polar(1.0, angle),
    }
}

impl PauliString {
    pub fn new(radix: u8, factors: Vec<PauliFactor>) -> Self {
        let factors = factors
            .into_iter()
            .map(|f| PauliFactor {
                x: f.x % radix,
                z: f.z % radix,
            })
            .collect();
        Self { radix, factors }
    }

    /// Parses space-separated factors: `I`, `X`, `Z` (binary) or `I`, `X1`,
    /// `X2`, `Z1`, `Z2` (ternary).
    pub fn parse(radix: u8, text: &str) -> Result<Self, QeccError> {
        let factors = text
            .split_whitespace()
            .map(|tok| {
                let f = |x, z| Ok(PauliFactor { x, z });
                match (radix, tok) {
                    (_, "I") => f(0, 0),
                    (2, "X") => f(1, 0),
                    (2, "Z") => f(0, 1),
                    (3, "X1") => f(1, 0),
                    (3, "X2") => f(2, 0),
                    (3, "Z1") => f(0, 1),
                    (3, "Z2") => f(0, 2),
                    _ => Err(QeccError::CodeConstruction(format!(
                        "factor {tok:?} is not a radix-{radix} Pauli"
                    ))),
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { radix, factors })
    }

    /// Identity on `n` wires.
    pub fn identity(radix: u8, n: usize) -> Self {
        Self {
            radix,
            factors: vec![PauliFactor::default(); n],
        }
    }

    /// `X^x` on every listed wire.
    pub fn x_on(radix: u8, n: usize, wires: &[usize], x: u8) -> Self {
        let mut s = Self::identity(radix, n);
        for &w in wires {
            s.factors[w].x = x % radix;
        }
        s
    }

    /// `Z^z` on every listed wire.
    pub fn z_on(radix: u8, n: usize, wires: &[usize], z: u8) -> Self {
        let mut s = Self::identity(radix, n);
        for &w in wires {
            s.factors[w].z = z % radix;
        }
        s
    }

    pub fn radix(&self) -> u8 {
        self.radix
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[PauliFactor] {
        &self.factors
    }

    /// Acts on a basis string in place and returns the picked-up phase.
    pub fn act_on_digits(&self, digits: &mut [u8]) -> Complex64 {
        let mut power = 0u32;
        for (d, f) in digits.iter_mut().zip(&self.factors) {
            power += f.z as u32 * *d as u32;
            *d = (*d + f.x) % self.radix;
        }
        root_of_unity(self.radix, power)
    }

    /// Applies the string to wires `offset..offset + len` of a register.
    pub fn apply(&self, amps: &[Complex64], radices: &[u8], offset: usize) -> Result<Vec<Complex64>, QeccError> {
        let action = self.bind(radices, offset)?;
        let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
        for (i, &a) in amps.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let (j, phase) = action.map(i);
            out[j] = a * phase;
        }
        Ok(out)
    }

    /// Sparse counterpart of [`PauliString::apply`].
    pub(crate) fn apply_sparse(
        &self,
        amps: &BTreeMap<usize, Complex64>,
        radices: &[u8],
        offset: usize,
    ) -> Result<BTreeMap<usize, Complex64>, QeccError> {
        let action = self.bind(radices, offset)?;
        Ok(amps
            .iter()
            .map(|(&i, &a)| {
                let (j, phase) = action.map(i);
                (j, a * phase)
            })
            .collect())
    }

    fn bind(&self, radices: &[u8], offset: usize) -> Result<BoundAction, QeccError> {
        let n = radices.len();
        if offset + self.len() > n || radices[offset..offset + self.len()].iter().any(|&r| r != self.radix) {
            return Err(QeccError::Shape(format!(
                "radix-{} string of length {} does not fit radices {:?} at offset {offset}",
                self.radix,
                self.len(),
                radices
            )));
        }
        let mut strides = vec![1usize; n];
        for w in (0..n.saturating_sub(1)).rev() {
            strides[w] = strides[w + 1] * radices[w + 1] as usize;
        }
        let support = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.x != 0 || f.z != 0)
            .map(|(k, f)| (strides[offset + k], f.x as usize, f.z as u32))
            .collect();
        Ok(BoundAction {
            radix: self.radix as usize,
            support,
            phases: (0..self.radix as u32).map(|p| root_of_unity(self.radix, p)).collect(),
        })
    }

    /// Whether the two strings commute as operators, checked column by
    /// column over every basis state.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        if self.radix != other.radix || self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let r = self.radix as usize;
        let dim = r.pow(n as u32);
        let mut basis = vec![0u8; n];
        for b in 0..dim {
            let mut rest = b;
            for w in (0..n).rev() {
                basis[w] = (rest % r) as u8;
                rest /= r;
            }
            // A·B|b⟩ and B·A|b⟩; the right-hand factor acts first.
            let mut ab = basis.clone();
            let p_ab = other.act_on_digits(&mut ab) * self.act_on_digits(&mut ab);
            let mut ba = basis.clone();
            let p_ba = self.act_on_digits(&mut ba) * other.act_on_digits(&mut ba);
            if ab != ba || (p_ab - p_ba).norm() > 1e-9 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .factors
            .iter()
            .map(|p| match (self.radix, p.x, p.z) {
                (_, 0, 0) => "I".to_string(),
                (2, 1, 0) => "X".to_string(),
                (2, 0, 1) => "Z".to_string(),
                (2, 1, 1) => "XZ".to_string(),
                (_, x, 0) => format!("X{x}"),
                (_, 0, z) => format!("Z{z}"),
                (_, x, z) => format!("X{x}Z{z}"),
            })
            .collect();
        f.write_str(&names.join(" "))
    }
}

/// A Pauli string resolved against concrete register strides.
struct BoundAction {
    radix: usize,
    support: Vec<(usize, usize, u32)>,
    phases: Vec<Complex64>,
}

impl BoundAction {
    /// Image index and phase of basis state `i`.
    fn map(&self, i: usize) -> (usize, Complex64) {
        let r = self.radix;
        let mut j = i;
        let mut power = 0u32;
        for &(stride, x, z) in &self.support {
            let d = (i / stride) % r;
            power += z * d as u32;
            let nd = (d + x) % r;
            j = j + nd * stride - d * stride;
        }
        (j, self.phases[power as usize % r])
    }
}

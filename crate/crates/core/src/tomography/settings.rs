//! Pauli-basis measurement settings.

use std::fmt;
use std::str::FromStr;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{lit, re, Real};
use crate::state::DensityMatrix;

/// Single-qubit measurement basis. Outcome 0 is the `+1` eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
    Y,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::Z, Basis::X, Basis::Y];

    /// Eigenvector for outcome `bit`.
    pub fn ket<T: Real>(self, bit: usize) -> [Complex<T>; 2] {
        let h = lit::<T>(0.5).sqrt();
        let zero = re(T::zero());
        let one = re(T::one());
        let sign = if bit == 0 { T::one() } else { -T::one() };
        match self {
            Basis::Z if bit == 0 => [one, zero],
            Basis::Z => [zero, one],
            Basis::X => [re(h), re(h * sign)],
            Basis::Y => [re(h), Complex::new(T::zero(), h * sign)],
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Basis::Z => "Z",
            Basis::X => "X",
            Basis::Y => "Y",
        };
        f.write_str(s)
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "Z" | "z" => Ok(Basis::Z),
            "X" | "x" => Ok(Basis::X),
            "Y" | "y" => Ok(Basis::Y),
            other => Err(Error::Parse(format!("unknown basis `{other}`"))),
        }
    }
}

/// One joint setting: a basis per qubit, register order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub bases: Vec<Basis>,
}

impl MeasurementSetting {
    pub fn new(bases: Vec<Basis>) -> Self {
        Self { bases }
    }

    pub fn n_qubits(&self) -> usize {
        self.bases.len()
    }

    pub fn n_outcomes(&self) -> usize {
        1 << self.bases.len()
    }

    /// Position of this setting in [`all_settings`] order (base-3 digits, first
    /// qubit most significant, `Z < X < Y`).
    pub fn index(&self) -> usize {
        self.bases.iter().fold(0, |acc, b| acc * 3 + *b as usize)
    }

    /// Joint eigenvector for `outcome` (bit of the first qubit most significant).
    pub fn outcome_ket<T: Real>(&self, outcome: usize) -> CVector<T> {
        let n = self.bases.len();
        self.bases
            .iter()
            .enumerate()
            .fold(CVector::from_element(1, re(T::one())), |acc, (k, b)| {
                let bit = (outcome >> (n - 1 - k)) & 1;
                linalg::kron_vec(&acc, &CVector::from_vec(b.ket::<T>(bit).to_vec()))
            })
    }

    /// All `2^n` rank-one projectors of this setting.
    pub fn projectors<T: Real>(&self) -> Vec<CMatrix<T>> {
        (0..self.n_outcomes())
            .map(|o| linalg::outer(&self.outcome_ket::<T>(o)))
            .collect()
    }

    /// Born probabilities `Tr(rho P_o)` for every outcome.
    pub fn probabilities<T: Real>(&self, rho: &DensityMatrix<T>) -> Vec<T> {
        // rows of `u` are the conjugated outcome kets
        let d = self.n_outcomes();
        let kets: Vec<CVector<T>> = (0..d).map(|o| self.outcome_ket(o)).collect();
        let u = CMatrix::from_fn(d, d, |r, c| kets[r][c].conj());
        let rotated = &u * rho.matrix() * u.adjoint();
        (0..d).map(|o| rotated[(o, o)].re.max(T::zero())).collect()
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bases {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// All `3^n` settings in [`MeasurementSetting::index`] order.
pub fn all_settings(n_qubits: usize) -> Vec<MeasurementSetting> {
    let total = 3usize.pow(n_qubits as u32);
    (0..total)
        .map(|mut idx| {
            let mut bases = vec![Basis::Z; n_qubits];
            for k in (0..n_qubits).rev() {
                bases[k] = Basis::ALL[idx % 3];
                idx /= 3;
            }
            MeasurementSetting { bases }
        })
        .collect()
}

//! Labeled qubit registers.
//!
//! Basis index convention: the leftmost label is the most significant bit, so
//! the ket `|A B a b d1 d2>` read left to right is the binary expansion of its
//! index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct QubitRegister {
    labels: Vec<String>,
}

impl QubitRegister {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Register with no qubits (dimension 1).
    pub fn empty() -> Self {
        Self { labels: Vec::new() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Bit shift of qubit `pos` inside a basis index.
    #[inline]
    pub fn shift(&self, pos: usize) -> usize {
        self.labels.len() - 1 - pos
    }

    /// Value (0 or 1) of qubit `pos` in basis index `index`.
    #[inline]
    pub fn bit(&self, index: usize, pos: usize) -> usize {
        (index >> self.shift(pos)) & 1
    }

    pub fn concat(&self, other: &QubitRegister) -> Result<QubitRegister> {
        if let Some(l) = other.labels.iter().find(|l| self.contains(l)) {
            return Err(Error::LabelCollision(l.clone()));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Ok(Self { labels })
    }

    /// Positions of `subset` in register order, validated.
    pub fn positions<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(subset.len());
        for s in subset {
            let p = self.position(s.as_ref())?;
            if out.contains(&p) {
                return Err(Error::DuplicateLabel(s.as_ref().to_string()));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Sub-register made of the given positions, in the order given.
    pub fn select(&self, positions: &[usize]) -> QubitRegister {
        Self {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }

    /// Positions not in `positions`, ascending.
    pub fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|p| !positions.contains(p)).collect()
    }

    /// Extracts the sub-index formed by the bits at `positions` (first position
    /// most significant).
    pub fn gather(&self, index: usize, positions: &[usize]) -> usize {
        positions
            .iter()
            .fold(0, |acc, &p| (acc << 1) | self.bit(index, p))
    }

    /// Inverse of [`gather`](Self::gather): writes `sub` into the bits at `positions`.
    pub fn scatter(&self, sub: usize, positions: &[usize]) -> usize {
        let k = positions.len();
        positions.iter().enumerate().fold(0, |acc, (j, &p)| {
            let b = (sub >> (k - 1 - j)) & 1;
            acc | (b << self.shift(p))
        })
    }
}

impl TryFrom<Vec<String>> for QubitRegister {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<QubitRegister> for Vec<String> {
    fn from(r: QubitRegister) -> Self {
        r.labels
    }
}

impl fmt::Display for QubitRegister {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.labels.join(","))
    }
}

//! Count data for every Pauli setting, its JSON form, and shot-noise simulation.

use std::collections::BTreeMap;
use std::path::Path;

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::settings::{all_settings, Basis, MeasurementSetting};
use crate::error::{Error, Result};
use crate::register::QubitRegister;
use crate::rng::stream_rng;
use crate::scalar::{to_f64, Real};
use crate::state::DensityMatrix;

/// Counts of one setting, outcome order as in [`MeasurementSetting::outcome_ket`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SettingCounts {
    pub bases: Vec<Basis>,
    pub counts: Vec<u64>,
}

impl SettingCounts {
    pub fn setting(&self) -> MeasurementSetting {
        MeasurementSetting::new(self.bases.clone())
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// On-disk layout:
/// `{n_qubits, shots_per_setting, seed, settings: [{bases: ["Z","X",..], counts: [..]}]}`,
/// plus an optional `labels` array naming the qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TomographyDataset {
    pub n_qubits: usize,
    pub shots_per_setting: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub settings: Vec<SettingCounts>,
}

impl TomographyDataset {
    /// Qubit labels, `q0..q{n-1}` when the dataset does not name them.
    pub fn register(&self) -> Result<QubitRegister> {
        match &self.labels {
            Some(l) => QubitRegister::new(l.clone()),
            None => QubitRegister::new((0..self.n_qubits).map(|i| format!("q{i}"))),
        }
    }

    /// Checks shapes and count bounds; field paths are named in errors.
    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::Parse("n_qubits: must be at least 1".into()));
        }
        if let Some(l) = &self.labels {
            if l.len() != self.n_qubits {
                return Err(Error::Parse(format!(
                    "labels: {} labels for n_qubits = {}",
                    l.len(),
                    self.n_qubits
                )));
            }
            QubitRegister::new(l.clone()).map_err(|e| Error::Parse(format!("labels: {e}")))?;
        }
        let outcomes = 1usize << self.n_qubits;
        for (i, s) in self.settings.iter().enumerate() {
            if s.bases.len() != self.n_qubits {
                return Err(Error::Parse(format!(
                    "settings[{i}].bases: expected {} entries, found {}",
                    self.n_qubits,
                    s.bases.len()
                )));
            }
            if s.counts.len() != outcomes {
                return Err(Error::Parse(format!(
                    "settings[{i}].counts: expected {outcomes} entries, found {}",
                    s.counts.len()
                )));
            }
            if s.total() > self.shots_per_setting {
                return Err(Error::Parse(format!(
                    "settings[{i}].counts: total {} exceeds shots_per_setting {}",
                    s.total(),
                    self.shots_per_setting
                )));
            }
        }
        Ok(())
    }

    /// Counts indexed by setting, requiring every one of the `3^n` settings
    /// exactly once.
    pub fn complete_counts(&self) -> Result<Vec<&SettingCounts>> {
        self.validate()?;
        let mut by_setting: BTreeMap<usize, &SettingCounts> = BTreeMap::new();
        for (i, s) in self.settings.iter().enumerate() {
            if by_setting.insert(s.setting().index(), s).is_some() {
                return Err(Error::Parse(format!(
                    "settings[{i}]: duplicate setting {}",
                    s.setting()
                )));
            }
        }
        let all = all_settings(self.n_qubits);
        let missing: Vec<String> = all
            .iter()
            .filter(|s| !by_setting.contains_key(&s.index()))
            .map(|s| s.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteData(format!(
                "{} of {} settings missing: {}",
                missing.len(),
                all.len(),
                missing.join(", ")
            )));
        }
        Ok(by_setting.into_values().collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let ds: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ds.validate()?;
        Ok(ds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

/// Multinomial draw of `shots` over `probs` via sequential binomials.
fn multinomial<R: rand::Rng>(rng: &mut R, shots: u64, probs: &[f64]) -> Vec<u64> {
    let mut out = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut mass: f64 = probs.iter().sum();
    for (k, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if k + 1 == probs.len() {
            out[k] = remaining;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let n = Binomial::new(remaining, q).expect("q in [0, 1]").sample(rng);
        out[k] = n;
        remaining -= n;
        mass -= p;
    }
    out
}

/// Simulates `shots_per_setting` measurements of every Pauli setting on `rho`.
///
/// Setting `i` draws from stream `i` of `seed`, so the result is identical for
/// a given seed regardless of thread count.
pub fn simulate_counts<T: Real>(rho: &DensityMatrix<T>, shots_per_setting: u64, seed: u64) -> Result<TomographyDataset> {
    if shots_per_setting == 0 {
        return Err(Error::Domain("shots_per_setting must be at least 1".into()));
    }
    let n = rho.register().len();
    let settings = all_settings(n);
    let counts: Vec<SettingCounts> = settings
        .par_iter()
        .map(|s| {
            let probs: Vec<f64> = s.probabilities(rho).into_iter().map(to_f64).collect();
            let mut rng = stream_rng(seed, s.index() as u64);
            SettingCounts {
                bases: s.bases.clone(),
                counts: multinomial(&mut rng, shots_per_setting, &probs),
            }
        })
        .collect();
    Ok(TomographyDataset {
        n_qubits: n,
        shots_per_setting,
        seed,
        labels: Some(rho.register().labels().to_vec()),
        settings: counts,
    })
}

/// Dataset whose counts are the exact Born frequencies scaled by `shots`,
/// stored as rounded integers. Used as a noiseless reference.
pub fn exact_counts<T: Real>(rho: &DensityMatrix<T>, shots: u64) -> TomographyDataset {
    let n = rho.register().len();
    let settings = all_settings(n)
        .into_iter()
        .map(|s| {
            let probs = s.probabilities(rho);
            let mut counts: Vec<u64> = probs.iter().map(|&p| (to_f64(p) * shots as f64).round() as u64).collect();
            // keep the per-setting total at or below `shots`
            while counts.iter().sum::<u64>() > shots {
                let k = (0..counts.len()).max_by_key(|&k| counts[k]).unwrap_or(0);
                counts[k] -= 1;
            }
            SettingCounts { bases: s.bases, counts }
        })
        .collect();
    TomographyDataset {
        n_qubits: n,
        shots_per_setting: shots,
        seed: 0,
        labels: Some(rho.register().labels().to_vec()),
        settings,
    }
}

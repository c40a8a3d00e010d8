//! Simulated state tomography: Pauli-setting counts with multinomial shot noise,
//! linear inversion, projection onto physical states, and Monte Carlo error
//! bars for derived irrealities.

mod dataset;
mod reconstruct;
mod settings;

pub use dataset::{exact_counts, simulate_counts, SettingCounts, TomographyDataset};
pub use reconstruct::{project_to_physical, reconstruct_linear};
pub use settings::{all_settings, Basis, MeasurementSetting};

use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::measures::irreality_value;
use crate::observable::ObservableSpec;
use crate::rng::{derive_seed, stream_rng};
use crate::scalar::{to_f64, Real};
use crate::state::DensityMatrix;

/// Largest register the end-to-end pipeline accepts by default.
pub const DEFAULT_MAX_QUBITS: usize = 4;

#[derive(Debug, Clone)]
pub struct ReconstructionResult<T: Real> {
    pub rho_linear: CMatrix<T>,
    pub rho_physical: DensityMatrix<T>,
    pub fidelity_to_truth: Option<T>,
    /// Smallest eigenvalue of the linear estimate (negative when unphysical).
    pub min_linear_eigenvalue: T,
    pub purity: T,
}

/// Linear inversion followed by projection onto the physical states.
pub fn reconstruct<T: Real>(data: &TomographyDataset) -> Result<ReconstructionResult<T>> {
    let rho_linear = reconstruct_linear::<T>(data)?;
    let min_linear_eigenvalue = linalg::eigvalsh(&rho_linear)[0];
    let rho_physical = project_to_physical(&rho_linear, data.register()?)?;
    let purity = rho_physical.purity();
    Ok(ReconstructionResult {
        rho_linear,
        rho_physical,
        fidelity_to_truth: None,
        min_linear_eigenvalue,
        purity,
    })
}

/// Simulates counts from `truth`, reconstructs, and scores the result.
pub fn tomography_end_to_end<T: Real>(truth: &DensityMatrix<T>, shots: u64, seed: u64) -> Result<ReconstructionResult<T>> {
    tomography_end_to_end_with_max(truth, shots, seed, DEFAULT_MAX_QUBITS)
}

pub fn tomography_end_to_end_with_max<T: Real>(
    truth: &DensityMatrix<T>,
    shots: u64,
    seed: u64,
    max_qubits: usize,
) -> Result<ReconstructionResult<T>> {
    let n = truth.register().len();
    if n > max_qubits {
        return Err(Error::TooLarge { qubits: n, max: max_qubits });
    }
    let data = simulate_counts(truth, shots, seed)?;
    let mut result = reconstruct::<T>(&data)?;
    result.fidelity_to_truth = Some(result.rho_physical.fidelity(truth)?);
    Ok(result)
}

/// Sample mean and standard deviation of a Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std: f64,
    pub n_resamples: usize,
}

/// Copy of `data` with every count replaced by a Poisson draw of the same mean.
pub fn poisson_resample<R: rand::Rng>(data: &TomographyDataset, rng: &mut R) -> TomographyDataset {
    let mut out = data.clone();
    for s in &mut out.settings {
        for c in &mut s.counts {
            if *c > 0 {
                let draw: f64 = Poisson::new(*c as f64).expect("positive mean").sample(rng);
                *c = draw as u64;
            }
        }
    }
    // per-setting totals now fluctuate; the bound no longer applies
    out.shots_per_setting = u64::MAX;
    out
}

/// Error bar for the irreality of `x`: each resample Poisson-perturbs the counts,
/// is reconstructed and projected to a physical state, and contributes one
/// irreality value.
pub fn monte_carlo_irreality<T: Real>(
    data: &TomographyDataset,
    x: &ObservableSpec<T>,
    n_resamples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if n_resamples < 2 {
        return Err(Error::Domain("at least two resamples are needed".into()));
    }
    data.complete_counts()?;
    let base = derive_seed(seed, 0x4d43);
    let values: Vec<f64> = (0..n_resamples)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(base, r as u64);
            let resampled = poisson_resample(data, &mut rng);
            let rec = reconstruct::<T>(&resampled)?;
            Ok(to_f64(irreality_value(&rec.rho_physical, x)?))
        })
        .collect::<Result<_>>()?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(MonteCarloEstimate {
        mean,
        std: var.sqrt(),
        n_resamples,
    })
}

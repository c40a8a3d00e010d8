//! Mach-Zehnder interferometer with optional which-path markers.
//!
//! The photon `Q` enters in `|0>`. Conventions:
//!
//! * beam splitter: `|0> -> (|0> + i|1>)/sqrt2`, `|1> -> (i|0> + |1>)/sqrt2`;
//! * mirrors swap the modes with a factor `i`, and the phase shifter multiplies
//!   the `|1>` arm by `e^{i phi}`, so `psi2 = (i e^{i phi}|1> - |0>)/sqrt2`;
//! * in the extended interferometer, markers `d1 d2` start in `|11>` and the
//!   `|0>` (`|1>`) arm flips `d1` (`d2`) right after the first beam splitter.
//!
//! The closed output is `-e^{i phi/2}(cos(phi/2)|0> + sin(phi/2)|1>)`, equal
//! to the textbook form up to the global phase.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::measures::{irreality_value, mutual_information, von_neumann_entropy};
use crate::observable::{dephasing_map, ObservableSpec};
use crate::scalar::{cplx, lit, re, Real};
use crate::state::{DensityMatrix, PureState};

pub const PHOTON: &str = "Q";
pub const MARKERS: [&str; 2] = ["d1", "d2"];

/// Number of grid points used to locate probability extrema.
pub const VISIBILITY_GRID: usize = 256;
pub const MIN_VISIBILITY_GRID: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MziConfig<T> {
    pub phi: T,
    /// Second beam splitter present.
    pub closed: bool,
    /// Which-path markers `d1 d2` present.
    pub extended: bool,
    /// Replace the photon state after the first beam splitter by its dephased
    /// (maximally mixed) version.
    pub decohere_after_first_bs: bool,
}

impl<T: Real> MziConfig<T> {
    pub fn closed(phi: T) -> Self {
        Self {
            phi,
            closed: true,
            extended: false,
            decohere_after_first_bs: false,
        }
    }

    pub fn open(phi: T) -> Self {
        Self {
            closed: false,
            ..Self::closed(phi)
        }
    }

    pub fn extended(mut self, on: bool) -> Self {
        self.extended = on;
        self
    }

    pub fn decohered(mut self, on: bool) -> Self {
        self.decohere_after_first_bs = on;
        self
    }

    pub fn with_phi(mut self, phi: T) -> Self {
        self.phi = phi;
        self
    }

    fn final_stage(&self) -> MziStage {
        if self.closed {
            MziStage::S3
        } else {
            MziStage::S2
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MziStage {
    /// Input.
    S0,
    /// After the first beam splitter (and the markers, when present).
    S1,
    /// After mirrors and phase shifter.
    S2,
    /// After the second beam splitter.
    S3,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MziOutput<T: Real> {
    Pure(PureState<T>),
    Mixed(DensityMatrix<T>),
}

impl<T: Real> MziOutput<T> {
    pub fn to_density(&self) -> DensityMatrix<T> {
        match self {
            MziOutput::Pure(p) => p.to_density(),
            MziOutput::Mixed(m) => m.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState<T>> {
        match self {
            MziOutput::Pure(p) => Some(p),
            MziOutput::Mixed(_) => None,
        }
    }

    fn apply(self, op: &CMatrix<T>, on: &[&str]) -> Result<Self> {
        Ok(match self {
            MziOutput::Pure(p) => MziOutput::Pure(p.apply(op, on)?),
            MziOutput::Mixed(m) => MziOutput::Mixed(m.apply(op, on)?),
        })
    }
}

fn beam_splitter<T: Real>() -> CMatrix<T> {
    let h = lit::<T>(0.5).sqrt();
    let i = Complex::new(T::zero(), h);
    CMatrix::from_row_slice(2, 2, &[re(h), i, i, re(h)])
}

/// Mirrors followed by the phase shifter on the `|1>` arm.
fn mirrors_and_phase<T: Real>(phi: T) -> CMatrix<T> {
    let i = cplx::<T>(0.0, 1.0);
    let e = Complex::new(phi.cos(), phi.sin());
    let zero = re(T::zero());
    CMatrix::from_row_slice(2, 2, &[zero, i, i * e, zero])
}

/// `|0>_Q` flips `d1`, `|1>_Q` flips `d2`; acts on `(Q, d1, d2)`.
fn marker_interaction<T: Real>() -> CMatrix<T> {
    let mut u = CMatrix::zeros(8, 8);
    for input in 0..8usize {
        let q = input >> 2;
        let out = if q == 0 { input ^ 0b010 } else { input ^ 0b001 };
        u[(out, input)] = re(T::one());
    }
    u
}

/// State of the interferometer at `stage`.
pub fn mzi_state<T: Real>(cfg: &MziConfig<T>, stage: MziStage) -> Result<MziOutput<T>> {
    if stage == MziStage::S3 && !cfg.closed {
        return Err(Error::Config("stage s3 needs the second beam splitter (closed = true)".into()));
    }
    let mut state = if cfg.extended {
        MziOutput::Pure(PureState::basis([PHOTON, MARKERS[0], MARKERS[1]], &[0, 1, 1])?)
    } else {
        MziOutput::Pure(PureState::basis([PHOTON], &[0])?)
    };
    if stage == MziStage::S0 {
        return Ok(state);
    }
    state = state.apply(&beam_splitter(), &[PHOTON])?;
    if cfg.decohere_after_first_bs {
        state = MziOutput::Mixed(dephasing_map(&state.to_density(), &ObservableSpec::sigma_z(PHOTON))?);
    }
    if cfg.extended {
        state = state.apply(&marker_interaction(), &[PHOTON, MARKERS[0], MARKERS[1]])?;
    }
    if stage == MziStage::S1 {
        return Ok(state);
    }
    state = state.apply(&mirrors_and_phase(cfg.phi), &[PHOTON])?;
    if stage == MziStage::S2 {
        return Ok(state);
    }
    state.apply(&beam_splitter(), &[PHOTON])
}

/// Photon state right after the first beam splitter, before any marker.
pub fn photon_after_first_bs<T: Real>(cfg: &MziConfig<T>) -> Result<DensityMatrix<T>> {
    let plain = MziConfig {
        extended: false,
        ..*cfg
    };
    Ok(mzi_state(&plain, MziStage::S1)?.to_density())
}

/// Click probabilities `(p0, p1)` of the two detectors for each phase.
pub fn detector_probabilities<T: Real>(cfg: &MziConfig<T>, phi_grid: &[T]) -> Result<Vec<(T, T)>> {
    if phi_grid.is_empty() {
        return Err(Error::Domain("phase grid is empty".into()));
    }
    phi_grid
        .iter()
        .map(|&phi| {
            let c = cfg.with_phi(phi);
            let rho = mzi_state(&c, c.final_stage())?.to_density();
            let q = if c.extended { rho.partial_trace(&[PHOTON])? } else { rho };
            let p0 = q.matrix()[(0, 0)].re.max(T::zero()).min(T::one());
            Ok((p0, T::one() - p0))
        })
        .collect()
}

/// `n` uniform phases on `[0, 2 pi)`.
pub fn phase_grid<T: Real>(n: usize) -> Vec<T> {
    (0..n)
        .map(|k| T::two_pi() * lit::<T>(k as f64) / lit::<T>(n as f64))
        .collect()
}

/// `(max p0 - min p0) / (max p0 + min p0)` over `phi_grid`.
pub fn visibility_on_grid<T: Real>(cfg: &MziConfig<T>, phi_grid: &[T]) -> Result<T> {
    if phi_grid.len() < MIN_VISIBILITY_GRID {
        return Err(Error::Domain(format!(
            "visibility needs at least {MIN_VISIBILITY_GRID} phases, got {}",
            phi_grid.len()
        )));
    }
    let probs = detector_probabilities(cfg, phi_grid)?;
    let (mut lo, mut hi) = (T::one(), T::zero());
    for (p0, _) in probs {
        lo = lo.min(p0);
        hi = hi.max(p0);
    }
    if hi + lo <= T::zero() {
        return Err(Error::UndefinedVisibility("detector never clicks".into()));
    }
    Ok(((hi - lo) / (hi + lo)).max(T::zero()).min(T::one()))
}

pub fn visibility<T: Real>(cfg: &MziConfig<T>) -> Result<T> {
    visibility_on_grid(cfg, &phase_grid(VISIBILITY_GRID))
}

#[derive(Debug, Clone)]
pub struct ExtendedReport<T: Real> {
    /// Marker state after post-selecting the photon on `|postselect>`.
    pub postselected_state: DensityMatrix<T>,
    pub probability: T,
    pub purity: T,
    /// Entropy of entanglement across `d1 | d2`: reduced-state entropy for a
    /// pure output, zero for a PPT (hence separable) mixed output, `None` for an
    /// NPT mixed output where the quantity is not defined by this report.
    pub entanglement_entropy: Option<T>,
    pub ppt_separable: bool,
    /// `I(d1 : d2)`; one bit for the classically correlated mixture.
    pub marker_mutual_information: T,
    /// Path irreality of the photon after the first beam splitter.
    pub irreality_sigma_z_at_s1: T,
}

/// Post-selects the photon on `|postselect>` at the output and characterizes
/// the marker pair.
pub fn extended_output_analysis<T: Real>(cfg: &MziConfig<T>, postselect: u8) -> Result<ExtendedReport<T>> {
    if !cfg.extended {
        return Err(Error::Config("extended output analysis needs the markers (extended = true)".into()));
    }
    if postselect > 1 {
        return Err(Error::Domain(format!("post-selection outcome {postselect} is not 0 or 1")));
    }
    let out = mzi_state(cfg, cfg.final_stage())?;
    let photon = PureState::basis([PHOTON], &[postselect])?;
    let (markers, probability) = out.to_density().post_select(&photon)?;
    let purity = markers.purity();
    let ppt_separable = markers.is_ppt(&[MARKERS[1]])?;
    let entanglement_entropy = if purity > T::one() - lit(1e-8) {
        Some(von_neumann_entropy(&markers.partial_trace(&[MARKERS[0]])?)?)
    } else if ppt_separable {
        Some(T::zero())
    } else {
        None
    };
    let marker_mutual_information = mutual_information(&markers, &[MARKERS[0]], &[MARKERS[1]])?;
    let s1 = photon_after_first_bs(cfg)?;
    let irreality_sigma_z_at_s1 = irreality_value(&s1, &ObservableSpec::sigma_z(PHOTON))?;
    Ok(ExtendedReport {
        postselected_state: markers,
        probability,
        purity,
        entanglement_entropy,
        ppt_separable,
        marker_mutual_information,
        irreality_sigma_z_at_s1,
    })
}

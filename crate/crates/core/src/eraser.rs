//! Six-qubit reality-eraser protocol.
//!
//! Register order is `A B a b d1 d2`: Alice's polarization, Bob's polarization,
//! Alice's path, Bob's Sagnac path, and the two beam-displacer markers.
//!
//! * `Psi0` is `(c|00>_AB + s|11>_AB) |00>_ab |11>_d1d2` with `c = cos(theta/2)`,
//!   `s = sin(theta/2)`.
//! * The Sagnac PBS writes Bob's polarization onto his path (`B` controls a flip
//!   of `b`), giving `Psi1`.
//! * Each beam displacer sits in one Sagnac arm: BD1 in the `b = 0` arm acting on
//!   `d1`, BD2 in the `b = 1` arm acting on `d2`. Its half-wave plate first
//!   rotates the polarization, then the displacer deviates one polarization
//!   (horizontal for BD1, vertical for BD2), which flips the marker from its
//!   undeviated value `|1>` to `|0>`. With `gamma1 = delta2 = 0` both plates are
//!   the identity and the result is `Psi2 = (c|000>_ABb |01>_d1d2 + s|111>_ABb |10>_d1d2) |0>_a`.
//! * Alice projects `(A, a)` onto `|00>` (config `Cz`) or `|+0>` (config `Cx`);
//!   Bob projects `B` onto `|+>`. What is left on `(b, d1, d2)` is the Omega state.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::measures::{entanglement_entropy, irreality};
use crate::observable::ObservableSpec;
use crate::register::QubitRegister;
use crate::scalar::{lit, re, to_f64, Real};
use crate::state::{DensityMatrix, PureState};
use crate::sweep::SweepRecord;

pub const REGISTER_LABELS: [&str; 6] = ["A", "B", "a", "b", "d1", "d2"];
pub const BOB_LABELS: [&str; 3] = ["b", "d1", "d2"];

/// Alice's configuration: which polarization eigenbasis she projects onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AliceConfig {
    Cz,
    Cx,
}

/// Which eigenvector of a two-outcome projection was kept.
///
/// For a sigma_x projection `Plus`/`Minus` are `|+>`/`|->`. For Alice's `Cz`
/// configuration they are `|0>`/`|1>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// Qubit of Bob's site whose irreality is tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "b")]
    PathB,
    #[serde(rename = "d1")]
    D1,
    #[serde(rename = "d2")]
    D2,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::PathB => "b",
            Target::D1 => "d1",
            Target::D2 => "d2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    Psi0,
    Psi1,
    Psi2,
}

/// Half-wave-plate amplitudes in front of each beam displacer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamDisplacerSettings<T> {
    pub gamma1: T,
    pub delta1: T,
    pub gamma2: T,
    pub delta2: T,
}

impl<T: Real> Default for BeamDisplacerSettings<T> {
    /// `gamma1 = delta2 = 0`.
    fn default() -> Self {
        Self {
            gamma1: T::zero(),
            delta1: T::one(),
            gamma2: T::one(),
            delta2: T::zero(),
        }
    }
}

impl<T: Real> BeamDisplacerSettings<T> {
    pub fn validate(&self) -> Result<()> {
        let tol = T::validation_tol();
        for (k, d, g) in [(1, self.delta1, self.gamma1), (2, self.delta2, self.gamma2)] {
            let n = d * d + g * g;
            if (n - T::one()).abs() > tol {
                return Err(Error::Config(format!(
                    "beam displacer {k}: |delta|^2 + |gamma|^2 = {} (must be 1)",
                    to_f64(n)
                )));
            }
        }
        Ok(())
    }

    /// Unitary on `(b, B, d1, d2)` implementing both half-wave plates and both
    /// polarization-controlled displacers.
    fn unitary(&self) -> CMatrix<T> {
        // columns are images of |0>, |1>
        let hwp1 = [[self.delta1, -self.gamma1], [self.gamma1, self.delta1]];
        let hwp2 = [[self.gamma2, self.delta2], [-self.delta2, self.gamma2]];
        let mut u = CMatrix::zeros(16, 16);
        for input in 0..16usize {
            let b = (input >> 3) & 1;
            let pol = (input >> 2) & 1;
            let d1 = (input >> 1) & 1;
            let d2 = input & 1;
            let hwp = if b == 0 { &hwp1 } else { &hwp2 };
            for out_pol in 0..2 {
                let amp = hwp[out_pol][pol];
                if amp == T::zero() {
                    continue;
                }
                let (mut e1, mut e2) = (d1, d2);
                if b == 0 && out_pol == 0 {
                    e1 ^= 1;
                }
                if b == 1 && out_pol == 1 {
                    e2 ^= 1;
                }
                let out = (b << 3) | (out_pol << 2) | (e1 << 1) | e2;
                u[(out, input)] += re(amp);
            }
        }
        u
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig<T> {
    /// Source wave-plate angle in radians, `[0, pi]`.
    pub theta: T,
    pub alice_config: AliceConfig,
    pub alice_branch: Branch,
    pub bob_branch: Branch,
    pub bd_settings: BeamDisplacerSettings<T>,
}

impl<T: Real> ProtocolConfig<T> {
    pub fn new(theta: T, alice_config: AliceConfig) -> Self {
        Self {
            theta,
            alice_config,
            alice_branch: Branch::Plus,
            bob_branch: Branch::Plus,
            bd_settings: BeamDisplacerSettings::default(),
        }
    }

    pub fn with_theta(mut self, theta: T) -> Self {
        self.theta = theta;
        self
    }

    /// `(cos(theta/2), sin(theta/2))`.
    pub fn amplitudes(&self) -> (T, T) {
        let half = self.theta / lit(2.0);
        (half.cos(), half.sin())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta >= T::zero() && self.theta <= T::pi() + T::validation_tol()) {
            return Err(Error::Config(format!("theta = {} outside [0, pi]", to_f64(self.theta))));
        }
        self.bd_settings.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolStage<T: Real> {
    pub stage: Stage,
    pub state: PureState<T>,
}

fn register() -> QubitRegister {
    QubitRegister::new(REGISTER_LABELS).expect("labels are distinct")
}

fn expect_stage<T: Real>(s: &ProtocolStage<T>, want: Stage) -> Result<()> {
    if s.stage != want || s.state.register().labels() != REGISTER_LABELS {
        return Err(Error::Domain(format!("expected a {want:?} state on A,B,a,b,d1,d2, got {:?}", s.stage)));
    }
    Ok(())
}

/// Initial six-qubit state.
pub fn build_psi0<T: Real>(cfg: &ProtocolConfig<T>) -> Result<ProtocolStage<T>> {
    cfg.validate()?;
    let (c, s) = cfg.amplitudes();
    let mut amps = CVector::zeros(64);
    amps[0b000011] = re(c);
    amps[0b110011] = re(s);
    Ok(ProtocolStage {
        stage: Stage::Psi0,
        state: PureState::new(register(), amps)?,
    })
}

/// Sagnac PBS: Bob's polarization selects his path.
pub fn evolve_to_psi1<T: Real>(psi0: &ProtocolStage<T>) -> Result<ProtocolStage<T>> {
    expect_stage(psi0, Stage::Psi0)?;
    let one = re(T::one());
    let mut cnot = CMatrix::zeros(4, 4);
    cnot[(0, 0)] = one;
    cnot[(1, 1)] = one;
    cnot[(3, 2)] = one;
    cnot[(2, 3)] = one;
    Ok(ProtocolStage {
        stage: Stage::Psi1,
        state: psi0.state.apply(&cnot, &["B", "b"])?,
    })
}

pub fn apply_beam_displacers<T: Real>(psi1: &ProtocolStage<T>, cfg: &ProtocolConfig<T>) -> Result<ProtocolStage<T>> {
    expect_stage(psi1, Stage::Psi1)?;
    cfg.bd_settings.validate()?;
    let u = cfg.bd_settings.unitary();
    Ok(ProtocolStage {
        stage: Stage::Psi2,
        state: psi1.state.apply(&u, &["b", "B", "d1", "d2"])?,
    })
}

/// Runs the unitary part of the protocol up to `stage`.
pub fn evolve<T: Real>(cfg: &ProtocolConfig<T>, stage: Stage) -> Result<ProtocolStage<T>> {
    let psi0 = build_psi0(cfg)?;
    match stage {
        Stage::Psi0 => Ok(psi0),
        Stage::Psi1 => evolve_to_psi1(&psi0),
        Stage::Psi2 => apply_beam_displacers(&evolve_to_psi1(&psi0)?, cfg),
    }
}

/// The product outcome on `(A, a, B)` kept by Alice's and Bob's projections.
pub fn projection_outcome<T: Real>(cfg: &ProtocolConfig<T>) -> Result<PureState<T>> {
    let one = re(T::one());
    let zero = re(T::zero());
    let sign = |b: Branch| if b == Branch::Plus { one } else { -one };
    let alice = match (cfg.alice_config, cfg.alice_branch) {
        (AliceConfig::Cz, Branch::Plus) => PureState::qubit("A", one, zero)?,
        (AliceConfig::Cz, Branch::Minus) => PureState::qubit("A", zero, one)?,
        (AliceConfig::Cx, b) => PureState::qubit("A", one, sign(b))?,
    };
    let path = PureState::qubit("a", one, zero)?;
    let bob = PureState::qubit("B", one, sign(cfg.bob_branch))?;
    alice.tensor(&path)?.tensor(&bob)
}

/// Pure Omega ket on `(b, d1, d2)` and its selection probability.
pub fn project_pure<T: Real>(stage: &ProtocolStage<T>, cfg: &ProtocolConfig<T>) -> Result<(PureState<T>, T)> {
    if stage.stage == Stage::Psi0 {
        return Err(Error::Domain("projections are defined on Psi1 or Psi2".into()));
    }
    let outcome = projection_outcome(cfg)?;
    stage.state.post_select(&outcome)
}

/// Omega density matrix on `(b, d1, d2)` and its selection probability.
pub fn alice_and_bob_project<T: Real>(
    stage: &ProtocolStage<T>,
    cfg: &ProtocolConfig<T>,
) -> Result<(DensityMatrix<T>, T)> {
    let (ket, p) = project_pure(stage, cfg)?;
    Ok((ket.to_density(), p))
}

/// Full pipeline for one configuration: evolve to `stage`, then project.
pub fn omega<T: Real>(cfg: &ProtocolConfig<T>, stage: Stage) -> Result<(PureState<T>, T)> {
    project_pure(&evolve(cfg, stage)?, cfg)
}

/// Analytic irreality of `target` along `theta_grid`, one record per angle in
/// grid order.
pub fn irreality_curve<T: Real>(
    template: &ProtocolConfig<T>,
    stage: Stage,
    target: Target,
    theta_grid: &[T],
) -> Result<Vec<SweepRecord>> {
    if theta_grid.is_empty() {
        return Err(Error::Domain("theta grid is empty".into()));
    }
    theta_grid
        .par_iter()
        .map(|&theta| {
            let cfg = template.with_theta(theta);
            let (ket, p) = omega(&cfg, stage)?;
            let x = ObservableSpec::sigma_z(target.label());
            let rep = irreality(&ket.to_density(), &x)?;
            Ok(SweepRecord {
                stage: stage_number(stage),
                theta: to_f64(theta),
                config: cfg.alice_config,
                target,
                irreality_analytic: to_f64(rep.irreality),
                coherence: to_f64(rep.coherence),
                discord: to_f64(rep.discord),
                selection_probability: to_f64(p),
                irreality_tomo_mean: None,
                irreality_tomo_std: None,
            })
        })
        .collect()
}

/// Entanglement entropy of an Omega ket across `b | d1 d2`.
pub fn omega_entanglement<T: Real>(ket: &PureState<T>) -> Result<T> {
    entanglement_entropy(ket, &["b"], &["d1", "d2"])
}

pub fn stage_number(stage: Stage) -> u8 {
    match stage {
        Stage::Psi0 => 0,
        Stage::Psi1 => 1,
        Stage::Psi2 => 2,
    }
}

/// Uniform grid of `n` points on `[lo, hi]` (both ends included; `n = 1` gives `lo`).
pub fn uniform_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * lit::<T>(i as f64) / lit::<T>((n - 1) as f64))
            .collect(),
    }
}

/// Default sweep grid: 41 points on `[0, pi/2]`.
pub fn default_theta_grid<T: Real>() -> Vec<T> {
    uniform_grid(T::zero(), T::frac_pi_2(), 41)
}

//! Irreality measures and a reality-eraser simulator for small qubit registers.
//!
//! All numerics are generic over a [`Real`] scalar (`f32` or `f64`); the
//! aliases at the crate root fix the precision to `f64` (or `f32` with the
//! `F32` suffix).

pub mod eraser;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod mzi;
pub mod observable;
pub mod register;
pub mod rng;
pub mod scalar;
pub mod state;
pub mod sweep;
pub mod tomography;

pub use error::{Error, Result};
pub use measures::{
    complementarity_check, correlation_bound, entanglement_entropy, irreality, mutual_information,
    von_neumann_entropy, Complementarity,
};
pub use observable::dephasing_map;
pub use register::QubitRegister;
pub use scalar::Real;
pub use sweep::SweepRecord;

pub type DensityMatrix = state::DensityMatrix<f64>;
pub type PureState = state::PureState<f64>;
pub type ObservableSpec = observable::ObservableSpec<f64>;
pub type IrrealityReport = measures::IrrealityReport<f64>;
pub type ProtocolConfig = eraser::ProtocolConfig<f64>;
pub type ProtocolStage = eraser::ProtocolStage<f64>;
pub type MziConfig = mzi::MziConfig<f64>;
pub type ReconstructionResult = tomography::ReconstructionResult<f64>;

pub type DensityMatrixF32 = state::DensityMatrix<f32>;
pub type PureStateF32 = state::PureState<f32>;
pub type ObservableSpecF32 = observable::ObservableSpec<f32>;
pub type ProtocolConfigF32 = eraser::ProtocolConfig<f32>;
pub type MziConfigF32 = mzi::MziConfig<f32>;

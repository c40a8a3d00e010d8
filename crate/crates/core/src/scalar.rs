//! Scalar abstraction shared by every numeric routine in the crate.

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// A real floating-point scalar usable as the base field of states and measures.
///
/// The associated constants carry the numerical tolerances each precision can
/// honour. `f64` uses the tight thresholds the measures are defined with;
/// `f32` gets looser ones scaled to its epsilon.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Default + Send + Sync + 'static
{
    /// Hermiticity / trace / norm / PSD validation threshold.
    const VALIDATION_TOL: f64;
    /// Post-selection probabilities below this are treated as impossible.
    const ZERO_PROBABILITY: f64;
    /// Eigenvalues below this are dropped from entropy sums.
    const EIGEN_CUTOFF: f64;

    fn validation_tol() -> Self {
        lit(Self::VALIDATION_TOL)
    }
}

impl Real for f64 {
    const VALIDATION_TOL: f64 = 1e-10;
    const ZERO_PROBABILITY: f64 = 1e-12;
    const EIGEN_CUTOFF: f64 = 1e-12;
}

impl Real for f32 {
    const VALIDATION_TOL: f64 = 1e-5;
    const ZERO_PROBABILITY: f64 = 1e-6;
    const EIGEN_CUTOFF: f64 = 1e-6;
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

/// Base-2 logarithm.
#[inline]
pub fn log2<T: Real>(x: T) -> T {
    x.ln() / T::ln_2()
}

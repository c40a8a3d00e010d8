//! Projective observables on a single qubit and the nonselective-measurement
//! (dephasing) channel they induce.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::scalar::{lit, re, to_f64, Real};
use crate::state::DensityMatrix;

/// Projective decomposition `{M_i}` of an observable on one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSpec<T: Real> {
    subsystem: String,
    projectors: Vec<CMatrix<T>>,
}

impl<T: Real> ObservableSpec<T> {
    /// Checks completeness (`sum M_i = 1`) and orthogonality (`M_i M_j = delta_ij M_i`).
    pub fn from_projectors(subsystem: impl Into<String>, projectors: Vec<CMatrix<T>>) -> Result<Self> {
        let subsystem = subsystem.into();
        let Some(first) = projectors.first() else {
            return Err(Error::Domain("observable needs at least one projector".into()));
        };
        let d = first.nrows();
        if projectors.iter().any(|p| p.nrows() != d || p.ncols() != d) {
            return Err(Error::Shape("projectors differ in shape".into()));
        }
        let tol = T::validation_tol();
        let sum = projectors.iter().fold(CMatrix::zeros(d, d), |a, p| a + p);
        if (sum - linalg::identity::<T>(d)).camax() > tol {
            return Err(Error::Domain("projectors do not sum to identity".into()));
        }
        for (i, a) in projectors.iter().enumerate() {
            for (j, b) in projectors.iter().enumerate() {
                let prod = a * b;
                let want = if i == j { a.clone() } else { CMatrix::zeros(d, d) };
                if (prod - want).camax() > tol {
                    return Err(Error::Domain(format!("projectors {i} and {j} are not orthogonal idempotents")));
                }
            }
        }
        Ok(Self { subsystem, projectors })
    }

    /// Observable whose eigenbasis is `{v0, v1}` (vectors are normalized).
    pub fn from_basis(subsystem: impl Into<String>, v0: [Complex<T>; 2], v1: [Complex<T>; 2]) -> Result<Self> {
        let proj = |v: [Complex<T>; 2]| -> Result<CMatrix<T>> {
            let v = CVector::from_vec(v.to_vec());
            let n = v.norm();
            if n <= T::zero() {
                return Err(Error::Domain("zero basis vector".into()));
            }
            Ok(linalg::outer(&(v / re(n))))
        };
        Self::from_projectors(subsystem, vec![proj(v0)?, proj(v1)?])
    }

    /// Observable with eigenvector along the Bloch direction `(theta, phi)`.
    pub fn bloch(subsystem: impl Into<String>, theta: T, phi: T) -> Result<Self> {
        let half = theta / lit(2.0);
        let e = Complex::new(phi.cos(), phi.sin());
        let v0 = [re(half.cos()), e * half.sin()];
        let v1 = [re(-half.sin()), e * half.cos()];
        Self::from_basis(subsystem, v0, v1)
    }

    pub fn sigma_z(subsystem: impl Into<String>) -> Self {
        Self::from_basis(subsystem, [re(T::one()), re(T::zero())], [re(T::zero()), re(T::one())])
            .expect("computational basis is orthonormal")
    }

    pub fn sigma_x(subsystem: impl Into<String>) -> Self {
        let one = re(T::one());
        Self::from_basis(subsystem, [one, one], [one, -one]).expect("sigma_x basis is orthonormal")
    }

    pub fn sigma_y(subsystem: impl Into<String>) -> Self {
        let one = re(T::one());
        let i = Complex::new(T::zero(), T::one());
        Self::from_basis(subsystem, [one, i], [one, -i]).expect("sigma_y basis is orthonormal")
    }

    /// The mutually unbiased partner of a two-outcome qubit observable: the
    /// basis `{(v0 + v1)/sqrt2, (v0 - v1)/sqrt2}`.
    pub fn conjugate(&self) -> Result<Self> {
        if self.projectors.len() != 2 || self.projectors[0].nrows() != 2 {
            return Err(Error::Domain("conjugate basis is defined for two-outcome qubit observables".into()));
        }
        let vec_of = |p: &CMatrix<T>| -> CVector<T> {
            let (_, vecs) = linalg::eigh(p);
            vecs.column(1).into_owned()
        };
        let a = vec_of(&self.projectors[0]);
        let b = vec_of(&self.projectors[1]);
        let s = &a + &b;
        let d = &a - &b;
        Self::from_basis(self.subsystem.clone(), [s[0], s[1]], [d[0], d[1]])
    }

    pub fn subsystem(&self) -> &str {
        &self.subsystem
    }

    pub fn projectors(&self) -> &[CMatrix<T>] {
        &self.projectors
    }

    /// Same observable relabeled onto another subsystem.
    pub fn on(&self, subsystem: impl Into<String>) -> Self {
        Self {
            subsystem: subsystem.into(),
            projectors: self.projectors.clone(),
        }
    }
}

/// Nonselective measurement `sum_i (M_i ⊗ 1) rho (M_i ⊗ 1)`.
pub fn dephasing_map<T: Real>(rho: &DensityMatrix<T>, x: &ObservableSpec<T>) -> Result<DensityMatrix<T>> {
    if !rho.register().contains(x.subsystem()) {
        return Err(Error::UnknownLabel(x.subsystem().to_string()));
    }
    let out = rho.apply_kraus(x.projectors(), &[x.subsystem()])?;
    let tr = linalg::trace(out.matrix()).re;
    debug_assert!(
        (tr - T::one()).abs() < lit(1e-6),
        "dephasing lost trace: {}",
        to_f64(tr)
    );
    Ok(out)
}

//! Pure and mixed states over labeled qubit registers.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::register::QubitRegister;
use crate::scalar::{lit, re, to_f64, Real};

/// Normalized ket on a labeled register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    register: QubitRegister,
    amplitudes: CVector<T>,
}

/// Trace-one, Hermitian, positive-semidefinite matrix on a labeled register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    register: QubitRegister,
    entries: CMatrix<T>,
}

/// Full-register operator built from `op` acting on the qubits at `positions`
/// (first position = most significant bit of `op`'s index).
pub fn embed<T: Real>(op: &CMatrix<T>, positions: &[usize], reg: &QubitRegister) -> CMatrix<T> {
    let dim = reg.dim();
    let rest = reg.complement(positions);
    CMatrix::from_fn(dim, dim, |i, j| {
        if reg.gather(i, &rest) != reg.gather(j, &rest) {
            Complex::new(T::zero(), T::zero())
        } else {
            op[(reg.gather(i, positions), reg.gather(j, positions))]
        }
    })
}

fn check_op_size<T: Real>(op: &CMatrix<T>, qubits: usize) -> Result<()> {
    let d = 1usize << qubits;
    if op.nrows() != d || op.ncols() != d {
        return Err(Error::Shape(format!(
            "operator is {}x{}, expected {d}x{d} for {qubits} qubit(s)",
            op.nrows(),
            op.ncols()
        )));
    }
    Ok(())
}

impl<T: Real> PureState<T> {
    /// Validates length and unit norm.
    pub fn new(register: QubitRegister, amplitudes: CVector<T>) -> Result<Self> {
        if amplitudes.len() != register.dim() {
            return Err(Error::Shape(format!(
                "{} amplitudes for register {register} of dimension {}",
                amplitudes.len(),
                register.dim()
            )));
        }
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > T::validation_tol() {
            return Err(Error::InvalidState(format!("norm is {}", to_f64(norm))));
        }
        Ok(Self { register, amplitudes })
    }

    /// Normalizes `amplitudes` before validating.
    pub fn normalized(register: QubitRegister, amplitudes: CVector<T>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm <= T::zero() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new(register, amplitudes / re(norm))
    }

    /// Computational basis state; `bits` lists one bit per label in register order.
    pub fn basis<S: Into<String>>(labels: impl IntoIterator<Item = S>, bits: &[u8]) -> Result<Self> {
        let register = QubitRegister::new(labels)?;
        if bits.len() != register.len() {
            return Err(Error::Shape(format!(
                "{} bits for {} labels",
                bits.len(),
                register.len()
            )));
        }
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        let mut amps = CVector::zeros(register.dim());
        amps[index] = re(T::one());
        Ok(Self { register, amplitudes: amps })
    }

    /// Single-qubit state `a|0> + b|1>` (normalized on construction).
    pub fn qubit(label: &str, a: Complex<T>, b: Complex<T>) -> Result<Self> {
        Self::normalized(QubitRegister::new([label])?, CVector::from_vec(vec![a, b]))
    }

    pub fn register(&self) -> &QubitRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn tensor(&self, other: &PureState<T>) -> Result<PureState<T>> {
        let register = self.register.concat(&other.register)?;
        Ok(Self {
            register,
            amplitudes: linalg::kron_vec(&self.amplitudes, &other.amplitudes),
        })
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix {
            register: self.register.clone(),
            entries: linalg::outer(&self.amplitudes),
        }
    }

    pub fn inner(&self, other: &PureState<T>) -> Result<Complex<T>> {
        if self.register != other.register {
            return Err(Error::Shape(format!(
                "registers {} and {} differ",
                self.register, other.register
            )));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|<self|other>|^2`, the fidelity of two pure states.
    pub fn overlap_probability(&self, other: &PureState<T>) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Applies a unitary acting on `on`; unitarity is checked.
    pub fn apply<S: AsRef<str>>(&self, op: &CMatrix<T>, on: &[S]) -> Result<PureState<T>> {
        check_op_size(op, on.len())?;
        let dev = (op.adjoint() * op - linalg::identity::<T>(op.nrows())).norm();
        if dev > T::validation_tol() * lit(10.0) {
            return Err(Error::Domain(format!("operator is not unitary (deviation {})", to_f64(dev))));
        }
        let pos = self.register.positions(on)?;
        let full = embed(op, &pos, &self.register);
        Ok(Self {
            register: self.register.clone(),
            amplitudes: full * &self.amplitudes,
        })
    }

    /// Applies a full-register unitary.
    pub fn apply_full(&self, u: &CMatrix<T>) -> Result<PureState<T>> {
        let labels: Vec<&str> = self.register.labels().iter().map(String::as_str).collect();
        self.apply(u, &labels)
    }

    /// Projects the qubits named by `outcome`'s register onto `outcome` and
    /// returns the normalized conditional state of the remaining qubits with
    /// the selection probability.
    pub fn post_select(&self, outcome: &PureState<T>) -> Result<(PureState<T>, T)> {
        self.post_select_with(outcome, lit(T::ZERO_PROBABILITY))
    }

    pub fn post_select_with(&self, outcome: &PureState<T>, threshold: T) -> Result<(PureState<T>, T)> {
        let reg = &self.register;
        let on = reg.positions(outcome.register.labels())?;
        let rest = reg.complement(&on);
        if rest.is_empty() {
            return Err(Error::Domain("post-selection must leave at least one qubit".into()));
        }
        let rest_reg = reg.select(&rest);
        let mut chi = CVector::zeros(rest_reg.dim());
        for r in 0..rest_reg.dim() {
            let base = reg.scatter(r, &rest);
            let mut acc = Complex::new(T::zero(), T::zero());
            for s in 0..outcome.register.dim() {
                acc += outcome.amplitudes[s].conj() * self.amplitudes[base | reg.scatter(s, &on)];
            }
            chi[r] = acc;
        }
        let p = chi.norm_squared();
        if p < threshold {
            return Err(Error::ZeroProbability {
                probability: to_f64(p),
                threshold: to_f64(threshold),
            });
        }
        let state = Self {
            register: rest_reg,
            amplitudes: chi / re(p.sqrt()),
        };
        Ok((state, p))
    }

    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix<T>> {
        self.to_density().partial_trace(keep)
    }

    /// Multiplies by a global phase `e^{i phase}`.
    pub fn with_global_phase(&self, phase: T) -> PureState<T> {
        let f = Complex::new(phase.cos(), phase.sin());
        Self {
            register: self.register.clone(),
            amplitudes: &self.amplitudes * f,
        }
    }
}

impl<T: Real> DensityMatrix<T> {
    /// Validates the density-matrix invariants at the precision's default tolerance.
    pub fn new(register: QubitRegister, entries: CMatrix<T>) -> Result<Self> {
        Self::with_tolerance(register, entries, T::validation_tol())
    }

    pub fn with_tolerance(register: QubitRegister, entries: CMatrix<T>, tol: T) -> Result<Self> {
        let dim = register.dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::Shape(format!(
                "{}x{} matrix for register {register} of dimension {dim}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = linalg::hermitian_deviation(&entries);
        if herm > tol {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {})", to_f64(herm))));
        }
        let tr = linalg::trace(&entries).re;
        if (tr - T::one()).abs() > tol {
            return Err(Error::InvalidState(format!("trace is {}", to_f64(tr))));
        }
        let entries = linalg::hermitize(&entries);
        let min = linalg::eigvalsh(&entries)[0];
        if min < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {}", to_f64(min))));
        }
        Ok(Self { register, entries })
    }

    /// Crate-internal constructor for results of trace- and positivity-preserving
    /// maps; re-Hermitizes the input.
    pub(crate) fn from_channel_output(register: QubitRegister, entries: CMatrix<T>) -> Self {
        Self {
            register,
            entries: linalg::hermitize(&entries),
        }
    }

    pub fn maximally_mixed<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let register = QubitRegister::new(labels)?;
        let d = register.dim();
        let entries = linalg::identity::<T>(d) * re(T::one() / lit::<T>(d as f64));
        Ok(Self { register, entries })
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal<S: Into<String>>(labels: impl IntoIterator<Item = S>, probs: &[T]) -> Result<Self> {
        let register = QubitRegister::new(labels)?;
        if probs.len() != register.dim() {
            return Err(Error::Shape(format!("{} probabilities for dimension {}", probs.len(), register.dim())));
        }
        let entries = CMatrix::from_fn(probs.len(), probs.len(), |i, j| {
            if i == j {
                re(probs[i])
            } else {
                Complex::new(T::zero(), T::zero())
            }
        });
        Self::new(register, entries)
    }

    /// Convex combination `p * self + (1 - p) * other`.
    pub fn mix(&self, other: &DensityMatrix<T>, p: T) -> Result<DensityMatrix<T>> {
        if self.register != other.register {
            return Err(Error::Shape(format!("registers {} and {} differ", self.register, other.register)));
        }
        if p < T::zero() || p > T::one() {
            return Err(Error::Domain("mixing weight outside [0, 1]".into()));
        }
        let entries = &self.entries * re(p) + &other.entries * re(T::one() - p);
        Ok(Self::from_channel_output(self.register.clone(), entries))
    }

    pub fn register(&self) -> &QubitRegister {
        &self.register
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.register.dim()
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        linalg::eigvalsh(&self.entries)
    }

    pub fn tensor(&self, other: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        let register = self.register.concat(&other.register)?;
        Ok(Self {
            register,
            entries: linalg::kron(&self.entries, &other.entries),
        })
    }

    /// Reduced state on `keep`; kept qubits stay in register order.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix<T>> {
        if keep.is_empty() {
            return Err(Error::Domain("partial trace needs a nonempty keep set".into()));
        }
        let reg = &self.register;
        let mut kept = reg.positions(keep)?;
        kept.sort_unstable();
        let traced = reg.complement(&kept);
        let out_reg = reg.select(&kept);
        let dk = out_reg.dim();
        let dt = 1usize << traced.len();
        let mut out = CMatrix::zeros(dk, dk);
        for i in 0..dk {
            let bi = reg.scatter(i, &kept);
            for j in 0..dk {
                let bj = reg.scatter(j, &kept);
                let mut acc = Complex::new(T::zero(), T::zero());
                for t in 0..dt {
                    let bt = reg.scatter(t, &traced);
                    acc += self.entries[(bi | bt, bj | bt)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self::from_channel_output(out_reg, out))
    }

    /// `O rho O†` for an arbitrary operator acting on `on`; no renormalization.
    fn conjugate_by(&self, op: &CMatrix<T>, on: &[usize]) -> CMatrix<T> {
        let full = embed(op, on, &self.register);
        &full * &self.entries * full.adjoint()
    }

    /// Applies a unitary acting on `on`.
    pub fn apply<S: AsRef<str>>(&self, op: &CMatrix<T>, on: &[S]) -> Result<DensityMatrix<T>> {
        check_op_size(op, on.len())?;
        let dev = (op.adjoint() * op - linalg::identity::<T>(op.nrows())).norm();
        if dev > T::validation_tol() * lit(10.0) {
            return Err(Error::Domain(format!("operator is not unitary (deviation {})", to_f64(dev))));
        }
        let pos = self.register.positions(on)?;
        Ok(Self::from_channel_output(self.register.clone(), self.conjugate_by(op, &pos)))
    }

    /// Sum of `K rho K†` over Kraus operators acting on `on`.
    pub fn apply_kraus<S: AsRef<str>>(&self, kraus: &[CMatrix<T>], on: &[S]) -> Result<DensityMatrix<T>> {
        let pos = self.register.positions(on)?;
        let mut acc = CMatrix::zeros(self.dim(), self.dim());
        for k in kraus {
            check_op_size(k, on.len())?;
            acc += self.conjugate_by(k, &pos);
        }
        Ok(Self::from_channel_output(self.register.clone(), acc))
    }

    /// Conditional state after projecting the qubits of `outcome`'s register
    /// onto `outcome`, plus the selection probability.
    pub fn post_select(&self, outcome: &PureState<T>) -> Result<(DensityMatrix<T>, T)> {
        self.post_select_with(outcome, lit(T::ZERO_PROBABILITY))
    }

    pub fn post_select_with(&self, outcome: &PureState<T>, threshold: T) -> Result<(DensityMatrix<T>, T)> {
        let reg = &self.register;
        let on = reg.positions(outcome.register().labels())?;
        let rest = reg.complement(&on);
        if rest.is_empty() {
            return Err(Error::Domain("post-selection must leave at least one qubit".into()));
        }
        let rest_reg = reg.select(&rest);
        let dr = rest_reg.dim();
        let ds = outcome.register().dim();
        let phi = outcome.amplitudes();
        let mut out = CMatrix::zeros(dr, dr);
        for r in 0..dr {
            let br = reg.scatter(r, &rest);
            for c in 0..dr {
                let bc = reg.scatter(c, &rest);
                let mut acc = Complex::new(T::zero(), T::zero());
                for s in 0..ds {
                    let bs = reg.scatter(s, &on);
                    for s2 in 0..ds {
                        let bs2 = reg.scatter(s2, &on);
                        acc += phi[s].conj() * self.entries[(br | bs, bc | bs2)] * phi[s2];
                    }
                }
                out[(r, c)] = acc;
            }
        }
        let p = linalg::trace(&out).re;
        if p < threshold {
            return Err(Error::ZeroProbability {
                probability: to_f64(p),
                threshold: to_f64(threshold),
            });
        }
        Ok((Self::from_channel_output(rest_reg, out / re(p)), p))
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> T {
        // Tr(rho rho) = sum |rho_ij|^2 for Hermitian rho
        self.entries.iter().fold(T::zero(), |a, z| a + z.norm_sqr())
    }

    /// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
    pub fn fidelity(&self, other: &DensityMatrix<T>) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "fidelity of {0}x{0} and {1}x{1} matrices",
                self.dim(),
                other.dim()
            )));
        }
        let s = linalg::sqrt_psd(&self.entries);
        let inner = &s * &other.entries * &s;
        let root_sum = linalg::eigvalsh(&inner)
            .into_iter()
            .fold(T::zero(), |a, v| a + v.max(T::zero()).sqrt());
        Ok((root_sum * root_sum).min(T::one()))
    }

    /// Partial transpose with respect to the qubits in `labels`.
    pub fn partial_transpose<S: AsRef<str>>(&self, labels: &[S]) -> Result<CMatrix<T>> {
        let reg = &self.register;
        let pos = reg.positions(labels)?;
        let d = self.dim();
        Ok(CMatrix::from_fn(d, d, |i, j| {
            let si = reg.gather(i, &pos);
            let sj = reg.gather(j, &pos);
            let clear = !reg.scatter((1 << pos.len()) - 1, &pos);
            let i2 = (i & clear) | reg.scatter(sj, &pos);
            let j2 = (j & clear) | reg.scatter(si, &pos);
            self.entries[(i2, j2)]
        }))
    }

    /// Positive-partial-transpose test on the bipartition `labels | rest`.
    /// For two qubits this is equivalent to separability.
    pub fn is_ppt<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        let pt = self.partial_transpose(labels)?;
        Ok(linalg::eigvalsh(&pt)[0] >= -T::validation_tol())
    }

    /// Converts to another precision.
    pub fn cast<U: Real>(&self) -> DensityMatrix<U> {
        DensityMatrix {
            register: self.register.clone(),
            entries: self.entries.map(|z| Complex::new(lit(to_f64(z.re)), lit(to_f64(z.im)))),
        }
    }

    pub fn to_serializable(&self) -> MatrixJson {
        let d = self.dim();
        MatrixJson {
            labels: self.register.labels().to_vec(),
            real: (0..d).map(|i| (0..d).map(|j| to_f64(self.entries[(i, j)].re)).collect()).collect(),
            imag: (0..d).map(|i| (0..d).map(|j| to_f64(self.entries[(i, j)].im)).collect()).collect(),
        }
    }
}

/// JSON form of a density matrix: real and imaginary parts as nested row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<String>,
    pub real: Vec<Vec<f64>>,
    pub imag: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn to_density<T: Real>(&self) -> Result<DensityMatrix<T>> {
        let register = QubitRegister::new(self.labels.clone())?;
        let d = register.dim();
        let ok = self.real.len() == d
            && self.imag.len() == d
            && self.real.iter().chain(self.imag.iter()).all(|r| r.len() == d);
        if !ok {
            return Err(Error::Shape(format!("matrix JSON is not {d}x{d}")));
        }
        let m = CMatrix::from_fn(d, d, |i, j| Complex::new(lit(self.real[i][j]), lit(self.imag[i][j])));
        DensityMatrix::new(register, m)
    }
}

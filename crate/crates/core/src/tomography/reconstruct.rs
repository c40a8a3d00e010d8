//! Linear-inversion reconstruction and restoration of physicality.

use nalgebra::Complex;

use super::dataset::{SettingCounts, TomographyDataset};
use super::settings::Basis;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::register::QubitRegister;
use crate::scalar::{lit, re, to_f64, Real};
use crate::state::DensityMatrix;

/// Pauli operator label for one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pauli {
    I,
    X,
    Y,
    Z,
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

impl Pauli {
    fn basis(self) -> Option<Basis> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(Basis::X),
            Pauli::Y => Some(Basis::Y),
            Pauli::Z => Some(Basis::Z),
        }
    }
}

fn pauli_string(mut idx: usize, n: usize) -> Vec<Pauli> {
    let mut out = vec![Pauli::I; n];
    for k in (0..n).rev() {
        out[k] = PAULIS[idx % 4];
        idx /= 4;
    }
    out
}

/// Estimates `<P>` for a Pauli string by pooling every setting that measures
/// each non-identity factor in its own basis.
fn expectation(paulis: &[Pauli], data: &[&SettingCounts]) -> Result<f64> {
    let n = paulis.len();
    let mask: usize = paulis
        .iter()
        .enumerate()
        .filter(|(_, p)| **p != Pauli::I)
        .fold(0, |m, (k, _)| m | (1 << (n - 1 - k)));
    if mask == 0 {
        return Ok(1.0);
    }
    let mut signed = 0.0f64;
    let mut total = 0u64;
    for s in data {
        let compatible = paulis
            .iter()
            .zip(&s.bases)
            .all(|(p, b)| p.basis().is_none_or(|pb| pb == *b));
        if !compatible {
            continue;
        }
        for (o, &c) in s.counts.iter().enumerate() {
            let parity = (o & mask).count_ones() & 1;
            signed += if parity == 0 { c as f64 } else { -(c as f64) };
        }
        total += s.total();
    }
    if total == 0 {
        return Err(Error::IncompleteData("no counts for a required Pauli expectation".into()));
    }
    Ok(signed / total as f64)
}

/// `2^-n sum_P <P> P` over all `4^n` Pauli strings, from the dataset's
/// frequencies. Trace one by construction; may have negative eigenvalues.
pub fn reconstruct_linear<T: Real>(data: &TomographyDataset) -> Result<CMatrix<T>> {
    let counts = data.complete_counts()?;
    let n = data.n_qubits;
    let d = 1usize << n;
    let mut rho = CMatrix::<T>::zeros(d, d);
    let norm = 1.0 / d as f64;
    for idx in 0..4usize.pow(n as u32) {
        let ps = pauli_string(idx, n);
        let e = expectation(&ps, &counts)?;
        if e == 0.0 {
            continue;
        }
        let xmask = ps
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, Pauli::X | Pauli::Y))
            .fold(0usize, |m, (k, _)| m | (1 << (n - 1 - k)));
        for r in 0..d {
            let c = r ^ xmask;
            // <r| P |c> as a product of single-qubit entries
            let mut phase = Complex::new(1.0f64, 0.0);
            for (k, p) in ps.iter().enumerate() {
                let rk = (r >> (n - 1 - k)) & 1;
                match p {
                    Pauli::I | Pauli::X => {}
                    Pauli::Y => phase *= if rk == 0 { Complex::new(0.0, -1.0) } else { Complex::new(0.0, 1.0) },
                    Pauli::Z => {
                        if rk == 1 {
                            phase = -phase;
                        }
                    }
                }
            }
            let v = phase * (e * norm);
            rho[(r, c)] += Complex::new(lit::<T>(v.re), lit::<T>(v.im));
        }
    }
    Ok(rho)
}

/// Nearest density matrix by eigenvalue clipping with redistribution.
///
/// Eigenvalues are sorted in descending order; starting from the smallest,
/// each one whose value plus its share of the accumulated deficit is negative
/// is set to zero and its value added to the deficit. The remaining deficit is
/// spread evenly over the surviving eigenvalues. Eigenvectors are kept.
pub fn project_to_physical<T: Real>(matrix: &CMatrix<T>, register: QubitRegister) -> Result<DensityMatrix<T>> {
    let h = linalg::hermitize(matrix);
    let tr = linalg::trace(&h).re;
    if tr <= T::zero() {
        return Err(Error::InvalidState(format!("non-positive trace {}", to_f64(tr))));
    }
    let h = h / re(tr);
    let (mut vals, vecs) = linalg::eigh(&h);
    // eigh returns ascending order; walk from the smallest
    let d = vals.len();
    let mut deficit = T::zero();
    let mut remaining = d;
    for v in vals.iter_mut() {
        let share = deficit / lit::<T>(remaining as f64);
        if *v + share < T::zero() {
            deficit += *v;
            *v = T::zero();
            remaining -= 1;
        } else {
            break;
        }
    }
    if remaining > 0 {
        let share = deficit / lit::<T>(remaining as f64);
        for v in vals.iter_mut().skip(d - remaining) {
            *v += share;
        }
    }
    let rho = linalg::from_spectrum(&vals, &vecs);
    DensityMatrix::with_tolerance(register, rho, T::validation_tol() * lit(100.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use crate::tomography::dataset::exact_counts;

    #[test]
    fn redistribution_hand_example() {
        let reg = QubitRegister::new(["q"]).unwrap();
        let m = CMatrix::from_row_slice(2, 2, &[cplx(1.1, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(-0.1, 0.0)]);
        let p = project_to_physical::<f64>(&m, reg).unwrap();
        assert!((p.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(p.matrix()[(1, 1)].re.abs() < 1e-12);
    }

    #[test]
    fn redistribution_spreads_deficit() {
        // eigenvalues (0.6, 0.5, -0.1): -0.1 clipped, 0.05 removed from each survivor
        let reg = QubitRegister::new(["a", "b"]).unwrap();
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            cplx(0.6, 0.0),
            cplx(0.5, 0.0),
            cplx(-0.1, 0.0),
            cplx(0.0, 0.0),
        ]));
        let p = project_to_physical::<f64>(&m, reg).unwrap();
        let mut diag: Vec<f64> = (0..4).map(|i| p.matrix()[(i, i)].re).collect();
        diag.sort_by(|a, b| b.partial_cmp(a).unwrap());
        // -0.1 then 0 + (-0.1/3) < 0 are clipped, leaving (0.6, 0.5) - 0.05 each
        assert!((diag[0] - 0.55).abs() < 1e-12, "{diag:?}");
        assert!((diag[1] - 0.45).abs() < 1e-12, "{diag:?}");
        assert!(diag[2].abs() < 1e-12 && diag[3].abs() < 1e-12);
    }

    #[test]
    fn single_qubit_zero_state() {
        let zero = crate::state::PureState::<f64>::basis(["q"], &[0]).unwrap().to_density();
        let ds = exact_counts(&zero, 1000);
        let r = reconstruct_linear::<f64>(&ds).unwrap();
        assert!((r[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(r[(1, 1)].norm() < 1e-12);
    }
}

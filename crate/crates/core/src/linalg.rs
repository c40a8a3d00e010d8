//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::scalar::{lit, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// `(m + m†) / 2`.
pub fn hermitize<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    let half = Complex::new(lit::<T>(0.5), T::zero());
    (m + m.adjoint()) * half
}

/// Largest absolute entry of `m - m†`.
pub fn hermitian_deviation<T: Real>(m: &CMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm_sqr().sqrt();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> Complex<T> {
    m.diagonal().iter().fold(Complex::new(T::zero(), T::zero()), |a, &b| a + b)
}

/// Eigen-decomposition of the Hermitian part of `m`; eigenvalues ascending,
/// eigenvectors in the columns of the returned matrix, in the same order.
pub fn eigh<T: Real>(m: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let eig = SymmetricEigen::new(hermitize(m));
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

pub fn eigvalsh<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    eigh(m).0
}

/// `V diag(vals) V†`.
pub fn from_spectrum<T: Real>(vals: &[T], vecs: &CMatrix<T>) -> CMatrix<T> {
    let n = vals.len();
    let scaled = CMatrix::from_fn(n, n, |r, c| vecs[(r, c)] * vals[c]);
    hermitize(&(scaled * vecs.adjoint()))
}

/// Principal square root of a PSD matrix (negative eigenvalues clipped to zero).
pub fn sqrt_psd<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    let (vals, vecs) = eigh(m);
    let roots: Vec<T> = vals.iter().map(|&v| v.max(T::zero()).sqrt()).collect();
    from_spectrum(&roots, &vecs)
}

/// Kronecker product, first factor on the most significant bits.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn kron_vec<T: Real>(a: &CVector<T>, b: &CVector<T>) -> CVector<T> {
    a.kronecker(b)
}

pub fn outer<T: Real>(v: &CVector<T>) -> CMatrix<T> {
    v * v.adjoint()
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

/// Shannon entropy in bits of a list of eigenvalues, ignoring values at or below `cutoff`.
pub fn entropy_bits<T: Real>(vals: &[T], cutoff: T) -> T {
    vals.iter()
        .filter(|&&p| p > cutoff)
        .fold(T::zero(), |acc, &p| acc - p * crate::scalar::log2(p))
}

/// Binary entropy `H(p)` in bits.
pub fn binary_entropy<T: Real>(p: T) -> T {
    let q = T::one() - p;
    entropy_bits(&[p, q], T::zero())
}

//! Random test objects built from raw proptest-generated numbers.
#![allow(dead_code)]

use nalgebra::Complex;
use proptest::prelude::*;
use realitysim::linalg::{CMatrix, CVector};
use realitysim::{DensityMatrix, PureState, QubitRegister};

pub const LABELS: [&str; 3] = ["a", "b", "c"];

pub fn labels(n: usize) -> &'static [&'static str] {
    &LABELS[..n]
}

/// `G G† / Tr` for a `d x k` complex `G` read from `raw` (re, im pairs).
pub fn density_from(raw: &[f64], n: usize) -> DensityMatrix {
    let d = 1usize << n;
    let k = raw.len() / (2 * d);
    let g = CMatrix::from_fn(d, k, |r, c| {
        let i = 2 * (r * k + c);
        Complex::new(raw[i], raw[i + 1])
    });
    let mut m = &g * g.adjoint();
    let tr: f64 = (0..d).map(|i| m[(i, i)].re).sum();
    m /= Complex::new(tr, 0.0);
    let m = (&m + m.adjoint()) * Complex::new(0.5, 0.0);
    DensityMatrix::new(QubitRegister::new(labels(n).iter().copied()).unwrap(), m).unwrap()
}

pub fn pure_from(raw: &[f64], n: usize) -> PureState {
    let d = 1usize << n;
    let v = CVector::from_fn(d, |i, _| Complex::new(raw[2 * i], raw[2 * i + 1]));
    PureState::normalized(QubitRegister::new(labels(n).iter().copied()).unwrap(), v).unwrap()
}

/// `Rz(a) Ry(b) Rz(c)`.
pub fn unitary(a: f64, b: f64, c: f64) -> CMatrix<f64> {
    let rz = |t: f64| {
        CMatrix::from_row_slice(
            2,
            2,
            &[Complex::from_polar(1.0, -t / 2.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::from_polar(1.0, t / 2.0)],
        )
    };
    let (cb, sb) = ((b / 2.0).cos(), (b / 2.0).sin());
    let ry = CMatrix::from_row_slice(2, 2, &[Complex::new(cb, 0.0), Complex::new(-sb, 0.0), Complex::new(sb, 0.0), Complex::new(cb, 0.0)]);
    rz(a) * ry * rz(c)
}

fn nonzero(v: &[f64]) -> bool {
    v.iter().any(|x| x.abs() > 1e-3)
}

/// `(n, raw)` for a mixed state of random rank on `n` qubits.
pub fn mixed_raw(min_n: usize, max_n: usize) -> impl Strategy<Value = (usize, Vec<f64>)> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let d = 1usize << n;
            (Just(n), (1..=d).prop_flat_map(move |k| prop::collection::vec(-1.0f64..1.0, 2 * d * k)))
        })
        .prop_filter("zero matrix", |(_, v)| nonzero(v))
}

pub fn pure_raw(min_n: usize, max_n: usize) -> impl Strategy<Value = (usize, Vec<f64>)> {
    (min_n..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-1.0f64..1.0, 2 << n)))
        .prop_filter("zero vector", |(_, v)| nonzero(v))
}

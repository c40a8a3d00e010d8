//! Entropic quantities: von Neumann entropy, irreality and its split into
//! coherence and discord, mutual information, entanglement entropy, and the
//! complementarity bound for two conjugate observables.

use crate::error::{Error, Result};
use crate::linalg;
use crate::observable::{dephasing_map, ObservableSpec};
use crate::scalar::{lit, to_f64, Real};
use crate::state::{DensityMatrix, PureState};

/// Irreality of one observable together with its coherence and discord parts (bits).
#[derive(Debug, Clone, PartialEq)]
pub struct IrrealityReport<T: Real> {
    pub irreality: T,
    pub coherence: T,
    pub discord: T,
    pub observable: ObservableSpec<T>,
}

/// `S(rho) = -Tr(rho log2 rho)` in bits.
///
/// Eigenvalues in `[-VALIDATION_TOL, EIGEN_CUTOFF)` count as zero; anything more
/// negative is reported as an invalid state.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let vals = rho.eigenvalues();
    if let Some(&min) = vals.first() {
        if min < -T::validation_tol() {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {} in entropy",
                to_f64(min)
            )));
        }
    }
    Ok(linalg::entropy_bits(&vals, lit(T::EIGEN_CUTOFF)).max(T::zero()))
}

/// `S(Phi_X(rho)) - S(rho)`, clamped at zero against round-off.
fn entropy_increase<T: Real>(rho: &DensityMatrix<T>, x: &ObservableSpec<T>) -> Result<T> {
    let dephased = dephasing_map(rho, x)?;
    let inc = von_neumann_entropy(&dephased)? - von_neumann_entropy(rho)?;
    Ok(inc.max(T::zero()))
}

/// Irreality of `x` on `rho`, with the coherence of the measured subsystem's
/// reduced state and the discord remainder.
pub fn irreality<T: Real>(rho: &DensityMatrix<T>, x: &ObservableSpec<T>) -> Result<IrrealityReport<T>> {
    let total = entropy_increase(rho, x)?;
    let reduced = rho.partial_trace(&[x.subsystem()])?;
    let coherence = entropy_increase(&reduced, x)?;
    Ok(IrrealityReport {
        irreality: total,
        coherence,
        discord: total - coherence,
        observable: x.clone(),
    })
}

/// Irreality value alone.
pub fn irreality_value<T: Real>(rho: &DensityMatrix<T>, x: &ObservableSpec<T>) -> Result<T> {
    entropy_increase(rho, x)
}

fn check_partition<T: Real, S: AsRef<str>>(rho: &DensityMatrix<T>, a: &[S], b: &[S]) -> Result<()> {
    let reg = rho.register();
    let mut seen: Vec<&str> = Vec::new();
    for l in a.iter().chain(b.iter()) {
        let l = l.as_ref();
        if !reg.contains(l) {
            return Err(Error::UnknownLabel(l.to_string()));
        }
        if seen.contains(&l) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
        seen.push(l);
    }
    if seen.len() != reg.len() || a.is_empty() || b.is_empty() {
        return Err(Error::Domain(format!(
            "partition must split {} into two nonempty parts",
            reg
        )));
    }
    Ok(())
}

/// `S(rho_A) + S(rho_B) - S(rho)`.
pub fn mutual_information<T: Real, S: AsRef<str>>(rho: &DensityMatrix<T>, part_a: &[S], part_b: &[S]) -> Result<T> {
    check_partition(rho, part_a, part_b)?;
    let sa = von_neumann_entropy(&rho.partial_trace(part_a)?)?;
    let sb = von_neumann_entropy(&rho.partial_trace(part_b)?)?;
    let s = von_neumann_entropy(rho)?;
    Ok((sa + sb - s).max(T::zero()))
}

/// The lower bound on `I_X + I_X'` used by [`complementarity_check`].
///
/// Taken to be the quantum mutual information between the measured subsystem
/// and the rest of the register.
pub fn correlation_bound<T: Real>(rho: &DensityMatrix<T>, subsystem: &str) -> Result<T> {
    let rest: Vec<&str> = rho
        .register()
        .labels()
        .iter()
        .map(String::as_str)
        .filter(|l| *l != subsystem)
        .collect();
    if rest.is_empty() {
        return Ok(T::zero());
    }
    mutual_information(rho, &[subsystem], &rest)
}

/// Entropy of entanglement `S(Tr_B |psi><psi|)` across `part_a | part_b`.
pub fn entanglement_entropy<T: Real, S: AsRef<str>>(psi: &PureState<T>, part_a: &[S], part_b: &[S]) -> Result<T> {
    let rho = psi.to_density();
    check_partition(&rho, part_a, part_b)?;
    von_neumann_entropy(&rho.partial_trace(part_a)?)
}

/// As [`entanglement_entropy`] but for a density matrix, which must be pure.
pub fn entanglement_entropy_of<T: Real, S: AsRef<str>>(rho: &DensityMatrix<T>, part_a: &[S], part_b: &[S]) -> Result<T> {
    let purity = rho.purity();
    if purity < T::one() - lit(1e-8) {
        return Err(Error::NotPure(to_f64(purity)));
    }
    check_partition(rho, part_a, part_b)?;
    von_neumann_entropy(&rho.partial_trace(part_a)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complementarity<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// Compares `I_X + I_X'` against [`correlation_bound`] on the shared subsystem.
pub fn complementarity_check<T: Real>(
    rho: &DensityMatrix<T>,
    x: &ObservableSpec<T>,
    x_prime: &ObservableSpec<T>,
) -> Result<Complementarity<T>> {
    if x.subsystem() != x_prime.subsystem() {
        return Err(Error::UnknownLabel(format!(
            "observables act on `{}` and `{}`",
            x.subsystem(),
            x_prime.subsystem()
        )));
    }
    let lhs = irreality_value(rho, x)? + irreality_value(rho, x_prime)?;
    let rhs = correlation_bound(rho, x.subsystem())?;
    Ok(Complementarity {
        lhs,
        rhs,
        holds: lhs >= rhs - lit(1e-9),
    })
}

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use common::density_from;
use nalgebra::Complex;
use realitysim::eraser::{omega, AliceConfig, Stage};
use realitysim::linalg::CVector;
use realitysim::tomography::{
    exact_counts, monte_carlo_irreality, reconstruct, simulate_counts, tomography_end_to_end,
};
use realitysim::{DensityMatrix, ObservableSpec, ProtocolConfig, PureState, QubitRegister};

fn omega_state(theta: f64, config: AliceConfig, stage: Stage) -> DensityMatrix {
    omega(&ProtocolConfig::new(theta, config), stage).unwrap().0.to_density()
}

fn bell() -> DensityMatrix {
    let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex::new(0.0, 0.0);
    PureState::new(QubitRegister::new(["a", "b"]).unwrap(), CVector::from_vec(vec![h, z, z, h]))
        .unwrap()
        .to_density()
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    (v[n / 2 - 1] + v[n / 2]) / 2.0
}

#[test]
fn exact_frequencies_reconstruct_random_states() {
    for i in 0..20 {
        let raw: Vec<f64> = (0..(2 * 8 * (1 + i % 8))).map(|k| (((k * 7919 + i * 104_729) % 1000) as f64 / 500.0) - 1.0).collect();
        let rho = density_from(&raw, 3);
        let data = exact_counts(&rho, 1 << 40);
        let rec = reconstruct::<f64>(&data).unwrap();
        let f = rec.rho_physical.fidelity(&rho).unwrap();
        assert!(f >= 1.0 - 1e-9, "state {i}: fidelity {f}");
    }
}

#[test]
fn more_shots_do_not_lower_the_median_fidelity() {
    let truth = omega_state(FRAC_PI_2, AliceConfig::Cx, Stage::Psi2);
    let fid = |shots| -> Vec<f64> {
        (1..=20).map(|s| tomography_end_to_end(&truth, shots, s).unwrap().fidelity_to_truth.unwrap()).collect()
    };
    let (lo, hi) = (median(fid(1_000)), median(fid(100_000)));
    assert!(hi >= lo, "median {hi} at 1e5 vs {lo} at 1e3");
}

#[test]
fn monte_carlo_std_scales_with_shots() {
    // interior angle: the irreality is smooth in the counts there
    let truth = omega_state(FRAC_PI_4, AliceConfig::Cx, Stage::Psi2);
    let x = ObservableSpec::sigma_z("d1");
    let std = |shots| {
        let data = simulate_counts(&truth, shots, 3).unwrap();
        monte_carlo_irreality(&data, &x, 200, 4).unwrap().std
    };
    let ratio = std(1_000) / std(100_000);
    assert!((5.0..=20.0).contains(&ratio), "std ratio {ratio}");
}

#[test]
fn imaginary_parts_are_small_next_to_real_coherences() {
    for (config, stage) in [(AliceConfig::Cx, Stage::Psi1), (AliceConfig::Cx, Stage::Psi2)] {
        for theta in [FRAC_PI_4, FRAC_PI_2] {
            let truth = omega_state(theta, config, stage);
            let rec = tomography_end_to_end(&truth, 100_000, 11).unwrap();
            let m = rec.rho_physical.matrix();
            let mut imag = 0.0f64;
            let mut coherence = 0.0f64;
            for i in 0..8 {
                for j in 0..8 {
                    imag = imag.max(m[(i, j)].im.abs());
                    if i != j {
                        coherence = coherence.max(m[(i, j)].re.abs());
                    }
                }
            }
            assert!(10.0 * imag <= coherence, "{stage:?} theta {theta}: imag {imag}, coherence {coherence}");
        }
    }
}

#[test]
fn omega2z_is_recovered_almost_exactly() {
    let truth = omega_state(1.0, AliceConfig::Cz, Stage::Psi2);
    for (shots, floor) in [(1_000, 0.98), (10_000, 0.99), (100_000, 0.99)] {
        for seed in 1..=5 {
            let rec = tomography_end_to_end(&truth, shots, seed).unwrap();
            let f = rec.fidelity_to_truth.unwrap();
            // at 1e3 shots the X/Y-setting noise pushes the projection to ~0.985
            assert!(f >= floor, "shots {shots} seed {seed}: fidelity {f}");
            if shots == 100_000 {
                assert!(rec.purity >= 0.99, "purity {}", rec.purity);
            }
        }
    }
}

#[test]
fn maximally_mixed_stays_mixed() {
    let truth = DensityMatrix::maximally_mixed(["b", "d1", "d2"]).unwrap();
    let rec = tomography_end_to_end(&truth, 10_000, 5).unwrap();
    assert!(rec.purity <= 0.15, "purity {}", rec.purity);
}

#[test]
fn finite_shots_can_leave_the_linear_estimate_unphysical() {
    let negative = (1..=10)
        .filter(|&s| {
            let data = simulate_counts(&bell(), 1_000, s).unwrap();
            reconstruct::<f64>(&data).unwrap().min_linear_eigenvalue < 0.0
        })
        .count();
    assert!(negative > 0);
}

#[test]
fn bell_state_error_bar_covers_one() {
    let data = simulate_counts(&bell(), 100_000, 1).unwrap();
    let est = monte_carlo_irreality(&data, &ObservableSpec::sigma_z("a"), 100, 2).unwrap();
    assert!((est.mean - 1.0).abs() <= 3.0 * est.std, "{} +- {}", est.mean, est.std);
}

#[test]
fn noiseless_omega2z_has_a_tight_zero_error_bar() {
    let truth = omega_state(1.0, AliceConfig::Cz, Stage::Psi2);
    let data = exact_counts(&truth, 1_000_000_000);
    let est = monte_carlo_irreality(&data, &ObservableSpec::sigma_z("d1"), 20, 9).unwrap();
    assert!(est.mean.abs() < 1e-3 && est.std < 0.02, "{} +- {}", est.mean, est.std);
}

#[test]
fn counts_do_not_depend_on_the_thread_count() {
    let truth = omega_state(0.7, AliceConfig::Cx, Stage::Psi2);
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = serial.install(|| simulate_counts(&truth, 5_000, 21).unwrap());
    let b = simulate_counts(&truth, 5_000, 21).unwrap();
    assert_eq!(a, b);
    let x = ObservableSpec::sigma_z("d1");
    let ma = serial.install(|| monte_carlo_irreality(&a, &x, 10, 22).unwrap());
    let mb = monte_carlo_irreality(&b, &x, 10, 22).unwrap();
    assert_eq!(ma, mb);
}

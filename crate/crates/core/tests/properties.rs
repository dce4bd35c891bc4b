mod common;

use braggscat_core::{
    amplitudes_modal, build_effective_hamiltonian, eigendecompose, probe_vector, scatter_resolvent, ArrayConfig,
    CMatrix, Complex64,
};
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn scenario_config(s: &RandomScenario) -> ArrayConfig {
    ArrayConfig::new(0.0, s.gamma, s.gamma_f, s.shifts.clone(), s.positions.clone()).unwrap()
}

#[test]
fn lossless_arrays_conserve_flux_and_lossy_arrays_are_passive() {
    let mut rng = rng(2024);
    for case in 0..200 {
        let lossy = case % 2 == 1;
        let s = random_scenario(&mut rng, 8, lossy);
        let config = scenario_config(&s);
        let h = build_effective_hamiltonian(&config);
        let v = probe_vector(&config);
        for _ in 0..10 {
            let d = rng.random_range(-4.0..4.0);
            let out = scatter_resolvent(&h, &v, d).unwrap();
            let total = out.transmission + out.reflection;
            if lossy {
                assert!(total <= 1.0 + 1e-10 && out.eta >= -1e-10, "case {case}: {total}");
            } else {
                assert!((total - 1.0).abs() < 1e-10, "case {case}: {total}");
            }
        }
    }
}

#[test]
fn modal_sum_matches_resolvent_away_from_exceptional_points() {
    let mut rng = rng(7);
    let mut checked = 0;
    for case in 0..200 {
        let s = random_scenario(&mut rng, 6, case % 3 == 0);
        let config = scenario_config(&s);
        let h = build_effective_hamiltonian(&config);
        let Ok(system) = eigendecompose(&h) else { continue };
        if system.ep_adjacent {
            continue;
        }
        let v = probe_vector(&config);
        for _ in 0..5 {
            let d = rng.random_range(-3.0..3.0);
            let resolvent = scatter_resolvent(&h, &v, d).unwrap();
            let (t, r) = amplitudes_modal(&system, d, config.gamma()).unwrap();
            assert!((t - resolvent.t).norm() < 1e-9, "case {case}");
            assert!((r - resolvent.r).norm() < 1e-9, "case {case}");
        }
        checked += 1;
    }
    assert!(checked > 150);
}

#[test]
fn trace_and_completeness() {
    let mut rng = rng(99);
    for case in 0..100 {
        let s = random_scenario(&mut rng, 8, case % 2 == 0);
        let config = scenario_config(&s);
        let h = build_effective_hamiltonian(&config);
        let system = eigendecompose(&h).unwrap();
        let n = config.n();
        let trace: Complex64 = (0..n).map(|i| h.matrix()[(i, i)]).sum();
        let sum: Complex64 = system.energies().iter().sum();
        assert!((trace - sum).norm() < 1e-10 * n as f64);

        let mut ident = CMatrix::zeros(n, n);
        for mode in &system.modes {
            ident += &mode.right * mode.left.transpose();
            assert!((mode.left.dot(&mode.right) - 1.0).norm() < 1e-10);
        }
        assert!((ident - CMatrix::identity(n, n)).norm() < 1e-9, "case {case}");

        let v = probe_vector(&config);
        let xi: Complex64 = system.modes.iter().map(|m| m.xi).sum();
        let xi_tilde: Complex64 = system.modes.iter().map(|m| m.xi_tilde).sum();
        assert!((xi - n as f64).norm() < 1e-9);
        assert!((xi_tilde - v.as_vector().dot(v.as_vector())).norm() < 1e-9);
    }
}

#[test]
fn spectra_do_not_depend_on_free_space_loss() {
    let mut rng = rng(5);
    for _ in 0..50 {
        let n = rng.random_range(2..=6);
        let shifts: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let lossless = ArrayConfig::bragg(shifts).unwrap();
        let lossy = lossless.clone().with_gamma_f(rng.random_range(0.01..2.0)).unwrap();
        let a = eigendecompose(&build_effective_hamiltonian(&lossless)).unwrap();
        let b = eigendecompose(&build_effective_hamiltonian(&lossy)).unwrap();
        for (x, y) in a.modes.iter().zip(&b.modes) {
            assert!((x.xi - y.xi).norm() < 1e-10);
            assert!((x.xi_tilde - y.xi_tilde).norm() < 1e-10);
            assert_eq!(x.class, y.class);
        }
    }
}

#[test]
fn transparency_interference_identity() {
    for delta in [0.05, 0.1, 0.5, 1.0, 1.9] {
        let config = ArrayConfig::bragg(vec![delta, 0.0]).unwrap();
        let system = eigendecompose(&build_effective_hamiltonian(&config)).unwrap();
        let sum: Complex64 = system.modes.iter().map(|m| m.xi / m.decay()).sum();
        assert!(sum.norm() < 1e-10, "delta {delta}: {sum}");
    }
}

#[test]
fn shifted_pair_is_anti_pt_symmetric() {
    for delta in [-1.7, -0.4, 0.3, 1.2, 2.5] {
        let h = build_effective_hamiltonian(&ArrayConfig::bragg(vec![delta, 0.0]).unwrap());
        let centred = h.matrix() - CMatrix::identity(2, 2) * c(delta / 2.0, -1.0);
        let swap = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let pt = &swap * centred.map(|z| z.conj()) * &swap;
        assert!((pt + &centred).norm() < 1e-15);
    }
}

#[test]
fn bragg_scattering_depends_only_on_the_shift_multiset() {
    let mut rng = rng(31);
    for _ in 0..40 {
        let n = rng.random_range(2..=7);
        let mut shifts: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let gamma_f = rng.random_range(0.0..0.2);
        let a = ArrayConfig::bragg(shifts.clone()).unwrap().with_gamma_f(gamma_f).unwrap();
        shifts.shuffle(&mut rng);
        let b = ArrayConfig::bragg(shifts).unwrap().with_gamma_f(gamma_f).unwrap();
        let (ha, hb) = (build_effective_hamiltonian(&a), build_effective_hamiltonian(&b));
        for _ in 0..5 {
            let d = rng.random_range(-2.0..2.0);
            let x = scatter_resolvent(&ha, &probe_vector(&a), d).unwrap();
            let y = scatter_resolvent(&hb, &probe_vector(&b), d).unwrap();
            assert!((x.t - y.t).norm() < 1e-11);
            assert!((x.r - y.r).norm() < 1e-11);
        }
        let mut ea = eigendecompose(&ha).unwrap().energies();
        let mut eb = eigendecompose(&hb).unwrap().energies();
        let key = |z: &Complex64| (z.im, z.re);
        ea.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap());
        eb.sort_by(|p, q| key(p).partial_cmp(&key(q)).unwrap());
        for (p, q) in ea.iter().zip(&eb) {
            assert!((p - q).norm() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamiltonian_is_complex_symmetric(
        shifts in prop::collection::vec(-2.0f64..2.0, 1..8),
        spacing in 0.05f64..1.5,
        gamma_f in 0.0f64..1.0,
    ) {
        let config = ArrayConfig::with_spacing(shifts, spacing).unwrap().with_gamma_f(gamma_f).unwrap();
        let h = build_effective_hamiltonian(&config);
        prop_assert!((h.matrix() - h.matrix().transpose()).norm() < 1e-15);
    }

    #[test]
    fn absorption_lies_in_unit_interval(
        shifts in prop::collection::vec(-1.0f64..1.0, 1..7),
        gamma_f in 0.0f64..2.0,
        d in -3.0f64..3.0,
    ) {
        let config = ArrayConfig::bragg(shifts).unwrap().with_gamma_f(gamma_f).unwrap();
        let out = scatter_resolvent(&build_effective_hamiltonian(&config), &probe_vector(&config), d).unwrap();
        prop_assert!(out.eta >= -1e-12 && out.eta <= 1.0 + 1e-12);
        prop_assert!(out.transmission <= 1.0 + 1e-12);
    }

    #[test]
    fn bragg_resolvent_matches_rank_one_oracle(
        shifts in prop::collection::vec(-1.0f64..1.0, 1..9),
        gamma in 0.2f64..3.0,
        gamma_f in 0.0f64..1.0,
        d in -3.0f64..3.0,
    ) {
        let n = shifts.len();
        let positions = (0..n).map(|j| 0.5 * j as f64).collect();
        let config = ArrayConfig::new(0.0, gamma, gamma_f, shifts.clone(), positions).unwrap();
        let out = scatter_resolvent(&build_effective_hamiltonian(&config), &probe_vector(&config), d).unwrap();
        let (t, r) = sherman_morrison(&shifts, gamma, gamma_f, d);
        prop_assert!((out.t - t).norm() < 1e-10);
        prop_assert!((out.r - r).norm() < 1e-10);
    }
}

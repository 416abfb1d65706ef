use approx::assert_relative_eq;
use ppt_core::algebra::Rational;
use ppt_core::closed_form::UnperturbedState;
use ppt_core::engine::{energy_eval, solve_tau_numeric, ModelParams, Parity, SolveOptions};
use ppt_core::oracle::{expected_bound_count, fd_spectrum, find_kappa, find_kappa_precise, ExactHamiltonian, Hamiltonian, ShootingConfig};
use ppt_core::par::Execution;

#[test]
fn series_energy_tracks_shooting_oracle() {
    let mu = Rational::from_int(3);
    let tau = solve_tau_numeric(&mu, 6, &SolveOptions::default()).unwrap().tau;
    for lambda in [Rational::frac(1, 100), Rational::frac(-1, 100), Rational::frac(1, 40)] {
        let params = ModelParams::ground(mu.clone(), lambda).unwrap();
        let est = energy_eval(&params, &tau).unwrap();
        let cfg = ShootingConfig::around(Parity::Even, est.kappa, 0.2);
        let r = find_kappa(&Hamiltonian::from(&params), &cfg).unwrap();
        assert_relative_eq!(r.energy, est.energy, max_relative = 1e-8);
    }
}

#[test]
fn precise_and_standard_oracles_agree() {
    let params = ModelParams::ground(Rational::from_int(2), Rational::frac(1, 50)).unwrap();
    let p = find_kappa_precise(&ExactHamiltonian::from(&params), (1.8, 2.2)).unwrap();
    let cfg = ShootingConfig::new(Parity::Even, (1.8, 2.2));
    let s = find_kappa(&Hamiltonian::from(&params), &cfg).unwrap();
    assert!((p.kappa.hi() - s.kappa).abs() < 1e-9);
}

#[test]
fn fd_spectrum_recovers_all_unperturbed_levels() {
    let mu = 5.0;
    let spec = fd_spectrum(&Hamiltonian::new(mu, 0.0), 1500, 25.0, Execution::Parallel).unwrap();
    assert_eq!(spec.energies.len(), expected_bound_count(mu));
    for (k, e) in spec.energies.iter().enumerate() {
        let kappa = mu - k as f64;
        assert!((e + kappa * kappa).abs() < 1e-5, "level {k}: {e}");
    }
    let state = UnperturbedState::new(&Rational::from_int(5), 1, Parity::Odd).unwrap();
    assert_eq!(state.kappa0, Rational::from_int(2));
}

#[test]
fn sequential_and_parallel_spectra_match() {
    let ham = Hamiltonian::new(3.0, 0.01);
    let a = fd_spectrum(&ham, 800, 20.0, Execution::Sequential).unwrap();
    let b = fd_spectrum(&ham, 800, 20.0, Execution::Parallel).unwrap();
    assert_eq!(a.energies, b.energies);
}

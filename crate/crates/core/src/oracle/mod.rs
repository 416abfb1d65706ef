//! Independent numerical solvers for the full Hamiltonian
//! `H = -d²/dx² - μ(μ+1) sech² x + 4λ sech⁴ x`, used to validate the series.

mod fd;
mod precise;
mod quadrature;
mod shooting;

use thiserror::Error;

use crate::algebra::Rational;
use crate::engine::{ModelParams, Parity};

pub use fd::{expected_bound_count, fd_spectrum, FdSpectrum, MIN_GRID};
pub use precise::{find_kappa_precise, shoot_mismatch_precise, to_two_float, PreciseEigen};
pub use quadrature::{first_order_slope, first_order_slope_closed, gauss_legendre};
pub use shooting::{find_kappa, shoot_mismatch, shoot_profile, EigenResult, Profile, ShootingConfig, MAX_ITERATIONS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid shooting configuration: {0}")]
    InvalidConfig(String),
    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(f64),
    #[error("mismatch has no sign change on [{lo}, {hi}] ({f_lo:e}, {f_hi:e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("root search did not converge within {0} iterations")]
    IterationCap(usize),
    #[error("integration produced a non-finite value at x = {0}")]
    NonFinite(f64),
    #[error("grid of {grid_n} points is too coarse: {found} negative eigenvalues, expected at least {expected}")]
    GridTooCoarse { grid_n: usize, found: usize, expected: usize },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

/// Float view of the model; the oracle works in `f64` throughout except
/// for the extended-precision shooting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian {
    pub mu: f64,
    pub lambda: f64,
}

impl Hamiltonian {
    pub fn new(mu: f64, lambda: f64) -> Self {
        Hamiltonian { mu, lambda }
    }

    pub fn potential(&self, x: f64) -> f64 {
        potential_eval(x, self.mu, self.lambda)
    }
}

impl From<&ModelParams> for Hamiltonian {
    fn from(p: &ModelParams) -> Self {
        Hamiltonian::new(p.mu.to_f64(), p.lambda.to_f64())
    }
}

/// Exact inputs for the extended-precision path.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactHamiltonian {
    pub mu: Rational,
    pub lambda: Rational,
    pub parity: Parity,
}

impl From<&ModelParams> for ExactHamiltonian {
    fn from(p: &ModelParams) -> Self {
        ExactHamiltonian {
            mu: p.mu.clone(),
            lambda: p.lambda.clone(),
            parity: p.parity,
        }
    }
}

/// `V(x) = -μ(μ+1) sech² x + 4λ sech⁴ x`.
pub fn potential_eval(x: f64, mu: f64, lambda: f64) -> f64 {
    let s2 = sech_squared(x);
    -mu * (mu + 1.0) * s2 + 4.0 * lambda * s2 * s2
}

/// `sech² x` without overflow in `cosh`.
pub(crate) fn sech_squared(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn potential_values() {
        assert_eq!(potential_eval(0.0, 2.0, 0.0), -6.0);
        assert_abs_diff_eq!(potential_eval(0.0, 2.0, 0.01), -5.96, epsilon = 1e-15);
        assert_eq!(potential_eval(800.0, 2.0, 0.01), 0.0);
        assert_abs_diff_eq!(potential_eval(-1.3, 2.0, 0.3), potential_eval(1.3, 2.0, 0.3), epsilon = 0.0);
        assert_abs_diff_eq!(sech_squared(0.7), 1.0 / 0.7f64.cosh().powi(2), epsilon = 1e-15);
    }
}

//! The perturbative algebra: matrix elements of the three-term recurrence,
//! staged elimination for the energy moments τ⁽ʲ⁾, wave-function
//! coefficients, Hill-determinant cross-checks and float evaluation.

mod determinant;
mod elements;
mod energy;
mod params;
mod tau;
mod wave;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use determinant::{det_coefficient, det_minors, det_wave_series, raw_recurrence};
pub use elements::{alpha_elem, alpha_value, beta0_value, beta_elem, beta_value};
pub use energy::{energy_eval, kappa_exact, EnergyEstimate, PLAUSIBLE_LAMBDA};
pub use params::{strength_param, ModelParams, Parity};
pub use tau::{
    build_chain, solve_tau, solve_tau_numeric, solve_tau_symbolic, GammaChain, GammaStage,
    SolveOptions, TauSeries, TauSolution, DEFAULT_MAX_NUMERIC_ORDER, DEFAULT_MAX_SYMBOLIC_ORDER,
    MAX_SYMBOLIC_ORDER_ENV,
};
pub use wave::{wave_coefficients, wavefunction_eval, PreparedWave, WaveSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("potential strength mu must be positive, got {0}")]
    NonPositiveMu(String),
    #[error("no bound state with N = {level}, p = {parity} for mu = {mu} (need 2N + p < mu)")]
    StateOutOfRange { mu: String, level: u32, parity: u32 },
    #[error("matrix element index n = 0 is not defined for alpha")]
    AlphaIndexZero,
    #[error("stage {stage} is degenerate: condition {condition} has zero slope")]
    DegenerateStage { stage: usize, condition: String },
    #[error("{mode} order {requested} exceeds the configured guard {limit}")]
    OrderGuard {
        mode: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("alpha_{index} vanishes; forward recurrence cannot proceed")]
    VanishingAlpha { index: usize },
    #[error("tau series has a = {found}, expected (2mu+1)/4 = {expected}")]
    StrengthMismatch { found: String, expected: String },
    #[error("only the ground state (N = 0, p = 0) has a perturbation series here")]
    NotGroundState,
    #[error("exponent kappa = {0} is not positive (state unbound)")]
    Unbound(f64),
    #[error("requested {requested} terms but only {available} coefficients are stored")]
    TooManyTerms { requested: usize, available: usize },
    #[error("wave coefficients need tau of order at least 1")]
    OrderTooLow,
}

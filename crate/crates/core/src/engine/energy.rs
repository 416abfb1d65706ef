use crate::algebra::Rational;

use super::params::{strength_param, ModelParams};
use super::tau::TauSeries;
use super::EngineError;

/// |λ| at or beyond this is outside the perturbative window; evaluation
/// still proceeds but the estimate is flagged.
pub const PLAUSIBLE_LAMBDA: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyEstimate {
    pub kappa: f64,
    pub energy: f64,
    pub kappa_exact: Rational,
    pub energy_exact: Rational,
    pub outside_window: bool,
}

/// `κ = μ + 2(τ(λ) - a)` with τ summed exactly to its available order.
pub fn kappa_exact(
    mu: &Rational,
    tau: &TauSeries<Rational>,
    lambda: &Rational,
) -> Result<Rational, EngineError> {
    let a = strength_param(mu)?;
    if tau.a() != &a {
        return Err(EngineError::StrengthMismatch {
            found: tau.a().to_string(),
            expected: a.to_string(),
        });
    }
    let eps = tau.evaluate(lambda)? - a;
    Ok(mu + &(eps * Rational::from_int(2)))
}

/// Ground-state `κ` and `E = -κ²` from a numeric τ-series.
pub fn energy_eval(params: &ModelParams, tau: &TauSeries<Rational>) -> Result<EnergyEstimate, EngineError> {
    if !params.is_ground() {
        return Err(EngineError::NotGroundState);
    }
    let outside_window = params.lambda.to_f64().abs() >= PLAUSIBLE_LAMBDA;
    if outside_window {
        log::warn!(
            "lambda = {} lies outside the perturbative window |lambda| < {PLAUSIBLE_LAMBDA}",
            params.lambda
        );
    }
    let kappa = kappa_exact(&params.mu, tau, &params.lambda)?;
    let energy = -(&kappa * &kappa);
    Ok(EnergyEstimate {
        kappa: kappa.to_f64(),
        energy: energy.to_f64(),
        kappa_exact: kappa,
        energy_exact: energy,
        outside_window,
    })
}

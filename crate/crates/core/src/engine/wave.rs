//! Wave-function coefficients `c_n = λⁿ f_n(λ)` of the ground state
//! `ψ(x) = Σ c_n sech^{2n+κ} x`, and their float evaluation.

use crate::algebra::{FieldCoeff, Rational, TruncatedSeries};

use super::elements::{alpha_elem, beta_value};
use super::energy::kappa_exact;
use super::params::ModelParams;
use super::tau::{build_chain, TauSeries};
use super::EngineError;

#[derive(Debug, Clone, PartialEq)]
pub struct WaveSeries<F> {
    n_max: usize,
    f: Vec<TruncatedSeries<F>>,
    kappa0: F,
    epsilon: TruncatedSeries<F>,
    truncated_from: Option<usize>,
}

impl<F: FieldCoeff> WaveSeries<F> {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `f_n` as a λ-series.
    pub fn f(&self, n: usize) -> Option<&TruncatedSeries<F>> {
        self.f.get(n)
    }

    pub fn all_f(&self) -> &[TruncatedSeries<F>] {
        &self.f
    }

    /// Unperturbed exponent κ(0,0) = μ.
    pub fn kappa0(&self) -> &F {
        &self.kappa0
    }

    /// `ε(λ) = τ(λ) - a`.
    pub fn epsilon(&self) -> &TruncatedSeries<F> {
        &self.epsilon
    }

    /// First index whose series is only the λ⁰ tail estimate (beyond the τ
    /// order), if any.
    pub fn truncated_from(&self) -> Option<usize> {
        self.truncated_from
    }

    /// `c_n(λ) = λⁿ f_n(λ)` at a concrete λ.
    pub fn coefficient_at(&self, n: usize, lambda: &F) -> Result<F, EngineError> {
        let f = self.f.get(n).ok_or(EngineError::TooManyTerms {
            requested: n + 1,
            available: self.f.len(),
        })?;
        let mut value = f.evaluate(lambda)?;
        for _ in 0..n {
            value = value.try_mul(lambda)?;
        }
        Ok(value)
    }
}

/// `f_0 = 1`, `f_j = γ_{j-1} / ((-α_1)···(-α_j))` at λ-order `K - j` for
/// `j <= K`; beyond `K` only λ⁰ terms are known, from
/// `f_j⁽⁰⁾ = -f_{j-1}⁽⁰⁾ / β_j⁽⁰⁾`.
pub fn wave_coefficients<F: FieldCoeff>(
    tau: &TauSeries<F>,
    n_max: usize,
) -> Result<WaveSeries<F>, EngineError> {
    let order = tau.order();
    if order < 1 {
        return Err(EngineError::OrderTooLow);
    }
    let series = tau.as_series();
    let a = tau.a().clone();
    let chain = build_chain(&series, &a, order)?;

    let mut f = Vec::with_capacity(n_max + 1);
    f.push(TruncatedSeries::constant(F::one(), order));
    let mut denom = TruncatedSeries::constant(F::one(), order);
    for j in 1..=n_max.min(order) {
        denom = denom.mul(&alpha_elem(j as u32, &series)?.neg())?;
        let keep = order - j;
        let gamma = chain.gamma(j as isize - 1).expect("chain covers j-1").truncate(keep)?;
        f.push(gamma.div(&denom.truncate(keep)?)?);
    }
    let truncated_from = (n_max > order).then_some(order + 1);
    for j in order + 1..=n_max {
        let beta = beta_value(j as u32, &a, &F::zero());
        let prev = f[j - 1].constant_term();
        f.push(TruncatedSeries::constant(prev.neg_ref().try_div(&beta)?, 0));
    }
    if truncated_from.is_some() {
        log::info!("f_n beyond n = {order} carry only their lambda^0 term");
    }

    // κ(0,0) = μ = 2a - 1/2
    let kappa0 = a
        .scale_rational(&Rational::from_int(2))
        .sub_ref(&F::from_rational(&Rational::frac(1, 2)));
    Ok(WaveSeries {
        n_max,
        f,
        kappa0,
        epsilon: tau.epsilon_series(),
        truncated_from,
    })
}

/// Float-ready ground-state wave function at fixed λ.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedWave {
    pub coeffs: Vec<f64>,
    pub kappa: f64,
}

impl PreparedWave {
    pub fn new(
        params: &ModelParams,
        tau: &TauSeries<Rational>,
        wave: &WaveSeries<Rational>,
        n_terms: usize,
    ) -> Result<Self, EngineError> {
        if !params.is_ground() {
            return Err(EngineError::NotGroundState);
        }
        if n_terms > wave.f.len() {
            return Err(EngineError::TooManyTerms {
                requested: n_terms,
                available: wave.f.len(),
            });
        }
        let kappa = kappa_exact(&params.mu, tau, &params.lambda)?;
        if !kappa.is_positive() {
            return Err(EngineError::Unbound(kappa.to_f64()));
        }
        let coeffs = (0..n_terms)
            .map(|n| wave.coefficient_at(n, &params.lambda).map(|c| c.to_f64()))
            .collect::<Result<_, _>>()?;
        Ok(PreparedWave {
            coeffs,
            kappa: kappa.to_f64(),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        // ln cosh x, stable for large |x|
        let ax = x.abs();
        let ln_cosh = ax + (-2.0 * ax).exp().ln_1p() - std::f64::consts::LN_2;
        let sech2 = (-2.0 * ln_cosh).exp();
        let mut power = (-self.kappa * ln_cosh).exp();
        let mut sum = 0.0;
        for c in &self.coeffs {
            sum += c * power;
            power *= sech2;
        }
        sum
    }
}

/// `ψ(x) = Σ_{n < n_terms} c_n(λ) sech^{2n+κ} x` for the even ground state.
pub fn wavefunction_eval(
    x: f64,
    params: &ModelParams,
    tau: &TauSeries<Rational>,
    wave: &WaveSeries<Rational>,
    n_terms: usize,
) -> Result<f64, EngineError> {
    Ok(PreparedWave::new(params, tau, wave, n_terms)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalFunction;
    use crate::engine::{beta0_value, solve_tau, solve_tau_numeric, SolveOptions};
    use approx::assert_relative_eq;

    fn numeric(mu: &Rational, k: usize) -> TauSeries<Rational> {
        solve_tau_numeric(mu, k, &SolveOptions::default()).unwrap().tau
    }

    #[test]
    fn f0_is_one_and_orders_shrink() {
        let tau = numeric(&Rational::from_int(2), 5);
        let wave = wave_coefficients(&tau, 8).unwrap();
        assert_eq!(wave.f(0).unwrap(), &TruncatedSeries::constant(Rational::one(), 5));
        for j in 1..=5 {
            assert_eq!(wave.f(j).unwrap().order(), 5 - j);
        }
        for j in 6..=8 {
            assert_eq!(wave.f(j).unwrap().order(), 0);
        }
        assert_eq!(wave.truncated_from(), Some(6));
        assert!(wave.epsilon().constant_term().is_zero());
    }

    #[test]
    fn f1_leading_term() {
        // f_1⁽⁰⁾ = 2ab / (1/2 + 2a), symbolic in a
        let sol = solve_tau(RationalFunction::var(), 2, &SolveOptions::default()).unwrap();
        let wave = wave_coefficients(&sol.tau, 2).unwrap();
        let a = RationalFunction::var();
        let b = sol.tau.moment(1).unwrap();
        let expected = a
            .mul(b)
            .scale(&Rational::from_int(2))
            .checked_div(&a.scale(&Rational::from_int(2)).add(&RationalFunction::constant(&Rational::frac(1, 2))))
            .unwrap();
        assert_eq!(wave.f(1).unwrap().constant_term(), &expected);
    }

    #[test]
    fn leading_terms_nonzero_and_chain_consistent() {
        let tau = numeric(&Rational::from_int(2), 5);
        let a = tau.a().clone();
        let wave = wave_coefficients(&tau, 4).unwrap();
        for j in 1..=4 {
            let lead = wave.f(j).unwrap().constant_term();
            assert!(!lead.is_zero(), "f_{j}");
            // same λ⁰ value as the rows n >= 1 give on their own
            let beta = beta_value(j as u32, &a, &beta0_value(&a, &a).unwrap());
            let prev = wave.f(j - 1).unwrap().constant_term();
            assert_eq!(lead, &(-prev).checked_div(&beta).unwrap());
        }
    }

    #[test]
    fn unperturbed_wavefunction_is_sech_squared() {
        let mu = Rational::from_int(2);
        let tau = numeric(&mu, 3);
        let wave = wave_coefficients(&tau, 4).unwrap();
        let params = ModelParams::ground(mu, Rational::zero()).unwrap();
        for x in [0.0, 0.3, 1.7, -2.2, 9.0] {
            let psi = wavefunction_eval(x, &params, &tau, &wave, 5).unwrap();
            assert_relative_eq!(psi, 1.0 / x.cosh().powi(2), max_relative = 1e-13);
        }
    }

    #[test]
    fn asymptotic_decay_rate() {
        let mu = Rational::from_int(2);
        let tau = numeric(&mu, 5);
        let wave = wave_coefficients(&tau, 8).unwrap();
        let params = ModelParams::ground(mu, Rational::frac(1, 100)).unwrap();
        let prepared = PreparedWave::new(&params, &tau, &wave, 9).unwrap();
        let at_origin = prepared.eval(0.0);
        let partial: f64 = prepared.coeffs.iter().sum();
        assert_relative_eq!(at_origin, partial, max_relative = 1e-14);
        assert!(at_origin > 0.0);
        for x in [10.0, 14.0, 20.0] {
            let expected = prepared.coeffs[0] * (2.0f64).powf(prepared.kappa) * (-prepared.kappa * x).exp();
            assert_relative_eq!(prepared.eval(x), expected, max_relative = 1e-2);
        }
    }

    #[test]
    fn term_count_and_state_checks() {
        let mu = Rational::from_int(2);
        let tau = numeric(&mu, 2);
        let wave = wave_coefficients(&tau, 3).unwrap();
        let params = ModelParams::ground(mu.clone(), Rational::frac(1, 100)).unwrap();
        assert!(matches!(
            wavefunction_eval(0.5, &params, &tau, &wave, 5),
            Err(EngineError::TooManyTerms { .. })
        ));
        let odd = ModelParams::new(mu.clone(), Rational::zero(), super::super::Parity::Odd, 0).unwrap();
        assert_eq!(wavefunction_eval(0.5, &odd, &tau, &wave, 2), Err(EngineError::NotGroundState));
        let strong = ModelParams::ground(Rational::frac(1, 10), Rational::from_int(1)).unwrap();
        let tau_weak = numeric(&Rational::frac(1, 10), 1);
        let wave_weak = wave_coefficients(&tau_weak, 1).unwrap();
        assert!(matches!(
            wavefunction_eval(0.5, &strong, &tau_weak, &wave_weak, 1),
            Err(EngineError::Unbound(_))
        ));
        assert_eq!(wave_coefficients(&numeric(&mu, 0), 2), Err(EngineError::OrderTooLow));
    }
}

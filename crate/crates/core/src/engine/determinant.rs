//! Hill-determinant form of the recurrence and its forward solve, used as
//! cross-checks on the staged elimination.

use crate::algebra::{FieldCoeff, Rational, TruncatedSeries};

use super::elements::{alpha_elem, alpha_value, beta0_series, beta0_value, beta_from_beta0, beta_value};
use super::params::{strength_param, ModelParams};
use super::tau::TauSeries;
use super::EngineError;

struct Elements {
    tau: Rational,
    beta0: Rational,
}

impl Elements {
    fn new(params: &ModelParams, epsilon: &Rational) -> Result<Self, EngineError> {
        let a = strength_param(&params.mu)?;
        let tau = &a + epsilon;
        let beta0 = beta0_value(&tau, &a)?;
        Ok(Elements { tau, beta0 })
    }

    fn alpha(&self, n: usize) -> Result<Rational, EngineError> {
        alpha_value(n as u32, &self.tau)
    }

    fn beta(&self, n: usize) -> Rational {
        beta_value(n as u32, &self.tau, &self.beta0)
    }
}

/// Leading principal minors `D_0 … D_n` of the tridiagonal matrix at the
/// fixed `τ = a + ε`: `D_m = β_m D_{m-1} - λ α_m D_{m-2}`, `D_{-1} = 1`.
pub fn det_minors(params: &ModelParams, epsilon: &Rational, n: usize) -> Result<Vec<Rational>, EngineError> {
    let el = Elements::new(params, epsilon)?;
    let mut minors = Vec::with_capacity(n + 1);
    let mut prev2 = Rational::one();
    let mut prev1 = el.beta0.clone();
    minors.push(prev1.clone());
    for m in 1..=n {
        let next = &el.beta(m) * &prev1 - &(&params.lambda * &el.alpha(m)?) * &prev2;
        prev2 = std::mem::replace(&mut prev1, next);
        minors.push(prev1.clone());
    }
    Ok(minors)
}

/// `D_n`, proportional to `c_{n+1}`:
/// `c_{n+1} = (-1)^{n+1} D_n / (α_1 ··· α_{n+1})`.
pub fn det_coefficient(n: usize, params: &ModelParams, epsilon: &Rational) -> Result<Rational, EngineError> {
    Ok(det_minors(params, epsilon, n)?.pop().expect("at least D_0"))
}

/// Forward solve `c_{n+1} = -(λ c_{n-1} + β_n c_n) / α_{n+1}`, `c_0 = 1`.
pub fn raw_recurrence(params: &ModelParams, epsilon: &Rational, n_max: usize) -> Result<Vec<Rational>, EngineError> {
    let el = Elements::new(params, epsilon)?;
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(Rational::one());
    for n in 0..n_max {
        let alpha = el.alpha(n + 1)?;
        if alpha.is_zero() {
            return Err(EngineError::VanishingAlpha { index: n + 1 });
        }
        let prev = if n == 0 { Rational::zero() } else { &params.lambda * &c[n - 1] };
        let next = -(prev + &el.beta(n) * &c[n]).checked_div(&alpha)?;
        c.push(next);
    }
    Ok(c)
}

/// Determinant-based `c_0 … c_{n_max}` as λ-series with `ε = τ(λ) - a`
/// truncated at the order of `tau`.
pub fn det_wave_series<F: FieldCoeff>(
    tau: &TauSeries<F>,
    n_max: usize,
) -> Result<Vec<TruncatedSeries<F>>, EngineError> {
    let series = tau.as_series();
    let order = series.order();
    let beta0 = beta0_series(&series, tau.a())?;
    let one = TruncatedSeries::constant(F::one(), order);

    let mut out = vec![one.clone()];
    let (mut prev2, mut prev1) = (one.clone(), beta0.clone());
    let mut alpha_prod = one;
    for n in 1..=n_max {
        let alpha = alpha_elem(n as u32, &series)?;
        if alpha.constant_term().is_zero() {
            return Err(EngineError::VanishingAlpha { index: n });
        }
        alpha_prod = alpha_prod.mul(&alpha)?;
        // c_n from D_{n-1}
        let mut c = prev1.div(&alpha_prod)?;
        if n % 2 == 1 {
            c = c.neg();
        }
        out.push(c);
        if n < n_max {
            let beta = beta_from_beta0(n as u32, &series, &beta0);
            let next = beta.mul(&prev1)?.sub(&alpha.mul(&prev2)?.shift_up());
            prev2 = std::mem::replace(&mut prev1, next);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{solve_tau_numeric, solve_tau_symbolic, wave_coefficients, SolveOptions};

    fn params(mu: Rational, lambda: Rational) -> ModelParams {
        ModelParams::ground(mu, lambda).unwrap()
    }

    #[test]
    fn first_minor_is_beta0() {
        let mu = Rational::frac(7, 3);
        let eps = Rational::frac(-2, 9);
        let d0 = det_coefficient(0, &params(mu.clone(), Rational::frac(1, 10)), &eps).unwrap();
        assert_eq!(d0, &eps * &(&eps + &mu + Rational::frac(1, 2)));
    }

    #[test]
    fn unperturbed_minors_vanish() {
        let p = params(Rational::from_int(2), Rational::zero());
        assert!(det_minors(&p, &Rational::zero(), 7).unwrap().iter().all(Rational::is_zero));
        let c = raw_recurrence(&p, &Rational::zero(), 6).unwrap();
        assert_eq!(c[0], Rational::one());
        assert!(c[1..].iter().all(Rational::is_zero));
    }

    #[test]
    fn ratios_match_forward_solve() {
        let p = params(Rational::from_int(2), Rational::frac(1, 100));
        let eps = Rational::frac(1, 1000);
        let d = det_minors(&p, &eps, 6).unwrap();
        let c = raw_recurrence(&p, &eps, 7).unwrap();
        let el = Elements::new(&p, &eps).unwrap();
        assert_eq!(c[1], -(el.beta0.checked_div(&el.alpha(1).unwrap()).unwrap()));
        for n in 1..=6 {
            let lhs = d[n].checked_div(&d[n - 1]).unwrap();
            let rhs = -(&el.alpha(n + 1).unwrap() * &c[n + 1].checked_div(&c[n]).unwrap());
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn forward_solve_tracks_wave_series() {
        let mu = Rational::from_int(2);
        let lambda = Rational::frac(1, 100);
        let tau = solve_tau_numeric(&mu, 5, &SolveOptions::default()).unwrap().tau;
        let eps = tau.evaluate(&lambda).unwrap() - tau.a().clone();
        let c = raw_recurrence(&params(mu, lambda.clone()), &eps, 4).unwrap();
        let wave = wave_coefficients(&tau, 4).unwrap();
        for n in 1..=4 {
            let lead = wave.f(n).unwrap().constant_term().abs().to_f64();
            let bound = 2.0 * lambda.to_f64().powi(n as i32) * lead;
            assert!(c[n].abs().to_f64() <= bound, "n = {n}");
        }
    }

    #[test]
    fn determinant_series_terminates() {
        let tau = solve_tau_symbolic(3, &SolveOptions::default()).unwrap().tau;
        let cs = det_wave_series(&tau, 3).unwrap();
        let wave = wave_coefficients(&tau, 3).unwrap();
        for (n, c) in cs.iter().enumerate() {
            for k in 0..n {
                assert!(c.coeffs()[k].is_zero(), "c_{n} at lambda^{k}");
            }
            // the first surviving term agrees with f_n
            assert_eq!(&c.coeffs()[n], wave.f(n).unwrap().constant_term());
        }
    }

    #[test]
    fn vanishing_alpha_reported() {
        // α_1 = -1/2 - 2τ vanishes at τ = -1/4, i.e. ε = -1/4 - a
        let mu = Rational::from_int(2);
        let p = params(mu.clone(), Rational::frac(1, 10));
        let eps = Rational::frac(-1, 4) - strength_param(&mu).unwrap();
        assert_eq!(raw_recurrence(&p, &eps, 3), Err(EngineError::VanishingAlpha { index: 1 }));
    }
}

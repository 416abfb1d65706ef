//! Matrix elements of the three-term recurrence
//! `λ c_{n-1} + β_n c_n + α_{n+1} c_{n+1} = 0`, expressed through τ:
//! `α_n = n/2 - n² - 2nτ`, `β_0 = τ² - a²`, `β_n = n² + 2nτ + β_0`.

use crate::algebra::{Coeff, Rational, TruncatedSeries};

use super::EngineError;

fn alpha_offset(n: u32) -> Rational {
    let n = Rational::from_int(n as i64);
    &n * &Rational::frac(1, 2) - &n * &n
}

pub fn alpha_value<T: Coeff>(n: u32, tau: &T) -> Result<T, EngineError> {
    if n == 0 {
        return Err(EngineError::AlphaIndexZero);
    }
    let offset = T::one().scale_rational(&alpha_offset(n));
    Ok(offset.add_ref(&tau.scale_rational(&Rational::from_int(-2 * n as i64))))
}

pub fn beta0_value<T: Coeff>(tau: &T, a: &T) -> Result<T, EngineError> {
    Ok(tau.try_mul(tau)?.sub_ref(&a.try_mul(a)?))
}

pub fn beta_value<T: Coeff>(n: u32, tau: &T, beta0: &T) -> T {
    let n2 = Rational::from_int((n as i64) * (n as i64));
    T::one()
        .scale_rational(&n2)
        .add_ref(&tau.scale_rational(&Rational::from_int(2 * n as i64)))
        .add_ref(beta0)
}

/// `α_n` as a λ-series at the order of `tau`.
pub fn alpha_elem<T: Coeff>(n: u32, tau: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>, EngineError> {
    if n == 0 {
        return Err(EngineError::AlphaIndexZero);
    }
    let offset = T::one().scale_rational(&alpha_offset(n));
    Ok(tau
        .scale_rational(&Rational::from_int(-2 * n as i64))
        .add_constant(&offset))
}

/// `β_n` as a λ-series; `a` is the unperturbed value τ⁽⁰⁾ entering `β_0`.
pub fn beta_elem<T: Coeff>(
    n: u32,
    tau: &TruncatedSeries<T>,
    a: &T,
) -> Result<TruncatedSeries<T>, EngineError> {
    let beta0 = beta0_series(tau, a)?;
    Ok(beta_from_beta0(n, tau, &beta0))
}

pub(crate) fn beta0_series<T: Coeff>(
    tau: &TruncatedSeries<T>,
    a: &T,
) -> Result<TruncatedSeries<T>, EngineError> {
    Ok(tau.mul(tau)?.add_constant(&a.try_mul(a)?.neg_ref()))
}

pub(crate) fn beta_from_beta0<T: Coeff>(
    n: u32,
    tau: &TruncatedSeries<T>,
    beta0: &TruncatedSeries<T>,
) -> TruncatedSeries<T> {
    if n == 0 {
        return beta0.clone();
    }
    let n2 = T::one().scale_rational(&Rational::from_int((n as i64) * (n as i64)));
    tau.scale_rational(&Rational::from_int(2 * n as i64))
        .add(beta0)
        .add_constant(&n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Polynomial, RationalFunction};
    use proptest::prelude::*;

    fn a_sym() -> RationalFunction {
        RationalFunction::var()
    }

    fn lin(c0: Rational, c1: Rational) -> RationalFunction {
        RationalFunction::from_polynomial(&Polynomial::new(vec![c0, c1]))
    }

    #[test]
    fn alpha_one_at_unperturbed_tau() {
        let tau = TruncatedSeries::constant(a_sym(), 0);
        let got = alpha_elem(1, &tau).unwrap();
        assert_eq!(got.coeffs()[0], lin(Rational::frac(-1, 2), Rational::from_int(-2)));
    }

    #[test]
    fn alpha_two_matches_row_factor() {
        // a = (2mu+1)/4 turns alpha_2 into -(2mu + 4)
        for mu in [Rational::from_int(2), Rational::frac(7, 3), Rational::frac(1, 2)] {
            let a = super::super::strength_param(&mu).unwrap();
            let got = alpha_value(2, &a).unwrap();
            assert_eq!(got, -(&mu * &Rational::from_int(2) + Rational::from_int(4)));
        }
    }

    #[test]
    fn alpha_is_linear_in_tau() {
        let (a, b) = (a_sym(), RationalFunction::constant(&Rational::frac(3, 7)));
        let tau = TruncatedSeries::from_coeffs(vec![a.clone(), b.clone()]);
        let got = alpha_elem(1, &tau).unwrap();
        assert_eq!(got.coeffs()[1], b.scale(&Rational::from_int(-2)));
        assert_eq!(alpha_value(0, &a), Err(EngineError::AlphaIndexZero));
        assert!(alpha_elem(0, &tau).is_err());
    }

    #[test]
    fn beta0_low_orders() {
        // tau = a + b λ with symbolic a and a sample b: beta_0 = 2ab λ + b² λ²
        let a = a_sym();
        let b = RationalFunction::constant(&Rational::frac(-5, 3));
        let tau = TruncatedSeries::from_coeffs(vec![a.clone(), b.clone(), RationalFunction::zero()]);
        let beta0 = beta_elem(0, &tau, &a).unwrap();
        assert!(beta0.coeffs()[0].is_zero());
        assert_eq!(beta0.coeffs()[1], a.mul(&b).scale(&Rational::from_int(2)));
        assert_eq!(beta0.coeffs()[2], b.mul(&b));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..13).prop_map(|(p, q)| Rational::frac(p, q))
    }

    proptest! {
        #[test]
        fn beta0_identity(eps in small_rational(), mu_num in 1i64..40, mu_den in 1i64..7) {
            let mu = Rational::frac(mu_num, mu_den);
            let a = super::super::strength_param(&mu).unwrap();
            let tau = &a + &eps;
            let beta0 = beta0_value(&tau, &a).unwrap();
            let expected = &eps * &(&eps + &mu + Rational::frac(1, 2));
            prop_assert_eq!(beta0, expected);
        }

        #[test]
        fn two_term_row_factors(eps in small_rational(), n in 0u32..12) {
            // symbolic mu = 2a - 1/2 with tau = a + eps
            let a = a_sym();
            let mu = a.scale(&Rational::from_int(2)).sub(&RationalFunction::constant(&Rational::frac(1, 2)));
            let eps_rf = RationalFunction::constant(&eps);
            let tau = a.add(&eps_rf);
            let beta0 = beta0_value(&tau, &a).unwrap();
            let k = |r: Rational| RationalFunction::constant(&r);
            let nn = Rational::from_int(n as i64);

            let minus_alpha = alpha_value(n + 2, &tau).unwrap().neg();
            let expected = k(&nn + &Rational::from_int(2)).mul(
                &eps_rf.scale(&Rational::from_int(2)).add(&k(nn.clone())).add(&mu).add(&k(Rational::from_int(2))),
            );
            prop_assert_eq!(minus_alpha, expected);

            let beta = beta_value(n + 1, &tau, &beta0);
            let expected = eps_rf.add(&k(&nn + &Rational::one())).mul(
                &eps_rf.add(&k(nn.clone())).add(&mu).add(&k(Rational::frac(3, 2))),
            );
            prop_assert_eq!(beta, expected);
        }
    }

    #[test]
    fn beta_one_factorizes() {
        let mu = Rational::from_int(2);
        let a = super::super::strength_param(&mu).unwrap();
        for eps in [Rational::frac(1, 1000), Rational::frac(-3, 7), Rational::zero()] {
            let tau = &a + &eps;
            let b0 = beta0_value(&tau, &a).unwrap();
            let got = beta_value(1, &tau, &b0);
            let expected = (&eps + &Rational::one()) * (&eps + &mu + Rational::frac(3, 2));
            assert_eq!(got, expected);
        }
    }
}

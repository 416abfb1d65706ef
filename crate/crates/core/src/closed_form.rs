//! Exact bound states of the unperturbed well `-μ(μ+1) sech² x`:
//! `ψ = tanh^p x · sech^κ x · ₂F₁(μ-N+1/2, -N; 1+κ; sech² x)` with
//! `κ = μ - 2N - p`.

use crate::algebra::Rational;
use crate::engine::{EngineError, ModelParams, Parity};

#[derive(Debug, Clone, PartialEq)]
pub struct UnperturbedState {
    pub mu: Rational,
    pub level: u32,
    pub parity: Parity,
    pub kappa0: Rational,
    /// Terminating hypergeometric coefficients, `coeffs[0] = 1`.
    pub coeffs: Vec<Rational>,
}

impl UnperturbedState {
    pub fn new(mu: &Rational, level: u32, parity: Parity) -> Result<Self, EngineError> {
        Ok(UnperturbedState {
            mu: mu.clone(),
            level,
            parity,
            kappa0: unperturbed_kappa(mu, level, parity)?,
            coeffs: unperturbed_coeffs(mu, level, parity)?,
        })
    }

    pub fn psi(&self, x: f64) -> f64 {
        unperturbed_psi(x, self)
    }
}

fn check_state(mu: &Rational, level: u32, parity: Parity) -> Result<(), EngineError> {
    ModelParams::new(mu.clone(), Rational::zero(), parity, level).map(|_| ())
}

/// `κ(N, p) = μ - 2N - p`.
pub fn unperturbed_kappa(mu: &Rational, level: u32, parity: Parity) -> Result<Rational, EngineError> {
    check_state(mu, level, parity)?;
    Ok(mu - &Rational::from_int(2 * level as i64 + parity.index() as i64))
}

/// `(μ-N+1/2)_k (-N)_k / ((1+κ)_k k!)` for `k = 0..=N`.
pub fn unperturbed_coeffs(mu: &Rational, level: u32, parity: Parity) -> Result<Vec<Rational>, EngineError> {
    let kappa = unperturbed_kappa(mu, level, parity)?;
    let n = Rational::from_int(level as i64);
    let upper = &(mu - &n) + &Rational::frac(1, 2);
    let lower = &kappa + &Rational::one();
    let mut coeffs = vec![Rational::one()];
    for k in 0..level as i64 {
        let k = Rational::from_int(k);
        let num = &(&upper + &k) * &(&k - &n);
        let den = &(&lower + &k) * &(&k + &Rational::one());
        // lower Pochhammer is positive since κ > 0
        assert!(!den.is_zero(), "pole in terminating hypergeometric series");
        let next = &coeffs[coeffs.len() - 1] * &num.checked_div(&den)?;
        coeffs.push(next);
    }
    Ok(coeffs)
}

pub fn unperturbed_psi(x: f64, state: &UnperturbedState) -> f64 {
    let sech = 1.0 / x.cosh();
    let s2 = sech * sech;
    let mut poly = 0.0;
    for c in state.coeffs.iter().rev() {
        poly = poly * s2 + c.to_f64();
    }
    let envelope = sech.powf(state.kappa0.to_f64());
    let odd = match state.parity {
        Parity::Even => 1.0,
        Parity::Odd => x.tanh(),
    };
    odd * envelope * poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn state(mu: Rational, n: u32, p: Parity) -> UnperturbedState {
        UnperturbedState::new(&mu, n, p).unwrap()
    }

    #[test]
    fn kappa_values() {
        let two = Rational::from_int(2);
        assert_eq!(unperturbed_kappa(&two, 0, Parity::Even).unwrap(), two);
        assert_eq!(unperturbed_kappa(&two, 0, Parity::Odd).unwrap(), Rational::one());
        assert!(matches!(
            unperturbed_kappa(&two, 1, Parity::Even),
            Err(EngineError::StateOutOfRange { .. })
        ));
    }

    #[test]
    fn hypergeometric_coefficients() {
        assert_eq!(unperturbed_coeffs(&Rational::frac(37, 10), 0, Parity::Even).unwrap(), vec![Rational::one()]);
        let c = unperturbed_coeffs(&Rational::from_int(4), 1, Parity::Even).unwrap();
        assert_eq!(c, vec![Rational::one(), Rational::frac(-7, 6)]);
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(state(Rational::from_int(2), 0, Parity::Even).psi(0.0), 1.0);
        assert_eq!(state(Rational::from_int(2), 0, Parity::Odd).psi(0.0), 0.0);
        assert_abs_diff_eq!(state(Rational::from_int(4), 1, Parity::Even).psi(0.0), -1.0 / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn eigen_residual() {
        let h = 1e-3;
        let cases = [
            (Rational::from_int(2), 0, Parity::Even),
            (Rational::from_int(2), 0, Parity::Odd),
            (Rational::from_int(5), 1, Parity::Even),
            (Rational::from_int(5), 1, Parity::Odd),
            (Rational::frac(37, 10), 1, Parity::Odd),
        ];
        for (mu, n, p) in cases {
            let st = state(mu, n, p);
            let m = st.mu.to_f64();
            let k = st.kappa0.to_f64();
            let xs: Vec<f64> = (0..200).map(|i| 12.0 * i as f64 / 199.0).collect();
            let peak = xs.iter().map(|&x| st.psi(x).abs()).fold(0.0, f64::max);
            for &x in &xs {
                let psi = st.psi(x);
                // five-point stencil; the three-point one alone leaves ~h²ψ''''/12
                let d2 = (-st.psi(x + 2.0 * h) + 16.0 * st.psi(x + h) - 30.0 * psi + 16.0 * st.psi(x - h)
                    - st.psi(x - 2.0 * h))
                    / (12.0 * h * h);
                let sech2 = 1.0 / x.cosh().powi(2);
                let residual = -d2 - m * (m + 1.0) * sech2 * psi + k * k * psi;
                assert!(residual.abs() <= 1e-6 * peak, "N={n} p={p} x={x} r={residual}");
            }
        }
    }

    #[test]
    fn orthogonality_at_mu_five() {
        let mu = Rational::from_int(5);
        let (g, e) = (state(mu.clone(), 0, Parity::Even), state(mu, 1, Parity::Even));
        let n = 24_000;
        let h = 24.0 / n as f64;
        // Simpson on [-12, 12]
        let simpson = |f: &dyn Fn(f64) -> f64| {
            let mut s = f(-12.0) + f(12.0);
            for i in 1..n {
                let x = -12.0 + i as f64 * h;
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
            }
            s * h / 3.0
        };
        let overlap = simpson(&|x| g.psi(x) * e.psi(x));
        let norms = (simpson(&|x| g.psi(x).powi(2)) * simpson(&|x| e.psi(x).powi(2))).sqrt();
        assert!(overlap.abs() <= 1e-8 * norms, "overlap {overlap}");
    }

    #[test]
    fn parity_symmetry() {
        for p in [Parity::Even, Parity::Odd] {
            let st = state(Rational::frac(37, 10), 1, p);
            let sign = if p == Parity::Odd { -1.0 } else { 1.0 };
            for x in [0.1, 0.7, 2.3, 5.0] {
                assert_abs_diff_eq!(st.psi(-x), sign * st.psi(x), epsilon = 1e-15);
            }
        }
    }
}

//! Staged elimination for the energy moments.
//!
//! With `c_n = λⁿ f_n` and `f_j = γ_{j-1} / ((-α_1)···(-α_j))` the recurrence
//! becomes `-α_j γ_{j-2} + β_j γ_{j-1} - λ γ_j = 0` (`γ_{-1} = 1`, no α-term
//! in row 0). Writing `B̂_j = β_j γ_{j-1} - α_j γ_{j-2}`, every row demands
//! `B̂_j = λ γ_j`, so the λ⁰ coefficient of `B̂_j` must vanish. At stage `j`
//! that coefficient is affine in the still unknown `τ⁽ʲ⁾`, which is solved
//! for and fixed before the next stage.

use std::env;

use crate::algebra::{
    AffineExpr, AlgebraError, Coeff, FieldCoeff, Rational, RationalFunction, TruncatedSeries,
};

use super::elements::{alpha_elem, beta0_series, beta_from_beta0};
use super::params::strength_param;
use super::EngineError;

pub const DEFAULT_MAX_SYMBOLIC_ORDER: usize = 8;
pub const DEFAULT_MAX_NUMERIC_ORDER: usize = 30;
pub const MAX_SYMBOLIC_ORDER_ENV: &str = "PPT_MAX_SYMBOLIC_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_symbolic_order: usize,
    pub max_numeric_order: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_symbolic_order: DEFAULT_MAX_SYMBOLIC_ORDER,
            max_numeric_order: DEFAULT_MAX_NUMERIC_ORDER,
        }
    }
}

impl SolveOptions {
    /// Defaults, with the symbolic guard overridden by `PPT_MAX_SYMBOLIC_ORDER`
    /// when it holds a valid integer.
    pub fn from_env() -> Self {
        let mut opts = SolveOptions::default();
        if let Ok(raw) = env::var(MAX_SYMBOLIC_ORDER_ENV) {
            match raw.trim().parse::<usize>() {
                Ok(k) => opts.max_symbolic_order = k,
                Err(_) => log::warn!("ignoring unparseable {MAX_SYMBOLIC_ORDER_ENV}={raw:?}"),
            }
        }
        opts
    }
}

/// `τ(λ) = a + τ⁽¹⁾λ + … + τ⁽ᴷ⁾λᴷ`. Coefficients are rationals (numeric mode,
/// `a` fixed) or rational functions of `a` (symbolic mode).
#[derive(Debug, Clone, PartialEq)]
pub struct TauSeries<F> {
    coeffs: Vec<F>,
}

impl<F: FieldCoeff> TauSeries<F> {
    /// `coeffs[0]` is `a`; panics when empty.
    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "tau series needs tau^(0) = a");
        TauSeries { coeffs }
    }

    pub fn a(&self) -> &F {
        &self.coeffs[0]
    }

    /// `τ⁽ʲ⁾`, with `j = 0` giving `a`.
    pub fn moment(&self, j: usize) -> Option<&F> {
        self.coeffs.get(j)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_symbolic(&self) -> bool {
        F::SYMBOLIC
    }

    pub fn as_series(&self) -> TruncatedSeries<F> {
        TruncatedSeries::from_coeffs(self.coeffs.clone())
    }

    /// `ε(λ) = τ(λ) - a` as a series with zero constant term.
    pub fn epsilon_series(&self) -> TruncatedSeries<F> {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = F::zero();
        TruncatedSeries::from_coeffs(coeffs)
    }

    pub fn truncate(&self, order: usize) -> Result<Self, AlgebraError> {
        Ok(TauSeries {
            coeffs: self.as_series().truncate(order)?.into_coeffs(),
        })
    }

    pub fn evaluate(&self, lambda: &F) -> Result<F, AlgebraError> {
        self.as_series().evaluate(lambda)
    }
}

impl TauSeries<RationalFunction> {
    /// Numeric-mode series obtained by substituting `a = a0`.
    pub fn substitute(&self, a0: &Rational) -> Result<TauSeries<Rational>, AlgebraError> {
        Ok(TauSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.eval(a0))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `γ_{-1} … γ_{upto-1}` and `B̂_0 … B̂_upto` for a given τ-series.
#[derive(Debug, Clone)]
pub struct GammaChain<T> {
    /// `gammas[i]` holds `γ_{i-1}`.
    gammas: Vec<TruncatedSeries<T>>,
    bhats: Vec<TruncatedSeries<T>>,
}

impl<T: Coeff> GammaChain<T> {
    /// `γ_j` for `j >= -1`.
    pub fn gamma(&self, j: isize) -> Option<&TruncatedSeries<T>> {
        usize::try_from(j + 1).ok().and_then(|i| self.gammas.get(i))
    }

    pub fn bhat(&self, j: usize) -> Option<&TruncatedSeries<T>> {
        self.bhats.get(j)
    }

    /// Highest `j` with `B̂_j` available.
    pub fn upto(&self) -> usize {
        self.bhats.len() - 1
    }
}

/// Runs the γ-chain through row `upto`. Rows before `upto` must have a
/// vanishing λ⁰ term in `B̂_j`; the last row is returned as is.
pub fn build_chain<T: Coeff>(
    tau: &TruncatedSeries<T>,
    a: &T,
    upto: usize,
) -> Result<GammaChain<T>, EngineError> {
    let order = tau.order();
    if upto > order {
        return Err(AlgebraError::OrderExtension {
            requested: upto,
            available: order,
        }
        .into());
    }
    let beta0 = beta0_series(tau, a)?;
    let mut gammas = vec![TruncatedSeries::constant(T::one(), order)];
    let mut bhats = Vec::with_capacity(upto + 1);
    for j in 0..=upto {
        let bhat = if j == 0 {
            beta0.clone()
        } else {
            let beta = beta_from_beta0(j as u32, tau, &beta0);
            let term = beta.mul(&gammas[j])?;
            if j == 1 {
                // γ_{-1} = 1
                term.sub(&alpha_elem(1, tau)?)
            } else {
                term.sub(&alpha_elem(j as u32, tau)?.mul(&gammas[j - 1])?)
            }
        };
        if j < upto {
            gammas.push(bhat.shift_down()?);
        }
        bhats.push(bhat);
    }
    Ok(GammaChain { gammas, bhats })
}

/// Record of one elimination stage, taken from the final chain at full order.
#[derive(Debug, Clone)]
pub struct GammaStage<F> {
    pub j: usize,
    pub gamma_prev2: TruncatedSeries<F>,
    pub gamma_prev1: TruncatedSeries<F>,
    /// `B̂_j`; its λ⁰ coefficient is zero once τ⁽ʲ⁾ is fixed.
    pub bhat: TruncatedSeries<F>,
    /// `Â_{j+1} = α_{j+1} γ_{j-1}`.
    pub ahat: TruncatedSeries<F>,
    /// `γ_j = B̂_j / λ`, absent at the last stage where no order is left.
    pub gamma: Option<TruncatedSeries<F>>,
    /// λ⁰ coefficient of `B̂_j` before solving, affine in `u = τ⁽ʲ⁾`.
    pub condition: AffineExpr<F>,
}

#[derive(Debug, Clone)]
pub struct TauSolution<F> {
    pub tau: TauSeries<F>,
    pub stages: Vec<GammaStage<F>>,
}

/// Solves for `τ⁽⁰⁾ … τ⁽ᴷ⁾` starting from `τ⁽⁰⁾ = a`.
pub fn solve_tau<F: FieldCoeff>(
    a: F,
    order: usize,
    opts: &SolveOptions,
) -> Result<TauSolution<F>, EngineError> {
    let (mode, limit) = if F::SYMBOLIC {
        ("symbolic", opts.max_symbolic_order)
    } else {
        ("numeric", opts.max_numeric_order)
    };
    if order > limit {
        return Err(EngineError::OrderGuard {
            mode,
            requested: order,
            limit,
        });
    }

    let mut moments = vec![a.clone()];
    let mut conditions = Vec::with_capacity(order);
    let a_affine = AffineExpr::constant(a.clone());
    for j in 1..=order {
        let mut coeffs: Vec<AffineExpr<F>> =
            moments.iter().cloned().map(AffineExpr::constant).collect();
        coeffs.push(AffineExpr::unknown());
        let tau = TruncatedSeries::from_coeffs(coeffs);
        let chain = build_chain(&tau, &a_affine, j)?;
        let condition = chain.bhats[j].constant_term().clone();
        let moment = condition
            .solve_zero()
            .map_err(|_| EngineError::DegenerateStage {
                stage: j,
                condition: format!("{:?} + {:?}*u", condition.constant, condition.slope),
            })?;
        log::debug!("stage {j}: tau^({j}) solved");
        moments.push(moment);
        conditions.push(condition);
    }

    let tau = TauSeries::from_coeffs(moments);
    let series = tau.as_series();
    let chain = build_chain(&series, &a, order)?;
    let mut stages = Vec::with_capacity(order);
    for (idx, condition) in conditions.into_iter().enumerate() {
        let j = idx + 1;
        let gamma_prev1 = chain.gamma(j as isize - 1).expect("chain covers j-1").clone();
        let ahat = alpha_elem(j as u32 + 1, &series)?.mul(&gamma_prev1)?;
        stages.push(GammaStage {
            j,
            gamma_prev2: chain.gamma(j as isize - 2).expect("chain covers j-2").clone(),
            gamma_prev1,
            bhat: chain.bhats[j].clone(),
            ahat,
            gamma: chain.gamma(j as isize).cloned(),
            condition,
        });
    }
    Ok(TauSolution { tau, stages })
}

/// Symbolic mode: coefficients are rational functions of `a`.
pub fn solve_tau_symbolic(
    order: usize,
    opts: &SolveOptions,
) -> Result<TauSolution<RationalFunction>, EngineError> {
    solve_tau(RationalFunction::var(), order, opts)
}

/// Numeric mode at `a = (2mu+1)/4`.
pub fn solve_tau_numeric(
    mu: &Rational,
    order: usize,
    opts: &SolveOptions,
) -> Result<TauSolution<Rational>, EngineError> {
    solve_tau(strength_param(mu)?, order, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn first_moment_symbolic() {
        let sol = solve_tau_symbolic(1, &SolveOptions::default()).unwrap();
        // -(1+4a) / (4a(1+2a))
        assert_eq!(sol.tau.moment(1).unwrap(), &rf(&[-1, -4], &[0, 4, 8]));
        assert_eq!(sol.tau.a(), &RationalFunction::var());
    }

    #[test]
    fn second_moment_symbolic() {
        let sol = solve_tau_symbolic(2, &SolveOptions::default()).unwrap();
        let num = &p(&[-1, -4]) * &p(&[1, 3, 8, 8]);
        let den = &(&p(&[1, 2]).pow(3) * &p(&[0, 0, 0, 1])) * &p(&[1, 1]);
        let den = den.scale(&Rational::from_int(32));
        assert_eq!(sol.tau.moment(2).unwrap(), &RationalFunction::new(num, den).unwrap());
    }

    #[test]
    fn first_moment_numeric() {
        let sol = solve_tau_numeric(&Rational::from_int(2), 1, &SolveOptions::default()).unwrap();
        assert_eq!(sol.tau.a(), &Rational::frac(5, 4));
        assert_eq!(sol.tau.moment(1).unwrap(), &Rational::frac(-12, 35));
    }

    #[test]
    fn stage_one_condition() {
        // λ⁰ part of B̂_1 is 2a + 1/2 + 2ab(1+2a): constant 2a+1/2, slope 2a(1+2a)
        let sol = solve_tau_symbolic(1, &SolveOptions::default()).unwrap();
        let cond = &sol.stages[0].condition;
        assert_eq!(cond.constant, RationalFunction::from_polynomial(&Polynomial::new(vec![
            Rational::frac(1, 2),
            Rational::from_int(2),
        ])));
        assert_eq!(cond.slope, rf(&[0, 2, 4], &[1]));
    }

    #[test]
    fn first_line_rule_holds_after_solve() {
        let sol = solve_tau_numeric(&Rational::frac(7, 3), 6, &SolveOptions::default()).unwrap();
        for stage in &sol.stages {
            assert!(stage.bhat.constant_term().is_zero(), "stage {}", stage.j);
            assert!(!stage.condition.slope.is_zero());
        }
        assert_eq!(sol.stages.len(), 6);
        assert!(sol.stages.last().unwrap().gamma.is_none());
        assert_eq!(sol.stages[0].gamma.as_ref().unwrap().order(), 4);
    }

    #[test]
    fn order_guards() {
        let opts = SolveOptions {
            max_symbolic_order: 2,
            max_numeric_order: 3,
        };
        assert!(matches!(
            solve_tau_symbolic(3, &opts),
            Err(EngineError::OrderGuard { mode: "symbolic", .. })
        ));
        assert!(solve_tau_numeric(&Rational::from_int(2), 3, &opts).is_ok());
        assert!(solve_tau_numeric(&Rational::from_int(2), 4, &opts).is_err());
    }

    #[test]
    fn order_zero_is_just_a() {
        let sol = solve_tau_numeric(&Rational::from_int(3), 0, &SolveOptions::default()).unwrap();
        assert_eq!(sol.tau.coeffs(), &[Rational::frac(7, 4)]);
        assert!(sol.stages.is_empty());
    }

    #[test]
    fn symbolic_and_numeric_agree() {
        let sym = solve_tau_symbolic(4, &SolveOptions::default()).unwrap().tau;
        for a0 in [Rational::frac(5, 4), Rational::frac(1, 3), Rational::from_int(2), Rational::frac(17, 8), Rational::frac(3, 10)] {
            let mu = &(&a0 * &Rational::from_int(2)) - &Rational::frac(1, 2);
            let num = solve_tau(a0.clone(), 4, &SolveOptions::default()).unwrap().tau;
            assert_eq!(sym.substitute(&a0).unwrap(), num, "a0 = {a0}, mu = {mu}");
        }
    }
}

//! Extended-precision shooting: Taylor-series integration in double-double
//! arithmetic. Used where the series error drops below `f64` resolution.
//!
//! The ODE is extended by `s = sech x`, `t = tanh x` (`s' = -st`,
//! `t' = s²`) so every Taylor coefficient follows from Cauchy products.
//! Node values of `s` and `t` are recomputed exactly from `u = e^{-x}`.

use twofloat::TwoFloat;

use crate::algebra::Rational;
use crate::engine::Parity;

use super::shooting::MAX_ITERATIONS;
use super::{ExactHamiltonian, OracleError};

const STEP: f64 = 0.25;
const TAYLOR_ORDER: usize = 48;
const X_MAX: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreciseEigen {
    pub kappa: TwoFloat,
    pub energy: TwoFloat,
    pub iterations: usize,
}

/// Nearest double-double to an exact rational.
pub fn to_two_float(r: &Rational) -> TwoFloat {
    let hi = r.to_f64();
    let rest = r - &Rational::from_f64_exact(hi).expect("finite");
    TwoFloat::new_add(hi, rest.to_f64())
}

/// `a / b` to full double-double accuracy; the crate's own
/// double-double quotient forms its residual without a fused multiply-add
/// and keeps only about 17 digits.
pub(crate) fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

fn abs(x: TwoFloat) -> TwoFloat {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// `e^{-h}` by its Taylor series.
fn exp_neg(h: f64) -> TwoFloat {
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    for n in 1..60 {
        term = term * -h / n as f64;
        sum += term;
    }
    sum
}

struct Grid {
    steps: usize,
    /// `(sech, tanh)` at `x_k = x_max - k h`.
    nodes: Vec<(TwoFloat, TwoFloat)>,
}

impl Grid {
    fn new(x_max: f64) -> Self {
        let steps = (x_max / STEP).ceil() as usize;
        let q = exp_neg(STEP);
        // u_k = e^{-x_k} = q^{steps - k}
        let mut powers = Vec::with_capacity(steps + 1);
        let mut u = TwoFloat::from(1.0);
        for _ in 0..=steps {
            powers.push(u);
            u *= q;
        }
        let one = TwoFloat::from(1.0);
        let nodes = (0..=steps)
            .map(|k| {
                let u = powers[steps - k];
                let u2 = u * u;
                let s = dd_div(u * 2.0, one + u2);
                let t = dd_div(one - u2, one + u2);
                (s, t)
            })
            .collect();
        Grid { steps, nodes }
    }
}

struct Coefficients {
    kappa2: TwoFloat,
    well: TwoFloat,
    quartic: TwoFloat,
}

fn taylor_step(
    c: &Coefficients,
    (s0, t0): (TwoFloat, TwoFloat),
    psi: TwoFloat,
    dpsi: TwoFloat,
    dx: f64,
) -> (TwoFloat, TwoFloat) {
    let zero = TwoFloat::from(0.0);
    let n_max = TAYLOR_ORDER;
    let mut s = vec![zero; n_max + 1];
    let mut t = vec![zero; n_max + 1];
    let mut w = vec![zero; n_max + 1];
    let mut v = vec![zero; n_max + 1];
    let mut q = vec![zero; n_max + 1];
    let mut p = vec![zero; n_max + 2];
    s[0] = s0;
    t[0] = t0;
    p[0] = psi;
    p[1] = dpsi;
    for n in 0..n_max {
        let mut acc = zero;
        for i in 0..=n {
            acc += s[i] * s[n - i];
        }
        w[n] = acc;
        let mut acc = zero;
        for i in 0..=n {
            acc += w[i] * w[n - i];
        }
        v[n] = acc;
        q[n] = c.quartic * v[n] - c.well * w[n];
        if n == 0 {
            q[0] += c.kappa2;
        }
        let mut st = zero;
        for i in 0..=n {
            st += s[i] * t[n - i];
        }
        let np1 = (n + 1) as f64;
        s[n + 1] = -st / np1;
        t[n + 1] = w[n] / np1;
        let mut qp = zero;
        for i in 0..=n {
            qp += q[i] * p[n - i];
        }
        p[n + 2] = qp / (np1 * (n + 2) as f64);
    }
    // ψ and ψ' at the step end by Horner
    let z = TwoFloat::from(dx);
    let mut value = zero;
    let mut deriv = zero;
    for n in (0..=n_max + 1).rev() {
        value = value * z + p[n];
        if n >= 1 {
            deriv = deriv * z + p[n] * n as f64;
        }
    }
    (value, deriv)
}

fn coefficients(ham: &ExactHamiltonian, kappa: TwoFloat) -> Coefficients {
    let mu = &ham.mu;
    Coefficients {
        kappa2: kappa * kappa,
        well: to_two_float(&(mu * &(mu + &Rational::one()))),
        quartic: to_two_float(&(&ham.lambda * &Rational::from_int(4))),
    }
}

fn mismatch_on(grid: &Grid, ham: &ExactHamiltonian, kappa: TwoFloat) -> Result<TwoFloat, OracleError> {
    if !(kappa > 0.0) {
        return Err(OracleError::NonPositiveKappa(kappa.hi()));
    }
    let c = coefficients(ham, kappa);
    let (mut psi, mut dpsi) = (TwoFloat::from(1.0), -kappa);
    let mut max_abs = TwoFloat::from(1.0);
    for k in 0..grid.steps {
        (psi, dpsi) = taylor_step(&c, grid.nodes[k], psi, dpsi, -STEP);
        if !psi.hi().is_finite() || !dpsi.hi().is_finite() {
            return Err(OracleError::NonFinite(X_MAX - (k + 1) as f64 * STEP));
        }
        if abs(psi) > max_abs {
            max_abs = abs(psi);
        }
        if max_abs.hi() > 1e150 {
            psi = dd_div(psi, max_abs);
            dpsi = dd_div(dpsi, max_abs);
            max_abs = TwoFloat::from(1.0);
        }
    }
    Ok(match ham.parity {
        Parity::Even => dd_div(dpsi, max_abs),
        Parity::Odd => dd_div(psi, max_abs),
    })
}

/// Double-double boundary mismatch, same convention as the RK4 shooter.
pub fn shoot_mismatch_precise(kappa: TwoFloat, ham: &ExactHamiltonian) -> Result<TwoFloat, OracleError> {
    let x_max = X_MAX.max(12.0 / kappa.hi());
    mismatch_on(&Grid::new(x_max), ham, kappa)
}

/// Illinois-modified regula falsi on `bracket`, to relative width ~1e-29.
pub fn find_kappa_precise(ham: &ExactHamiltonian, bracket: (f64, f64)) -> Result<PreciseEigen, OracleError> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && lo < hi) {
        return Err(OracleError::InvalidConfig(format!("bracket ({lo}, {hi}) must be increasing and positive")));
    }
    let grid = Grid::new(X_MAX.max(12.0 / lo));
    let (mut a, mut b) = (TwoFloat::from(lo), TwoFloat::from(hi));
    let mut fa = mismatch_on(&grid, ham, a)?;
    let mut fb = mismatch_on(&grid, ham, b)?;
    if (fa < 0.0) == (fb < 0.0) {
        return Err(OracleError::NoSignChange {
            lo,
            hi,
            f_lo: fa.hi(),
            f_hi: fb.hi(),
        });
    }
    let done = |x: TwoFloat| PreciseEigen {
        kappa: x,
        energy: -(x * x),
        iterations: 0,
    };
    let mut side = 0i8;
    for it in 1..=MAX_ITERATIONS {
        let c = dd_div(a * fb - b * fa, fb - fa);
        let fc = mismatch_on(&grid, ham, c)?;
        if fc == 0.0 || abs(b - a) < TwoFloat::from(1e-29) * abs(c) {
            return Ok(PreciseEigen { iterations: it, ..done(c) });
        }
        if (fc < 0.0) == (fb < 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa = fa / 2.0;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb = fb / 2.0;
            }
            side = 1;
        }
        // mismatch at noise level: take the better end
        if abs(fa).hi() < 1e-31 || abs(fb).hi() < 1e-31 {
            let x = if abs(fa) < abs(fb) { a } else { b };
            return Ok(PreciseEigen { iterations: it, ..done(x) });
        }
    }
    Err(OracleError::IterationCap(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ham(mu: Rational, lambda: Rational, parity: Parity) -> ExactHamiltonian {
        ExactHamiltonian { mu, lambda, parity }
    }

    #[test]
    fn exact_conversion_keeps_low_word() {
        let x = to_two_float(&Rational::frac(1, 3));
        let back = Rational::from_f64_exact(x.hi()).unwrap() + Rational::from_f64_exact(x.lo()).unwrap();
        let err = (back - Rational::frac(1, 3)).abs().to_f64();
        assert!(err < 1e-32, "{err}");
    }

    #[test]
    fn division_is_double_double() {
        let third = dd_div(TwoFloat::from(1.0), TwoFloat::from(3.0));
        let back = Rational::from_f64_exact(third.hi()).unwrap() + Rational::from_f64_exact(third.lo()).unwrap();
        assert!((back - Rational::frac(1, 3)).abs().to_f64() < 1e-32);
        let q = exp_neg(0.25);
        // e^{-1/4} = 0.77880078307140486824517026697832...
        assert_eq!(q.hi(), 0.778_800_783_071_404_9);
        assert!((q.lo() + 1.023_186_953_453_149_8e-17).abs() < 1e-31);
    }

    #[test]
    fn grid_nodes_are_sech_and_tanh() {
        let g = Grid::new(25.0);
        let (s, t) = g.nodes[g.steps - 4]; // x = 1
        assert!((s.hi() - 1.0 / 1f64.cosh()).abs() < 1e-15);
        assert!((t.hi() - 1f64.tanh()).abs() < 1e-15);
        let (s, t) = g.nodes[g.steps];
        assert_eq!((s.hi(), t.hi()), (1.0, 0.0));
        // s² + t² = 1 to double-double accuracy
        let one = s * s + t * t - TwoFloat::from(1.0);
        assert!(one.hi().abs() < 1e-30);
    }

    #[test]
    fn unperturbed_roots_to_extended_precision() {
        let r = find_kappa_precise(&ham(Rational::from_int(2), Rational::zero(), Parity::Even), (1.5, 2.5)).unwrap();
        let err = r.kappa - TwoFloat::from(2.0);
        assert!(err.hi().abs() < 1e-26, "{err:?}");
        let r = find_kappa_precise(&ham(Rational::from_int(2), Rational::zero(), Parity::Odd), (0.6, 1.4)).unwrap();
        assert!((r.kappa - TwoFloat::from(1.0)).hi().abs() < 1e-26);
        let r = find_kappa_precise(&ham(Rational::frac(37, 10), Rational::zero(), Parity::Even), (3.2, 4.1)).unwrap();
        let err = r.kappa - to_two_float(&Rational::frac(37, 10));
        assert!(err.hi().abs() < 1e-26, "{err:?}");
    }
}

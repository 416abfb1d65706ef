use crate::engine::Parity;

use super::{Hamiltonian, OracleError};

pub const MAX_ITERATIONS: usize = 200;
const RENORM_EVERY: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub x_max: f64,
    pub step: f64,
    pub parity: Parity,
    pub bracket: (f64, f64),
    pub tol: f64,
}

impl ShootingConfig {
    /// Defaults with `x_max = max(25, 12/κ_lo)`.
    pub fn new(parity: Parity, bracket: (f64, f64)) -> Self {
        ShootingConfig {
            x_max: default_x_max(bracket.0),
            step: 1e-3,
            parity,
            bracket,
            tol: 1e-10,
        }
    }

    /// Bracket `κ ± width` with the lower end kept positive.
    pub fn around(parity: Parity, kappa: f64, width: f64) -> Self {
        let lo = (kappa - width).max(kappa / 4.0).max(1e-3);
        ShootingConfig::new(parity, (lo, kappa + width))
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let (lo, hi) = self.bracket;
        if !(self.step > 0.0 && self.step < self.x_max) {
            return Err(OracleError::InvalidConfig(format!("step {} out of range", self.step)));
        }
        if !(lo > 0.0 && lo < hi) {
            return Err(OracleError::InvalidConfig(format!("bracket ({lo}, {hi}) must be increasing and positive")));
        }
        if self.x_max * lo < 12.0 {
            return Err(OracleError::InvalidConfig(format!(
                "x_max = {} does not resolve decay at kappa = {lo}",
                self.x_max
            )));
        }
        if !(self.tol > 0.0) {
            return Err(OracleError::InvalidConfig(format!("tolerance {} must be positive", self.tol)));
        }
        Ok(())
    }
}

pub(crate) fn default_x_max(kappa_lo: f64) -> f64 {
    25f64.max(12.0 / kappa_lo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResult {
    pub kappa: f64,
    pub energy: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Inward RK4 samples of the decaying solution, ordered by decreasing x.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub xs: Vec<f64>,
    pub psi: Vec<f64>,
    pub dpsi: Vec<f64>,
}

impl Profile {
    /// Cubic Hermite interpolation between stored steps; `|x|` is used
    /// with the stored parity sign applied by the caller.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let n = self.xs.len();
        let (x0, x_last) = (self.xs[0], self.xs[n - 1]);
        if x > x0 || x < x_last {
            return None;
        }
        let h = (x0 - x_last) / (n - 1) as f64;
        let i = (((x0 - x) / h).floor() as usize).min(n - 2);
        // interval [xs[i+1], xs[i]] with xs decreasing
        let (xa, xb) = (self.xs[i + 1], self.xs[i]);
        let w = xb - xa;
        let t = (x - xa) / w;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Some(h00 * self.psi[i + 1] + h10 * w * self.dpsi[i + 1] + h01 * self.psi[i] + h11 * w * self.dpsi[i])
    }

    pub fn max_abs(&self) -> f64 {
        self.psi.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

struct Integration {
    psi0: f64,
    dpsi0: f64,
    max_abs: f64,
}

fn rk4_inward(
    kappa: f64,
    ham: &Hamiltonian,
    config: &ShootingConfig,
    mut record: Option<&mut Profile>,
) -> Result<Integration, OracleError> {
    if !(kappa > 0.0) {
        return Err(OracleError::NonPositiveKappa(kappa));
    }
    let steps = (config.x_max / config.step).ceil() as usize;
    let h = -config.x_max / steps as f64;
    let k2 = kappa * kappa;
    let rhs = |x: f64, y: f64| (ham.potential(x) + k2) * y;

    let (mut y, mut dy) = (1.0, -kappa);
    let mut max_abs = 1.0f64;
    let mut x = config.x_max;
    if let Some(p) = record.as_deref_mut() {
        p.xs.push(x);
        p.psi.push(y);
        p.dpsi.push(dy);
    }
    for i in 1..=steps {
        let k1y = dy;
        let k1d = rhs(x, y);
        let k2y = dy + 0.5 * h * k1d;
        let k2d = rhs(x + 0.5 * h, y + 0.5 * h * k1y);
        let k3y = dy + 0.5 * h * k2d;
        let k3d = rhs(x + 0.5 * h, y + 0.5 * h * k2y);
        let k4y = dy + h * k3d;
        let k4d = rhs(x + h, y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        x = config.x_max + i as f64 * h;
        if i == steps {
            x = 0.0;
        }
        if !y.is_finite() || !dy.is_finite() {
            return Err(OracleError::NonFinite(x));
        }
        max_abs = max_abs.max(y.abs());
        if let Some(p) = record.as_deref_mut() {
            p.xs.push(x);
            p.psi.push(y);
            p.dpsi.push(dy);
        }
        // profiles keep one scale so interpolation stays consistent
        if record.is_none() && i % RENORM_EVERY == 0 {
            let scale = max_abs;
            y /= scale;
            dy /= scale;
            max_abs = 1.0;
        }
    }
    Ok(Integration {
        psi0: y,
        dpsi0: dy,
        max_abs,
    })
}

/// Boundary mismatch at the origin: `ψ'(0)/max|ψ|` (even) or
/// `ψ(0)/max|ψ|` (odd) for the solution decaying as `e^{-κx}`.
pub fn shoot_mismatch(kappa: f64, ham: &Hamiltonian, config: &ShootingConfig) -> Result<f64, OracleError> {
    let run = rk4_inward(kappa, ham, config, None)?;
    let value = match config.parity {
        Parity::Even => run.dpsi0,
        Parity::Odd => run.psi0,
    };
    Ok(value / run.max_abs)
}

/// Bisection on the configured bracket.
pub fn find_kappa(ham: &Hamiltonian, config: &ShootingConfig) -> Result<EigenResult, OracleError> {
    config.validate()?;
    let (mut lo, mut hi) = config.bracket;
    let mut f_lo = shoot_mismatch(lo, ham, config)?;
    let f_hi = shoot_mismatch(hi, ham, config)?;
    if f_lo == 0.0 {
        return Ok(result(lo, 0, 0.0));
    }
    if f_hi == 0.0 {
        return Ok(result(hi, 0, 0.0));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(OracleError::NoSignChange { lo, hi, f_lo, f_hi });
    }
    for it in 1..=MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = shoot_mismatch(mid, ham, config)?;
        if f_mid == 0.0 || hi - lo < config.tol {
            return Ok(result(mid, it, f_mid.abs()));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(OracleError::IterationCap(MAX_ITERATIONS))
}

fn result(kappa: f64, iterations: usize, residual: f64) -> EigenResult {
    EigenResult {
        kappa,
        energy: -kappa * kappa,
        iterations,
        residual,
    }
}

/// Recorded decaying solution at a given κ, unnormalized.
pub fn shoot_profile(kappa: f64, ham: &Hamiltonian, config: &ShootingConfig) -> Result<Profile, OracleError> {
    let mut profile = Profile {
        xs: Vec::new(),
        psi: Vec::new(),
        dpsi: Vec::new(),
    };
    rk4_inward(kappa, ham, config, Some(&mut profile))?;
    Ok(profile)
}

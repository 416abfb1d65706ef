use statrs::function::gamma::ln_gamma;

use super::AnalysisError;

/// `(ln|Γ(x)|, sign Γ(x))`, with reflection for `x <= 0`.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64), AnalysisError> {
    if x > 0.0 {
        return Ok((ln_gamma(x), 1.0));
    }
    if x == x.floor() {
        return Err(AnalysisError::GammaPole(x));
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    let sin = (std::f64::consts::PI * x).sin();
    let ln = std::f64::consts::PI.ln() - sin.abs().ln() - ln_gamma(1.0 - x);
    Ok((ln, sin.signum()))
}

/// `Γ(ε+n) Γ(ε+n+μ+1/2) / (n! Γ(2ε+n+μ+1))`, assembled in logs.
pub fn gamma_estimate(n: u64, epsilon: f64, mu: f64) -> Result<f64, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::InvalidRange("n must be at least 1".into()));
    }
    let n = n as f64;
    let (l1, s1) = ln_gamma_signed(epsilon + n)?;
    let (l2, s2) = ln_gamma_signed(epsilon + n + mu + 0.5)?;
    let (l3, s3) = ln_gamma_signed(2.0 * epsilon + n + mu + 1.0)?;
    Ok(s1 * s2 * s3 * (l1 + l2 - ln_gamma(n + 1.0) - l3).exp())
}

/// `c_{m+1}/c_m` of the λ = 0 two-term recurrence.
fn two_term_ratio(m: f64, epsilon: f64, mu: f64) -> f64 {
    (epsilon + m) * (epsilon + m + mu + 0.5) / ((m + 1.0) * (2.0 * epsilon + m + mu + 1.0))
}

fn check_range(n_lo: u64, n_hi: u64) -> Result<(), AnalysisError> {
    if n_lo < 10 || n_hi < 10 * n_lo {
        return Err(AnalysisError::InvalidRange(format!(
            "need n_hi >= 10 n_lo >= 100, got [{n_lo}, {n_hi}]"
        )));
    }
    Ok(())
}

/// Least-squares slope of `ln|h_n|` against `ln n`.
fn slope_of(log_h: &[(f64, f64)]) -> f64 {
    let k = log_h.len() as f64;
    let (sx, sy) = log_h.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let (num, den) = log_h
        .iter()
        .fold((0.0, 0.0), |(n, d), (x, y)| (n + (x - mx) * (y - my), d + (x - mx) * (x - mx)));
    num / den
}

/// Power-law exponent of the λ = 0 coefficients on `[n_lo, n_hi]`,
/// iterated from `h_{n_lo} = 1`.
pub fn tail_fit(epsilon: f64, mu: f64, n_lo: u64, n_hi: u64) -> Result<f64, AnalysisError> {
    check_range(n_lo, n_hi)?;
    let mut log_h = 0.0;
    let mut points = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    for m in n_lo..=n_hi {
        points.push(((m as f64).ln(), log_h));
        log_h += two_term_ratio(m as f64, epsilon, mu).abs().ln();
    }
    Ok(slope_of(&points))
}

/// As [`tail_fit`] with the `λ c_{n-1}` term of the full recurrence kept.
pub fn tail_fit_coupled(epsilon: f64, mu: f64, lambda: f64, n_lo: u64, n_hi: u64) -> Result<f64, AnalysisError> {
    check_range(n_lo, n_hi)?;
    // r_m = c_{m+1}/c_m = (β_m + λ / r_{m-1}) / (-α_{m+1}), started on the λ = 0 ratio
    let beta = |m: f64| (epsilon + m) * (epsilon + m + mu + 0.5);
    let minus_alpha = |m: f64| m * (2.0 * epsilon + m + mu);
    let mut r_prev = two_term_ratio(n_lo as f64 - 1.0, epsilon, mu);
    let mut log_h = 0.0;
    let mut points = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    for m in n_lo..=n_hi {
        points.push(((m as f64).ln(), log_h));
        let m = m as f64;
        let r = (beta(m) + lambda / r_prev) / minus_alpha(m + 1.0);
        log_h += r.abs().ln();
        r_prev = r;
    }
    Ok(slope_of(&points))
}

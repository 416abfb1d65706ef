use super::OracleError;

const NODES: usize = 20;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

fn composite(f: impl Fn(f64) -> f64, upper: f64, panel: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let panels = (upper / panel).ceil() as usize;
    let w = upper / panels as f64;
    let mut total = 0.0;
    for j in 0..panels {
        let mid = (j as f64 + 0.5) * w;
        let mut part = 0.0;
        for (x, wt) in rule.0.iter().zip(&rule.1) {
            part += wt * f(mid + 0.5 * w * x);
        }
        total += 0.5 * w * part;
    }
    total
}

/// `4μ(μ+1) / ((μ+1/2)(μ+3/2))`.
pub fn first_order_slope_closed(mu: f64) -> f64 {
    4.0 * mu * (mu + 1.0) / ((mu + 0.5) * (mu + 1.5))
}

/// `dE/dλ` at `λ = 0`: `⟨ψ₀|4 sech⁴|ψ₀⟩ / ⟨ψ₀|ψ₀⟩` with `ψ₀ = sech^μ`,
/// by composite Gauss–Legendre on the half line.
pub fn first_order_slope(mu: f64) -> Result<f64, OracleError> {
    if !(mu > 0.0) {
        return Err(OracleError::Quadrature(format!("mu = {mu} must be positive")));
    }
    let rule = gauss_legendre(NODES);
    // sech^{2μ} x ≤ 4^μ e^{-2μx}: the tail past `upper` is below e^{-70}
    let upper = 35.0 / mu + std::f64::consts::LN_2 + 5.0;
    // the integrand narrows like 1/√μ
    let base = 0.5 / (1.0 + 0.5 * mu.sqrt());
    // log form keeps large powers representable
    let log_sech = |x: f64| -(x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2);
    let num = |x: f64| 4.0 * ((2.0 * mu + 4.0) * log_sech(x)).exp();
    let den = |x: f64| (2.0 * mu * log_sech(x)).exp();
    let ratio = |panel: f64| composite(num, upper, panel, &rule) / composite(den, upper, panel, &rule);
    let (coarse, fine) = (ratio(base), ratio(0.5 * base));
    if (coarse - fine).abs() > 1e-12 * fine.abs() {
        return Err(OracleError::Quadrature(format!("panel refinement moved the slope from {coarse} to {fine}")));
    }
    let closed = first_order_slope_closed(mu);
    if (fine - closed).abs() > 1e-9 {
        return Err(OracleError::Quadrature(format!("quadrature {fine} disagrees with closed form {closed}")));
    }
    Ok(fine)
}

use serde::Serialize;

use crate::algebra::Rational;
use crate::engine::{energy_eval, solve_tau_numeric, ModelParams, Parity, SolveOptions, TauSeries};
use crate::oracle::{find_kappa, find_kappa_precise, to_two_float, ExactHamiltonian, Hamiltonian, ShootingConfig};
use crate::par::{map_slice, Execution};

use super::AnalysisError;

pub const SCAN_WINDOW: f64 = 0.05;
/// Half-width of the oracle bracket around the series κ.
const BRACKET: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// RK4 shooting in `f64`.
    Standard,
    /// Taylor shooting in double-double; resolves differences far below
    /// `f64` rounding of the energy.
    Precise,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    #[serde(serialize_with = "crate::cli::json::rational_str")]
    pub lambda: Rational,
    pub e_series: f64,
    pub e_oracle: f64,
    /// `|E_oracle - E_series|`, computed before rounding to `f64` in
    /// precise mode.
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanTable {
    pub mu: String,
    pub order: usize,
    pub oracle: OracleMode,
    pub rows: Vec<ScanRow>,
    /// Least-squares slope of `ln|Δ|` against `ln λ` over rows with `λ > 0`.
    pub slope: Option<f64>,
}

/// Least-squares slope through `(ln x, ln y)`; needs two usable points.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let num: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Some(num / den)
}

fn scan_row(
    mu: &Rational,
    lambda: &Rational,
    tau: &TauSeries<Rational>,
    mode: OracleMode,
) -> Result<ScanRow, AnalysisError> {
    let params = ModelParams::ground(mu.clone(), lambda.clone())?;
    let series = energy_eval(&params, tau)?;
    let bracket = ShootingConfig::around(Parity::Even, series.kappa, BRACKET);
    let (e_oracle, abs_diff) = match mode {
        OracleMode::Standard => {
            let r = find_kappa(&Hamiltonian::from(&params), &bracket)?;
            (r.energy, (r.energy - series.energy).abs())
        }
        OracleMode::Precise => {
            let r = find_kappa_precise(&ExactHamiltonian::from(&params), bracket.bracket)?;
            let diff = r.energy - to_two_float(&series.energy_exact);
            (r.energy.hi(), diff.hi().abs())
        }
    };
    Ok(ScanRow {
        lambda: lambda.clone(),
        e_series: series.energy,
        e_oracle,
        abs_diff,
    })
}

/// Series energy at order `K` against the oracle for each λ.
pub fn order_error_scan(
    mu: &Rational,
    lambdas: &[Rational],
    order: usize,
    mode: OracleMode,
    exec: Execution,
) -> Result<ScanTable, AnalysisError> {
    if let Some(bad) = lambdas.iter().find(|l| l.to_f64().abs() > SCAN_WINDOW) {
        return Err(AnalysisError::OutsideWindow(bad.to_string()));
    }
    let tau = solve_tau_numeric(mu, order, &SolveOptions::from_env())?.tau;
    let rows = map_slice(exec, lambdas, |l| scan_row(mu, l, &tau, mode))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.lambda.is_positive())
        .map(|r| (r.lambda.to_f64(), r.abs_diff))
        .collect();
    Ok(ScanTable {
        mu: mu.to_string(),
        order,
        oracle: mode,
        slope: fit_slope(&points),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [0.1, 0.2, 0.4].iter().map(|&x: &f64| (x, 3.0 * x.powi(4))).collect();
        assert!((fit_slope(&pts).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(fit_slope(&pts[..1]), None);
    }

    #[test]
    fn unperturbed_row_is_exact() {
        let t = order_error_scan(&Rational::from_int(2), &[Rational::zero()], 3, OracleMode::Standard, Execution::Sequential)
            .unwrap();
        assert!(t.rows[0].abs_diff <= 1e-9);
        assert_eq!(t.slope, None);
    }

    #[test]
    fn window_enforced() {
        let r = order_error_scan(&Rational::from_int(2), &[Rational::frac(1, 10)], 3, OracleMode::Standard, Execution::Sequential);
        assert!(matches!(r, Err(AnalysisError::OutsideWindow(_))));
    }

    #[test]
    fn first_order_scaling() {
        let lambdas: Vec<Rational> = [50, 100, 200, 400].iter().map(|&d| Rational::frac(1, d)).collect();
        let t = order_error_scan(&Rational::from_int(2), &lambdas, 1, OracleMode::Standard, Execution::Parallel).unwrap();
        let slope = t.slope.unwrap();
        assert!((1.5..=2.5).contains(&slope), "{slope}");
    }
}

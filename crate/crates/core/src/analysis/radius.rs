use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Rational;
use crate::engine::TauSeries;

use super::AnalysisError;

pub const MIN_RADIUS_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusMethod {
    Ratio,
    Root,
}

impl fmt::Display for RadiusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadiusMethod::Ratio => "ratio",
            RadiusMethod::Root => "root",
        })
    }
}

impl FromStr for RadiusMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ratio" => Ok(RadiusMethod::Ratio),
            "root" => Ok(RadiusMethod::Root),
            other => Err(format!("unknown radius method {other:?} (expected ratio or root)")),
        }
    }
}

/// Raw estimate sequence; no extrapolation or convergence claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusReport {
    pub method: RadiusMethod,
    /// `(k, estimate)` for each usable order `k >= 1`.
    pub estimates: Vec<(usize, f64)>,
    /// Orders skipped because a coefficient vanished.
    pub skipped: Vec<usize>,
}

impl RadiusReport {
    pub fn last(&self) -> Option<f64> {
        self.estimates.last().map(|e| e.1)
    }
}

/// Estimates from a plain coefficient list `c_0, c_1, …`.
pub fn radius_from_coeffs(coeffs: &[f64], method: RadiusMethod) -> RadiusReport {
    let mut estimates = Vec::new();
    let mut skipped = Vec::new();
    for k in 1..coeffs.len() {
        let ck = coeffs[k];
        let estimate = match method {
            RadiusMethod::Ratio if ck != 0.0 && coeffs[k - 1] != 0.0 => Some((coeffs[k - 1] / ck).abs()),
            RadiusMethod::Root if ck != 0.0 => Some(ck.abs().powf(-1.0 / k as f64)),
            _ => None,
        };
        match estimate {
            Some(e) => estimates.push((k, e)),
            None => skipped.push(k),
        }
    }
    if !skipped.is_empty() {
        log::warn!("radius estimate skipped orders {skipped:?} with vanishing coefficients");
    }
    RadiusReport {
        method,
        estimates,
        skipped,
    }
}

/// Ratio `|τ⁽ᵏ⁻¹⁾/τ⁽ᵏ⁾|` or root `|τ⁽ᵏ⁾|^{-1/k}` estimates; the `k = 1` ratio
/// involves `τ⁽⁰⁾ = a` and is reported like the rest.
pub fn radius_estimate(tau: &TauSeries<Rational>, method: RadiusMethod) -> Result<RadiusReport, AnalysisError> {
    if tau.order() < MIN_RADIUS_ORDER {
        return Err(AnalysisError::OrderTooLow {
            needed: MIN_RADIUS_ORDER,
            got: tau.order(),
        });
    }
    let coeffs: Vec<f64> = tau.coeffs().iter().map(Rational::to_f64).collect();
    Ok(radius_from_coeffs(&coeffs, method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{solve_tau_numeric, strength_param, SolveOptions};

    #[test]
    fn geometric_series_radius() {
        let coeffs: Vec<f64> = (0..12).map(|k| 2f64.powi(k)).collect();
        for method in [RadiusMethod::Ratio, RadiusMethod::Root] {
            let r = radius_from_coeffs(&coeffs, method);
            assert!((r.last().unwrap() - 0.5).abs() < 1e-12, "{method}");
        }
    }

    #[test]
    fn zeros_are_skipped() {
        let r = radius_from_coeffs(&[1.0, 0.0, 4.0, 8.0], RadiusMethod::Ratio);
        assert_eq!(r.skipped, vec![1, 2]);
        assert_eq!(r.estimates, vec![(3, 0.5)]);
    }

    #[test]
    fn tau_estimates_are_positive_and_depend_on_a() {
        let opts = SolveOptions::default();
        let mu_for = |a: Rational| &(&a * &Rational::from_int(2)) - &Rational::frac(1, 2);
        let run = |a: Rational, m| {
            let tau = solve_tau_numeric(&mu_for(a.clone()), 8, &opts).unwrap().tau;
            assert_eq!(tau.a(), &a);
            radius_estimate(&tau, m).unwrap()
        };
        for method in [RadiusMethod::Ratio, RadiusMethod::Root] {
            let r = run(Rational::frac(5, 4), method);
            assert!(r.estimates.iter().all(|(_, e)| e.is_finite() && *e > 0.0 && *e < 1e6));
            let other = run(Rational::one(), method);
            assert_ne!(r.last(), other.last());
        }
        let short = solve_tau_numeric(&Rational::from_int(2), 5, &opts).unwrap().tau;
        assert!(radius_estimate(&short, RadiusMethod::Root).is_err());
        assert_eq!(strength_param(&Rational::from_int(2)).unwrap(), Rational::frac(5, 4));
    }
}

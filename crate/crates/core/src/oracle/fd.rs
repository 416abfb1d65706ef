//! Second oracle: three-point finite differences on `[-x_max, x_max]`
//! with Dirichlet ends, eigenvalues by Sturm-count bisection, and one
//! Richardson step (grid spacing halved) to cancel the `O(h²)` error.

use crate::par::{map_range, Execution};

use super::{Hamiltonian, OracleError};

pub const MIN_GRID: usize = 500;
/// States with unperturbed κ below this are not resolved on typical boxes.
const RESOLVED_KAPPA: f64 = 0.5;
const COUNT_WINDOW: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    /// Negative eigenvalues, ascending, after extrapolation.
    pub energies: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
}

struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    fn new(ham: &Hamiltonian, grid_n: usize, x_max: f64) -> Self {
        let h = 2.0 * x_max / (grid_n + 1) as f64;
        let inv_h2 = 1.0 / (h * h);
        let diag = (1..=grid_n)
            .map(|i| 2.0 * inv_h2 + ham.potential(-x_max + i as f64 * h))
            .collect();
        Tridiagonal { diag, off: -inv_h2 }
    }

    /// Number of eigenvalues strictly below `sigma`.
    fn count_below(&self, sigma: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 { a - sigma } else { a - sigma - off2 / d };
            if d == 0.0 {
                d = f64::EPSILON * (a.abs() + sigma.abs()).max(1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn lower_bound(&self) -> f64 {
        self.diag.iter().fold(f64::INFINITY, |m, &a| m.min(a)) - 2.0 * self.off.abs()
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection.
    fn eigenvalue(&self, k: usize, upper: f64) -> f64 {
        let (mut lo, mut hi) = (self.lower_bound(), upper);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Unperturbed states `2N + p < μ` whose `κ = μ - 2N - p` is resolved.
pub fn expected_bound_count(mu: f64) -> usize {
    (0..).take_while(|&m| mu - m as f64 >= RESOLVED_KAPPA).count()
}

/// Lowest negative eigenvalues of the discretized Hamiltonian.
pub fn fd_spectrum(ham: &Hamiltonian, grid_n: usize, x_max: f64, exec: Execution) -> Result<FdSpectrum, OracleError> {
    if grid_n < MIN_GRID {
        return Err(OracleError::InvalidConfig(format!("grid_n = {grid_n} is below {MIN_GRID}")));
    }
    let coarse_m = Tridiagonal::new(ham, grid_n, x_max);
    let fine_m = Tridiagonal::new(ham, 2 * grid_n + 1, x_max);
    let found = fine_m.count_below(0.0);
    // outside the perturbative window levels may legitimately leave the well
    let expected = if ham.lambda.abs() <= COUNT_WINDOW { expected_bound_count(ham.mu) } else { 0 };
    if found < expected {
        return Err(OracleError::GridTooCoarse { grid_n, found, expected });
    }
    // the coarse grid may push a shallow level just above zero
    let upper = 1.0;
    let coarse = map_range(exec, found, |k| coarse_m.eigenvalue(k, upper));
    let fine = map_range(exec, found, |k| fine_m.eigenvalue(k, upper));
    let energies = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .filter(|e| *e < 0.0)
        .collect();
    Ok(FdSpectrum { energies, coarse, fine })
}

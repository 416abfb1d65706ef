//! Diagnostics on the perturbation series: large-n behaviour of the
//! coefficients, structure of the closed forms, radius estimates and the
//! error scaling against the numerical oracle.

mod radius;
mod scan;
mod structure;
mod tail;

use thiserror::Error;

use crate::engine::EngineError;
use crate::oracle::OracleError;

pub use radius::{radius_estimate, radius_from_coeffs, RadiusMethod, RadiusReport, MIN_RADIUS_ORDER};
pub use scan::{fit_slope, order_error_scan, OracleMode, ScanRow, ScanTable, SCAN_WINDOW};
pub use structure::{expected_degree, structure_check, Clauses, StructureReport};
pub use tail::{gamma_estimate, ln_gamma_signed, tail_fit, tail_fit_coupled};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("Gamma function pole at argument {0}")]
    GammaPole(f64),
    #[error("invalid index range: {0}")]
    InvalidRange(String),
    #[error("lambda = {0} lies outside the scan window |lambda| <= 0.05")]
    OutsideWindow(String),
    #[error("radius estimates need order at least {needed}, got {got}")]
    OrderTooLow { needed: usize, got: usize },
    #[error("structure check needs K >= 2, got {0}")]
    StructureOrder(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

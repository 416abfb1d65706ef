//! Exact arithmetic: rationals, univariate polynomials and rational functions
//! in the strength parameter `a`, truncated power series in the coupling, and
//! affine expressions in a single pending unknown.

mod affine;
mod intpoly;
mod poly;
mod ratfunc;
mod rational;
mod series;

use std::fmt;

use thiserror::Error;

pub(crate) use intpoly::IntPoly;

pub use affine::AffineExpr;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;
pub use series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inexact polynomial division (nonzero remainder)")]
    InexactDivision,
    #[error("shift-down of a series with nonzero constant term")]
    NonZeroConstantTerm,
    #[error("product of two expressions in the pending unknown")]
    QuadraticUnknown,
    #[error("pending unknown has zero slope; cannot solve")]
    DegenerateUnknown,
    #[error("series order {requested} exceeds available order {available}")]
    OrderExtension { requested: usize, available: usize },
    #[error("series has non-invertible constant term")]
    NotInvertible,
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
    #[error("evaluation hits a pole at a = {0}")]
    Pole(String),
}

/// Coefficient ring for [`TruncatedSeries`].
///
/// Multiplication is fallible because [`AffineExpr`] rejects products that
/// would be quadratic in the pending unknown.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError>;
    fn scale_rational(&self, r: &Rational) -> Self;
}

/// A coefficient field: exact rationals (numeric mode) or rational functions
/// of `a` (symbolic mode).
pub trait FieldCoeff: Coeff + Send + Sync {
    /// True for coefficient kinds that carry `a` symbolically.
    const SYMBOLIC: bool;

    fn try_div(&self, rhs: &Self) -> Result<Self, AlgebraError>;
    fn from_rational(r: &Rational) -> Self;
}

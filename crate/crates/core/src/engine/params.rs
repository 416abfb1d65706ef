use std::fmt;

use crate::algebra::Rational;

use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_index(p: u32) -> Option<Parity> {
        match p {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Physical inputs; the x-scale is fixed to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub mu: Rational,
    pub lambda: Rational,
    pub parity: Parity,
    pub level: u32,
}

impl ModelParams {
    pub fn new(mu: Rational, lambda: Rational, parity: Parity, level: u32) -> Result<Self, EngineError> {
        let params = ModelParams {
            mu,
            lambda,
            parity,
            level,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn ground(mu: Rational, lambda: Rational) -> Result<Self, EngineError> {
        ModelParams::new(mu, lambda, Parity::Even, 0)
    }

    /// Checks `mu > 0` and `0 <= 2N + p < mu`.
    pub fn validate(&self) -> Result<(), EngineError> {
        if !self.mu.is_positive() {
            return Err(EngineError::NonPositiveMu(self.mu.to_string()));
        }
        let m = Rational::from_int(2 * self.level as i64 + self.parity.index() as i64);
        if m >= self.mu {
            return Err(EngineError::StateOutOfRange {
                mu: self.mu.to_string(),
                level: self.level,
                parity: self.parity.index(),
            });
        }
        Ok(())
    }

    pub fn is_ground(&self) -> bool {
        self.level == 0 && self.parity == Parity::Even
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64()
    }

    pub fn lambda_f64(&self) -> f64 {
        self.lambda.to_f64()
    }

    pub fn with_lambda(&self, lambda: Rational) -> Self {
        ModelParams {
            lambda,
            ..self.clone()
        }
    }
}

/// `a = (2mu + 1) / 4`.
pub fn strength_param(mu: &Rational) -> Result<Rational, EngineError> {
    if !mu.is_positive() {
        return Err(EngineError::NonPositiveMu(mu.to_string()));
    }
    Ok((mu * &Rational::from_int(2) + Rational::one()) * Rational::frac(1, 4))
}

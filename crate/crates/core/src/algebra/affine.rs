use super::{AlgebraError, Coeff, FieldCoeff, Rational};

/// `constant + slope * u` for the single pending unknown `u`.
#[derive(Clone, PartialEq, Debug)]
pub struct AffineExpr<F> {
    pub constant: F,
    pub slope: F,
}

impl<F: FieldCoeff> AffineExpr<F> {
    pub fn new(constant: F, slope: F) -> Self {
        AffineExpr { constant, slope }
    }

    pub fn constant(c: F) -> Self {
        AffineExpr {
            constant: c,
            slope: F::zero(),
        }
    }

    /// The pending unknown itself.
    pub fn unknown() -> Self {
        AffineExpr {
            constant: F::zero(),
            slope: F::one(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn substitute(&self, u: &F) -> Result<F, AlgebraError> {
        Ok(self.constant.add_ref(&self.slope.try_mul(u)?))
    }

    /// Root of `constant + slope * u = 0`.
    pub fn solve_zero(&self) -> Result<F, AlgebraError> {
        if self.slope.is_zero() {
            return Err(AlgebraError::DegenerateUnknown);
        }
        self.constant.neg_ref().try_div(&self.slope)
    }
}

impl<F: FieldCoeff> Coeff for AffineExpr<F> {
    fn zero() -> Self {
        AffineExpr::constant(F::zero())
    }
    fn one() -> Self {
        AffineExpr::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        AffineExpr {
            constant: self.constant.add_ref(&rhs.constant),
            slope: self.slope.add_ref(&rhs.slope),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        AffineExpr {
            constant: self.constant.sub_ref(&rhs.constant),
            slope: self.slope.sub_ref(&rhs.slope),
        }
    }
    fn neg_ref(&self) -> Self {
        AffineExpr {
            constant: self.constant.neg_ref(),
            slope: self.slope.neg_ref(),
        }
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self.slope.is_zero(), rhs.slope.is_zero()) {
            (false, false) => Err(AlgebraError::QuadraticUnknown),
            (true, true) => Ok(AffineExpr::constant(self.constant.try_mul(&rhs.constant)?)),
            (true, false) => Ok(AffineExpr {
                constant: self.constant.try_mul(&rhs.constant)?,
                slope: self.constant.try_mul(&rhs.slope)?,
            }),
            (false, true) => Ok(AffineExpr {
                constant: self.constant.try_mul(&rhs.constant)?,
                slope: self.slope.try_mul(&rhs.constant)?,
            }),
        }
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        AffineExpr {
            constant: self.constant.scale_rational(r),
            slope: self.slope.scale_rational(r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(c: i64, s: i64) -> AffineExpr<Rational> {
        AffineExpr::new(Rational::from_int(c), Rational::from_int(s))
    }

    #[test]
    fn linear_arithmetic() {
        assert_eq!(aff(2, 3).add_ref(&aff(1, -1)), aff(3, 2));
        assert_eq!(aff(2, 0).try_mul(&aff(1, 1)).unwrap(), aff(2, 2));
        assert_eq!(aff(1, 1).try_mul(&aff(1, 1)), Err(AlgebraError::QuadraticUnknown));
    }

    #[test]
    fn solving() {
        assert_eq!(aff(3, 2).solve_zero().unwrap(), Rational::frac(-3, 2));
        assert_eq!(aff(3, 0).solve_zero(), Err(AlgebraError::DegenerateUnknown));
        assert_eq!(aff(3, 2).substitute(&Rational::from_int(5)).unwrap(), Rational::from_int(13));
    }
}

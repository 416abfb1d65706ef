use super::{AlgebraError, Coeff, FieldCoeff, Rational};

/// Power series in the coupling λ truncated at an explicit order `K`:
/// exactly `K + 1` coefficients, nothing known beyond.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> TruncatedSeries<T> {
    /// Panics on an empty coefficient list (order would be negative).
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> &T {
        &self.coeffs[0]
    }

    /// Drops coefficients above `order`; asking for more than is known fails.
    pub fn truncate(&self, order: usize) -> Result<Self, AlgebraError> {
        if order > self.order() {
            return Err(AlgebraError::OrderExtension {
                requested: order,
                available: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeffs[k].add_ref(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeffs[k].sub_ref(&rhs.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(Coeff::neg_ref).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = T::zero();
            for i in 0..=k {
                let (x, y) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&x.try_mul(y)?);
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn scale(&self, k: &T) -> Result<Self, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.try_mul(k))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale_rational(r)).collect(),
        }
    }

    /// Adds a constant to the λ⁰ coefficient.
    pub fn add_constant(&self, c: &T) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = coeffs[0].add_ref(c);
        TruncatedSeries { coeffs }
    }

    /// Divides by λ; the constant term must vanish and the order drops by one.
    pub fn shift_down(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::NonZeroConstantTerm);
        }
        if self.coeffs.len() == 1 {
            return Err(AlgebraError::OrderExtension {
                requested: 0,
                available: 0,
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplies by λ at unchanged order (the top coefficient falls off).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs[..self.coeffs.len() - 1].iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Horner evaluation at a concrete λ of the same coefficient kind.
    pub fn evaluate(&self, lambda: &T) -> Result<T, AlgebraError> {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(lambda)?.add_ref(c);
        }
        Ok(acc)
    }

    pub fn map<U: Coeff>(&self, f: impl FnMut(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Coeff, E>(
        &self,
        f: impl FnMut(&T) -> Result<U, E>,
    ) -> Result<TruncatedSeries<U>, E> {
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        })
    }
}

impl<F: FieldCoeff> TruncatedSeries<F> {
    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let inv0 = F::one().try_div(c0)?;
        let mut out: Vec<F> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = F::zero();
            for i in 1..=k {
                acc = acc.add_ref(&self.coeffs[i].try_mul(&out[k - i])?);
            }
            out.push(acc.neg_ref().try_mul(&inv0)?);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.mul(&rhs.inverse()?)
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::{AlgebraError, Coeff, FieldCoeff, Polynomial, Rational};

/// Rational function of `a` in canonical form.
///
/// Numerator and denominator have integer coefficients, no common factor,
/// joint integer content 1, and the denominator's leading coefficient is
/// positive. Zero is `0/1`. Two values are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let (n, ln) = num.to_int_parts();
        let (d, ld) = den.to_int_parts();
        // num/den = (n/ln)/(d/ld) = (n*ld)/(d*ln)
        let n = n.scale(&ld);
        let d = d.scale(&ln);
        let g = n.gcd(&d);
        Ok(Self::finish(n.div_exact(&g)?, d.div_exact(&g)?))
    }

    /// Joint content and sign normalization of an already coprime pair.
    fn finish(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if c.is_one() {
            return RationalFunction { num, den };
        }
        RationalFunction {
            num: num.div_scalar(&c),
            den: den.div_scalar(&c),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    /// The indeterminate `a`.
    pub fn var() -> Self {
        RationalFunction {
            num: IntPoly::new(vec![BigInt::zero(), BigInt::one()]),
            den: IntPoly::one(),
        }
    }

    pub fn constant(c: &Rational) -> Self {
        Self::finish(
            IntPoly::constant(c.numer().clone()),
            IntPoly::constant(c.denom().clone()),
        )
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let (n, l) = p.to_int_parts();
        Self::finish(n, IntPoly::constant(l))
    }

    /// From integer coefficient lists (ascending degree), normalizing.
    pub fn from_int_coeffs(num: Vec<BigInt>, den: Vec<BigInt>) -> Result<Self, AlgebraError> {
        let num = Polynomial::from_int_poly(&IntPoly::new(num));
        let den = Polynomial::from_int_poly(&IntPoly::new(den));
        Self::new(num, den)
    }

    pub fn numerator(&self) -> Polynomial {
        Polynomial::from_int_poly(&self.num)
    }

    pub fn denominator(&self) -> Polynomial {
        Polynomial::from_int_poly(&self.den)
    }

    pub fn numerator_ints(&self) -> &[BigInt] {
        self.num.coeffs()
    }

    pub fn denominator_ints(&self) -> &[BigInt] {
        self.den.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn eval(&self, a: &Rational) -> Result<Rational, AlgebraError> {
        let den = self.denominator().eval(a);
        if den.is_zero() {
            return Err(AlgebraError::Pole(a.to_string()));
        }
        self.numerator().eval(a).checked_div(&den)
    }

    pub fn eval_f64(&self, a: f64) -> f64 {
        self.numerator().eval_f64(a) / self.denominator().eval_f64(a)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, true)
    }

    fn add_signed(&self, rhs: &Self, subtract: bool) -> Self {
        let rnum = if subtract { rhs.num.neg() } else { rhs.num.clone() };
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RationalFunction {
                num: rnum,
                den: rhs.den.clone(),
            };
        }
        if self.den == rhs.den {
            let num = self.num.add(&rnum);
            if num.is_zero() {
                return RationalFunction::zero();
            }
            let g = num.gcd(&self.den);
            return Self::finish(
                num.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            );
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            let num = self.num.scale(&rhs.den.coeffs()[0]).add(&rnum.scale(&self.den.coeffs()[0]));
            let den = self.den.mul(&rhs.den);
            return Self::finish(num, den);
        }
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rnum.mul(&d1));
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let den = self.den.mul(&d2);
        if g.is_constant() {
            return Self::finish(num, den);
        }
        // Only factors of g can be shared with the new numerator.
        let h = num.gcd(&g);
        Self::finish(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::finish(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() || self.is_zero() {
            return RationalFunction::zero();
        }
        Self::finish(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        RationalFunction {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPoly::one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({}) / ({})", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Coeff for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(rhs))
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl FieldCoeff for RationalFunction {
    const SYMBOLIC: bool = true;

    fn try_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.checked_div(rhs)
    }
    fn from_rational(r: &Rational) -> Self {
        RationalFunction::constant(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(rf(&[2, 2], &[4, 4]), RationalFunction::constant(&Rational::frac(1, 2)));
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // -(1+4a)/(4a(1+2a)) is already reduced
        let t1 = rf(&[-1, -4], &[0, 4, 8]);
        let ints: Vec<i64> = t1.numerator_ints().iter().map(|b| b.try_into().unwrap()).collect();
        assert_eq!(ints, vec![-1, -4]);
        assert_eq!(
            RationalFunction::new(poly(&[1]), Polynomial::zero()),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn sign_lives_in_numerator() {
        let r = rf(&[1], &[0, -2]);
        assert_eq!(r.numerator(), poly(&[-1]));
        assert_eq!(r.denominator(), poly(&[0, 2]));
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let n = Polynomial::new(vec![Rational::frac(1, 2), Rational::frac(1, 3)]);
        let d = Polynomial::new(vec![Rational::frac(1, 6)]);
        assert_eq!(RationalFunction::new(n, d).unwrap(), rf(&[3, 2], &[1]));
    }

    #[test]
    fn arithmetic() {
        let a = RationalFunction::var();
        let one = RationalFunction::one();
        let x = one.checked_div(&a.add(&one)).unwrap();
        let y = one.checked_div(&a.sub(&one)).unwrap();
        // 1/(a+1) + 1/(a-1) = 2a/(a^2-1)
        assert_eq!(x.add(&y), rf(&[0, 2], &[-1, 0, 1]));
        assert_eq!(x.mul(&a.add(&one)), one);
        assert!(x.sub(&x).is_zero());
        assert_eq!(RationalFunction::zero().recip(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let t1 = rf(&[-1, -4], &[0, 4, 8]);
        assert_eq!(t1.eval(&Rational::frac(5, 4)).unwrap(), Rational::frac(-12, 35));
        assert!(matches!(t1.eval(&Rational::zero()), Err(AlgebraError::Pole(_))));
    }
}

//! Dense polynomials over the integers, ascending degree. These back the
//! rational-function arithmetic; gcds are computed with a primitive
//! pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides every coefficient by `k`, which must divide all of them.
    pub fn div_scalar(&self, k: &BigInt) -> IntPoly {
        if k.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, exp: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / divisor` in Z[x].
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly, AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if divisor.coeffs.len() == 1 {
            let k = &divisor.coeffs[0];
            if self.coeffs.iter().any(|c| !(c % k).is_zero()) {
                return Err(AlgebraError::InexactDivision);
            }
            return Ok(self.div_scalar(k));
        }
        let nd = self.coeffs.len() - 1;
        if nd < dd {
            return Err(AlgebraError::InexactDivision);
        }
        let lc = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(AlgebraError::InexactDivision);
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(IntPoly::new(quot))
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lc = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let top = rem.last().cloned().unwrap();
            for c in rem.iter_mut() {
                *c *= lc;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &top * d;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            // Keep growth in check between elimination steps.
            let g = rem.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            if !g.is_zero() && !g.is_one() {
                for c in rem.iter_mut() {
                    *c /= &g;
                }
            }
        }
        IntPoly::new(rem)
    }

    /// Primitive gcd (content 1, positive leading coefficient). The gcd of two
    /// zero polynomials is zero.
    pub fn gcd(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return rhs.primitive();
        }
        if rhs.is_zero() {
            return self.primitive();
        }
        if self.is_constant() || rhs.is_constant() {
            return IntPoly::one();
        }
        let mut a = self.primitive();
        let mut b = rhs.primitive();
        if a == b {
            return a;
        }
        // A shared root at zero is common enough here to peel off cheaply.
        let za = a.coeffs.iter().take_while(|c| c.is_zero()).count();
        let zb = b.coeffs.iter().take_while(|c| c.is_zero()).count();
        let z = za.min(zb);
        a = IntPoly::new(a.coeffs[za..].to_vec());
        b = IntPoly::new(b.coeffs[zb..].to_vec());
        let g = if a.is_constant() || b.is_constant() {
            IntPoly::one()
        } else {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
            }
            if a.div_exact(&b).is_ok() {
                b
            } else {
                loop {
                    let r = a.pseudo_rem(&b);
                    if r.is_zero() {
                        break b.primitive();
                    }
                    if r.is_constant() {
                        break IntPoly::one();
                    }
                    a = b;
                    b = r.primitive();
                }
            }
        };
        if z == 0 {
            g
        } else {
            let mut coeffs = vec![BigInt::zero(); z];
            coeffs.extend(g.coeffs);
            IntPoly::new(coeffs)
        }
    }
}

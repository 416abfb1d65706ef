//! Exact comparison of `τ⁽ᴷ⁾` with the factorized form
//! `-2^{-M} (1+4a) 𝒟(a) / (a^{2K-1} (1+2a)^{2K-1} ∏_{m=2}^{K} F_m^{K+1-m})`,
//! where `F_m` is the primitive integer form of `a + m/2` (`1+a`, `3+2a`, `2+a`, ...).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{IntPoly, Polynomial, Rational, RationalFunction};

use super::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Clauses {
    /// Numerator divisible by `1 + 4a`.
    pub numerator_divisible: bool,
    /// Denominator equals the expected product up to a constant.
    pub denominator_pattern: bool,
    /// The remaining constant is `2^{-M}` with an integer, content-free 𝒟.
    pub prefactor_power_of_two: bool,
    /// `deg 𝒟 = (K+1)(K+2)/2 - 3`.
    pub degree_law: bool,
}

impl Clauses {
    pub fn all(&self) -> bool {
        self.numerator_divisible && self.denominator_pattern && self.prefactor_power_of_two && self.degree_law
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub order: usize,
    /// `M` when the prefactor is a power of two.
    pub prefactor_pow2: Option<u32>,
    /// Overall constant in front of `-(1+4a) 𝒟 / denominator`.
    #[serde(serialize_with = "crate::cli::json::rational_str")]
    pub prefactor: Rational,
    /// 𝒟 with the factor `1 + 4a` removed, integer and content-free.
    #[serde(serialize_with = "crate::cli::json::polynomial_strs")]
    pub numerator_extra: Polynomial,
    /// Multiplicity of each linear factor in the denominator.
    pub denominator_exponents: Vec<(String, u32)>,
    pub degree_l: Option<usize>,
    pub expected_degree: usize,
    pub clauses: Clauses,
}

impl StructureReport {
    pub fn matches_ansatz(&self) -> bool {
        self.clauses.all()
    }
}

/// `L(K) = (K+1)(K+2)/2 - 3`.
pub fn expected_degree(order: usize) -> usize {
    (order + 1) * (order + 2) / 2 - 3
}

fn ints(c: &[i64]) -> IntPoly {
    IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

/// Primitive integer form of `a + m/2`.
fn half_shift(m: i64) -> (String, IntPoly) {
    if m % 2 == 0 {
        (format!("a+{}", m / 2), ints(&[m / 2, 1]))
    } else if m == 1 {
        ("1+2a".to_string(), ints(&[1, 2]))
    } else {
        (format!("a+{m}/2"), ints(&[m, 2]))
    }
}

fn expected_denominator(order: usize) -> IntPoly {
    let k = order as u32;
    let mut e = ints(&[0, 1]).pow(2 * k - 1).mul(&ints(&[1, 2]).pow(2 * k - 1));
    for m in 2..=order {
        e = e.mul(&half_shift(m as i64).1.pow(k + 1 - m as u32));
    }
    e
}

fn multiplicity(p: &IntPoly, factor: &IntPoly) -> (u32, IntPoly) {
    let mut rest = p.clone();
    let mut count = 0;
    while let Ok(q) = rest.div_exact(factor) {
        rest = q;
        count += 1;
    }
    (count, rest)
}

fn power_of_two(n: &BigInt) -> Option<u32> {
    if !n.is_positive() {
        return None;
    }
    let tz = n.trailing_zeros()? as u32;
    (n >> tz as usize).is_one().then_some(tz)
}

pub fn structure_check(tau_k: &RationalFunction, order: usize) -> Result<StructureReport, AnalysisError> {
    if order < 2 {
        return Err(AnalysisError::StructureOrder(order));
    }
    let num = IntPoly::new(tau_k.numerator_ints().to_vec());
    let den = IntPoly::new(tau_k.denominator_ints().to_vec());

    let reduced = num.div_exact(&ints(&[1, 4])).ok();
    let numerator_divisible = reduced.is_some();

    let mut denominator_exponents = Vec::new();
    let (count, mut rest) = multiplicity(&den, &ints(&[0, 1]));
    denominator_exponents.push(("a".to_string(), count));
    for m in 1..=order as i64 + 1 {
        let (label, factor) = half_shift(m);
        let (count, r) = multiplicity(&rest, &factor);
        rest = r;
        if count > 0 || m <= order as i64 {
            denominator_exponents.push((label, count));
        }
    }

    // D = d_c · E_K with d_c a constant
    let d_c = den
        .div_exact(&expected_denominator(order))
        .ok()
        .filter(IntPoly::is_constant)
        .map(|q| q.coeffs()[0].clone());
    let denominator_pattern = d_c.is_some();

    let (extra, prefactor, pow2) = match (&reduced, &d_c) {
        (Some(p), Some(dc)) => {
            let minus_p = p.neg();
            let g = minus_p.content();
            let extra = minus_p.div_scalar(&g);
            let prefactor = Rational::new(g.clone(), dc.clone()).expect("nonzero constant");
            let (q, r) = dc.div_rem(&g);
            let pow2 = if r.is_zero() { power_of_two(&q) } else { None };
            (extra, prefactor, pow2)
        }
        (Some(p), None) => (p.neg(), Rational::one(), None),
        (None, _) => (num.neg(), Rational::one(), None),
    };
    let numerator_extra = Polynomial::from_int_poly(&extra);
    let degree_l = numerator_extra.degree();
    let expected = expected_degree(order);
    let clauses = Clauses {
        numerator_divisible,
        denominator_pattern,
        prefactor_power_of_two: pow2.is_some(),
        degree_law: numerator_divisible && degree_l == Some(expected),
    };
    Ok(StructureReport {
        order,
        prefactor_pow2: pow2,
        prefactor,
        numerator_extra,
        denominator_exponents,
        degree_l,
        expected_degree: expected,
        clauses,
    })
}

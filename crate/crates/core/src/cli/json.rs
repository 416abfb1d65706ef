//! Lossless JSON forms: rationals as `"p/q"` strings, rational functions of
//! `a` as ascending integer coefficient strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{AlgebraError, Polynomial, Rational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub variable: String,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl From<&RationalFunction> for RationalFunctionJson {
    fn from(f: &RationalFunction) -> Self {
        let strs = |c: &[BigInt]| c.iter().map(BigInt::to_string).collect();
        RationalFunctionJson {
            variable: "a".to_string(),
            numerator: strs(f.numerator_ints()),
            denominator: strs(f.denominator_ints()),
        }
    }
}

impl RationalFunctionJson {
    pub fn to_rational_function(&self) -> Result<RationalFunction, AlgebraError> {
        if self.variable != "a" {
            return Err(AlgebraError::Parse(format!("unknown variable {:?}", self.variable)));
        }
        let parse = |v: &[String]| {
            v.iter()
                .map(|s| s.parse::<BigInt>().map_err(|_| AlgebraError::Parse(s.clone())))
                .collect::<Result<Vec<_>, _>>()
        };
        RationalFunction::from_int_coeffs(parse(&self.numerator)?, parse(&self.denominator)?)
    }
}

pub fn rational_str<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn rational_strs<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(Rational::to_string))
}

pub fn polynomial_strs<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    rational_strs(p.coeffs(), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = RationalFunction::new(Polynomial::from_ints(&[-1, -4]), Polynomial::from_ints(&[0, 4, 8])).unwrap();
        let j = RationalFunctionJson::from(&f);
        assert_eq!(j.numerator, vec!["-1", "-4"]);
        assert_eq!(j.denominator, vec!["0", "4", "8"]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"variable":"a","numerator":["-1","-4"],"denominator":["0","4","8"]}"#);
        let back: RationalFunctionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_rational_function().unwrap(), f);
    }

    #[test]
    fn rejects_bad_input() {
        let j = RationalFunctionJson {
            variable: "b".into(),
            numerator: vec!["1".into()],
            denominator: vec!["1".into()],
        };
        assert!(j.to_rational_function().is_err());
        let j = RationalFunctionJson {
            variable: "a".into(),
            numerator: vec!["x".into()],
            denominator: vec!["1".into()],
        };
        assert!(j.to_rational_function().is_err());
    }
}

//! Exact rational helpers shared by the interval and Lie-coordinate code.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a rational (expected \"p/q\" or an integer)")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(BigRational::from_integer)
            .map_err(|_| err()),
    }
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Serializes a rational as `{"num": .., "den": ..}` in lowest terms.
///
/// Components that fit in 64 bits are JSON integers; larger ones are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact(r.clone())
    }
}

fn big_int_value(x: &BigInt) -> IntValue {
    match x.to_i64() {
        Some(v) => IntValue::Small(v),
        None => IntValue::Big(x.to_string()),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum IntValue {
    Small(i64),
    Big(String),
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &big_int_value(self.0.numer()))?;
        st.serialize_field("den", &big_int_value(self.0.denom()))?;
        st.end()
    }
}

pub fn serialize_exact<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Exact(r.clone()).serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/7").unwrap(), ratio(3, 7));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn json_form() {
        let v = serde_json::to_string(&Exact(ratio(4096, 531441))).unwrap();
        assert_eq!(v, r#"{"num":4096,"den":531441}"#);
        let huge = BigRational::from_integer(BigInt::from(3).pow(50));
        let v = serde_json::to_value(Exact(huge)).unwrap();
        assert_eq!(v["num"], "717897987691852588770249");
    }
}

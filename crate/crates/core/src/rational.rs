//! Exact rational numbers.
//!
//! [`Rational`] is a thin newtype over `num_rational::BigRational`, which
//! keeps every value reduced with a positive denominator, so derived
//! equality is mathematical equality. On the wire a rational is the object
//! `{"num": "<digits>", "den": "<digits>"}` with decimal digit strings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `num / den`, reduced. Panics when `den == 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Decimal expansion rounded half-up to `places` digits after the
    /// point. Used only for human-facing output.
    pub fn to_decimal(&self, places: usize) -> String {
        let negative = self.0.is_negative();
        let num = self.0.numer().abs();
        let den = self.0.denom().clone();
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled: BigInt = num * &scale * 2u32 + &den;
        let rounded = scaled.div_floor(&(den * 2u32));
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let mut out = String::new();
        if negative && !rounded.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if places > 0 {
            out.push('.');
            out.push_str(&format!(
                "{:0>width$}",
                frac_part.to_string(),
                width = places
            ));
        }
        out
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Accepts `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("{t:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Rational::new(parse(n)?, d))
            }
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl PartialEq<u64> for Rational {
    fn eq(&self, other: &u64) -> bool {
        self.0.denom().is_one() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<u64> for Rational {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = Wire::deserialize(deserializer)?;
        let num = BigInt::from_str(&wire.num).map_err(D::Error::custom)?;
        let den = BigUint::from_str(&wire.den).map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, BigInt::from_biguint(Sign::Plus, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_on_construction() {
        let r = Rational::new(551, 68951);
        assert_eq!(r, Rational::new(29, 3629));
        assert_eq!(r.to_string(), "29/3629");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::new(5, 21).to_decimal(12), "0.238095238095");
        assert_eq!(Rational::new(2, 3).to_decimal(3), "0.667");
        assert_eq!(Rational::new(-1, 8).to_decimal(2), "-0.13");
        assert_eq!(Rational::from(7u64).to_decimal(0), "7");
    }

    #[test]
    fn wire_format() {
        let r = Rational::new(1061, 867941);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"num":"1061","den":"867941"}"#);
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<Rational>(r#"{"num":"1","den":"0"}"#).is_err());
        assert!(serde_json::from_str::<Rational>(r#"{"num":"1","den":"-3"}"#).is_err());
    }

    #[test]
    fn parse() {
        assert_eq!("10/4".parse::<Rational>().unwrap(), Rational::new(5, 2));
        assert_eq!(
            "-3".parse::<Rational>().unwrap(),
            Rational::from_integer(-3)
        );
        assert!("1/0".parse::<Rational>().is_err());
    }

    proptest! {
        #[test]
        fn product_with_reciprocal_is_one(a in 1i64..1_000_000, b in 1i64..1_000_000) {
            let x = Rational::new(a, b);
            prop_assert_eq!(&x * &x.recip(), Rational::one());
        }

        #[test]
        fn normalization_idempotent(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000) {
            let x = Rational::new(a, b);
            let again = Rational::new(x.numer().clone(), x.denom().clone());
            prop_assert_eq!(&again, &x);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(x.numer().gcd(x.denom()).is_one() || x.numer().is_zero());
        }
    }
}

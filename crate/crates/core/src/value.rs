//! Exact rational values.
//!
//! Every valuation and every comparison in the crate goes through [`Value`],
//! an arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. There is no floating point anywhere on the verdict path.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Value(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseValueError {
    #[error("empty value")]
    Empty,
    #[error("malformed value {0:?}: expected an integer, a decimal such as 1.5, or p/q")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Value {
    pub fn zero() -> Self {
        Value(BigRational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Value(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Panics if `denom == 0`.
    pub fn from_fraction(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Value(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Lossy conversion for human-facing rendering only.
    pub fn to_f64_lossy(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn parse_unsigned(digits: &str) -> Option<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(digits).ok()
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        if s.is_empty() {
            return Err(ParseValueError::Empty);
        }
        let malformed = || ParseValueError::Malformed(raw.to_string());
        let (negative, body) = split_sign(s);

        let magnitude = if let Some((p, q)) = body.split_once('/') {
            let p = parse_unsigned(p).ok_or_else(malformed)?;
            let q = parse_unsigned(q).ok_or_else(malformed)?;
            if q.is_zero() {
                return Err(ParseValueError::ZeroDenominator(raw.to_string()));
            }
            BigRational::new(p, q)
        } else if let Some((whole, frac)) = body.split_once('.') {
            let whole = parse_unsigned(whole).ok_or_else(malformed)?;
            let frac_num = parse_unsigned(frac).ok_or_else(malformed)?;
            let scale = num_traits::pow(BigInt::from(10u8), frac.len());
            BigRational::new(whole * &scale + frac_num, scale)
        } else {
            BigRational::from_integer(parse_unsigned(body).ok_or_else(malformed)?)
        };

        Ok(Value(if negative { -magnitude } else { magnitude }))
    }
}

/// Canonical text: `5`, `-3/2`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::from_integer(n)
    }
}

impl From<BigRational> for Value {
    fn from(r: BigRational) -> Self {
        Value(r)
    }
}

impl Add for Value {
    type Output = Value;
    fn add(self, rhs: Value) -> Value {
        Value(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Value> for &'a Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        Value(&self.0 + &rhs.0)
    }
}

impl Sub for Value {
    type Output = Value;
    fn sub(self, rhs: Value) -> Value {
        Value(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Value> for &'a Value {
    type Output = Value;
    fn sub(self, rhs: &Value) -> Value {
        Value(&self.0 - &rhs.0)
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-self.0)
    }
}

impl Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Value> for Value {
    fn sum<I: Iterator<Item = &'a Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| &acc + v)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct ValueVisitor;

impl<'de> Visitor<'de> for ValueVisitor {
    type Value = Value;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a value string (\"5\", \"1.5\", \"3/2\") or a JSON integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
        Ok(Value::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
        Ok(Value(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
        Err(E::custom(format!(
            "JSON number {v} is not exact; write it as a string such as \"1.5\" or \"3/2\""
        )))
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ValueVisitor)
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::check_modulus;

/// Which coefficient ring an element lives over; also its wire name
/// (`"F_5"`, `"Z"`, `"Q"`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RingKind {
    PrimeField(u64),
    Integers,
    Rationals,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::PrimeField(q) => write!(f, "F_{q}"),
            RingKind::Integers => f.write_str("Z"),
            RingKind::Rationals => f.write_str("Q"),
        }
    }
}

impl From<RingKind> for String {
    fn from(k: RingKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for RingKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        match s.as_str() {
            "Z" => Ok(RingKind::Integers),
            "Q" => Ok(RingKind::Rationals),
            _ => s
                .strip_prefix("F_")
                .and_then(|q| q.parse::<u64>().ok())
                .map(RingKind::PrimeField)
                .ok_or_else(|| Error::Parse(format!("unknown coefficient ring {s:?}"))),
        }
    }
}

/// A commutative coefficient ring, carried as a value so that the prime
/// field's modulus can be chosen at runtime.
pub trait CoeffRing: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn kind(&self) -> RingKind;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// `F_q` for a prime `q < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        check_modulus(q)?;
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.q as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.q - a % self.q) % self.q
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.q
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn kind(&self) -> RingKind {
        RingKind::PrimeField(self.q)
    }

    fn elem_to_json(&self, a: &u64) -> Value {
        Value::from(*a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u64> {
        if let Some(n) = v.as_u64() {
            return Ok(n % self.q);
        }
        v.as_i64()
            .map(|n| self.from_i64(n))
            .ok_or_else(|| Error::Parse(format!("expected an integer residue, got {v}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn kind(&self) -> RingKind {
        RingKind::Integers
    }

    fn elem_to_json(&self, a: &BigInt) -> Value {
        match a.to_i64() {
            Some(n) => Value::from(n),
            None => Value::from(a.to_string()),
        }
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigInt> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Parse(format!("expected an integer, got {n}"))),
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer, got {s:?}"))),
            _ => Err(Error::Parse(format!("expected an integer, got {v}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn kind(&self) -> RingKind {
        RingKind::Rationals
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::from(a.to_string())
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|n| self.from_i64(n))
                .ok_or_else(|| Error::Parse(format!("expected a rational, got {n}"))),
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("expected a rational, got {s:?}"))),
            _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_names_round_trip() {
        for k in [RingKind::PrimeField(7), RingKind::Integers, RingKind::Rationals] {
            assert_eq!(RingKind::try_from(String::from(k)).unwrap(), k);
        }
        assert!(RingKind::try_from("F_x".to_string()).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.mul(&3, &4), 2);
        assert!(PrimeField::new(9).is_err());
    }
}

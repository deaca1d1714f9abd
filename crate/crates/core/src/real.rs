//! Dual numeric tower: exact rationals when every input is rational, f64 otherwise.
//!
//! All builder inputs in the test corpus are rational, so the exact path is the
//! common one. Mixing an exact value with a float value demotes the result to
//! float ("contagion"). The representation kind is carried explicitly so that
//! downstream code can decide whether equality is exact or tolerance-based.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Default tolerance for float-mode comparisons.
pub const EPS: f64 = 1e-9;

/// A real number, exact or floating.
#[derive(Clone, Debug)]
pub enum Real {
    Rat(BigRational),
    F64(f64),
}

impl Real {
    pub fn zero() -> Self {
        Real::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Real::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Real::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational p/q. Panics if q == 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        Real::Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_f64(x: f64) -> Self {
        Real::F64(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Rat(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::F64(x) => *x,
        }
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Real::Rat(r) => Some(r),
            Real::F64(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Rat(r) => r.is_zero(),
            Real::F64(x) => x.abs() < EPS,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Real::Rat(r) => r.is_positive(),
            Real::F64(x) => *x > 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Real::Rat(r) => r.is_negative(),
            Real::F64(x) => *x < 0.0,
        }
    }

    /// Sign with float values snapped to zero inside [`EPS`].
    pub fn sign(&self) -> Ordering {
        match self {
            Real::Rat(r) => {
                if r.is_zero() {
                    Ordering::Equal
                } else if r.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Real::F64(x) => {
                if x.abs() < EPS {
                    Ordering::Equal
                } else if *x > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(r.abs()),
            Real::F64(x) => Real::F64(x.abs()),
        }
    }

    pub fn recip(&self) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(r.recip()),
            Real::F64(x) => Real::F64(1.0 / x),
        }
    }

    pub fn min(self, other: Real) -> Real {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Real) -> Real {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Tolerance-aware equality: exact when both sides are exact.
    pub fn close_to(&self, other: &Real, eps: f64) -> bool {
        match (self, other) {
            (Real::Rat(a), Real::Rat(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() < eps,
        }
    }

    /// Hashable key for cycle detection: exact rationals hash exactly,
    /// floats are quantized to the [`EPS`] grid.
    pub fn key(&self) -> RealKey {
        match self {
            Real::Rat(r) => RealKey::Rat(r.clone()),
            Real::F64(x) => RealKey::Quantized((x / EPS).round() as i64),
        }
    }

    /// Parses "p/q", "p" or a decimal literal.
    pub fn parse(s: &str) -> Option<Real> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(Real::Rat(BigRational::new(p, q)));
        }
        if let Ok(p) = s.parse::<BigInt>() {
            return Some(Real::Rat(BigRational::from_integer(p)));
        }
        if let Ok(x) = s.parse::<f64>() {
            // Decimal literals are exact rationals (finite decimal expansion).
            if x.is_finite() {
                if let Some(r) = BigRational::from_f64(x) {
                    return Some(Real::Rat(r));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealKey {
    Rat(BigRational),
    Quantized(i64),
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Real::F64(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Real::Rat(_) => ser.serialize_str(&self.to_string()),
            Real::F64(x) => ser.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(f64),
        }
        match Raw::deserialize(de)? {
            Raw::Str(s) => Real::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational: {s}"))),
            Raw::Num(x) => Ok(Real::F64(x)),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Real::Rat(a), Real::Rat(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Real::Rat(a), Real::Rat(b)) => a.partial_cmp(b),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                match (self, rhs) {
                    (Real::Rat(a), Real::Rat(b)) => Real::Rat(a.$method(b)),
                    _ => Real::F64(self.to_f64().$method(rhs.to_f64())),
                }
            }
        }
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(-r),
            Real::F64(x) => Real::F64(-x),
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Real::ratio(1, 3);
        let b = Real::ratio(1, 6);
        let s = &a + &b;
        assert!(s.is_exact());
        assert_eq!(s, Real::ratio(1, 2));
    }

    #[test]
    fn contagion_to_float() {
        let a = Real::ratio(1, 3);
        let b = Real::from_f64(0.5);
        assert!(!(&a * &b).is_exact());
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["3/4", "-7/2", "5", "0"] {
            let r = Real::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
    }
}

//! Exact scalars: rationals, the extended real line and membership levels.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Exact rational scalar used for every endpoint, level and distance.
pub type Real = BigRational;

pub fn int(v: i64) -> Real {
    Real::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Real {
    Real::new(BigInt::from(num), BigInt::from(den))
}

pub fn half(x: &Real) -> Real {
    x / int(2)
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses an unsigned decimal literal such as `12`, `0.6` or `.25` exactly.
pub fn parse_decimal(text: &str) -> Option<Real> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Real::new(numer, denom))
}

/// Parses a signed decimal or a `p/q` fraction.
pub fn parse_real(text: &str) -> Option<Real> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p = parse_real(p)?;
        let q = parse_real(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(p / q);
    }
    match text.strip_prefix('-') {
        Some(rest) => parse_decimal(rest).map(|v| -v),
        None => parse_decimal(text.strip_prefix('+').unwrap_or(text)),
    }
}

/// Exact decimal expansion when the denominator has only the factors 2 and 5.
pub fn terminating_decimal(x: &Real) -> Option<String> {
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = x * Real::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    if places == 0 {
        return Some(format!("{sign}{digits}"));
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (head, tail) = padded.split_at(padded.len() - places);
    Some(format!("{sign}{head}.{tail}"))
}

/// Human-readable exact form: decimal when it terminates, `p/q` otherwise.
pub fn format_real(x: &Real) -> String {
    terminating_decimal(x).unwrap_or_else(|| format!("{}/{}", x.numer(), x.denom()))
}

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtReal {
    NegInf,
    Finite(Real),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Real::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Real> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => to_f64(v),
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn neg(&self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(v) => ExtReal::Finite(-v),
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }

    /// Compares against a finite value.
    pub fn cmp_real(&self, other: &Real) -> Ordering {
        match self {
            ExtReal::NegInf => Ordering::Less,
            ExtReal::Finite(v) => v.cmp(other),
            ExtReal::PosInf => Ordering::Greater,
        }
    }
}

impl From<Real> for ExtReal {
    fn from(v: Real) -> Self {
        ExtReal::Finite(v)
    }
}

impl Add<&Real> for &ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: &Real) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v + rhs),
            other => other.clone(),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(v) => f.write_str(&format_real(v)),
            ExtReal::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A membership level in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(Real);

impl Level {
    pub fn new(value: Real) -> Option<Level> {
        (!value.is_negative() && value <= Real::one()).then_some(Level(value))
    }

    pub fn zero() -> Level {
        Level(Real::zero())
    }

    pub fn one() -> Level {
        Level(Real::one())
    }

    pub fn ratio(num: i64, den: i64) -> Level {
        Level::new(ratio(num, den)).expect("level outside [0, 1]")
    }

    pub fn value(&self) -> &Real {
        &self.0
    }

    pub fn into_inner(self) -> Real {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_real(&self.0))
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(parse_decimal("0.6"), Some(ratio(3, 5)));
        assert_eq!(parse_decimal("12"), Some(int(12)));
        assert_eq!(parse_decimal(".25"), Some(ratio(1, 4)));
        assert_eq!(parse_decimal("1e3"), None);
        assert_eq!(parse_real("-1/3"), Some(ratio(-1, 3)));
    }

    #[test]
    fn decimal_printing() {
        assert_eq!(terminating_decimal(&ratio(3, 5)).as_deref(), Some("0.6"));
        assert_eq!(terminating_decimal(&ratio(-1, 8)).as_deref(), Some("-0.125"));
        assert_eq!(terminating_decimal(&int(40)).as_deref(), Some("40"));
        assert_eq!(terminating_decimal(&ratio(1, 3)), None);
        assert_eq!(format_real(&ratio(1, 3)), "1/3");
    }

    #[test]
    fn extended_order() {
        assert!(ExtReal::NegInf < ExtReal::Finite(int(-1000)));
        assert!(ExtReal::Finite(int(1000)) < ExtReal::PosInf);
        assert_eq!(&ExtReal::PosInf + &int(3), ExtReal::PosInf);
    }

    #[test]
    fn level_bounds() {
        assert!(Level::new(ratio(3, 2)).is_none());
        assert!(Level::new(ratio(-1, 2)).is_none());
        assert!(Level::new(int(1)).is_some());
    }
}

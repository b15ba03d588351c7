//! Exact scalars: arbitrary precision rationals and their extension by `∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` when integral and `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed). Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// A value in `ℚ ∪ {∞}` with the order and addition of the extended rationals.
///
/// Filling norms of unfillable cycles are `Infinite`, and so is every sum
/// involving one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn zero() -> Self {
        Extended::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Extended::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(q) => Some(q),
            Extended::Infinite => None,
        }
    }

    /// Parses the TSV token form: a rational or `inf`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "inf" {
            Some(Extended::Infinite)
        } else {
            parse_rational(s).map(Extended::Finite)
        }
    }

    /// `self / k` for a positive integer, used for per-length ratios.
    pub fn div_int(&self, k: usize) -> Self {
        match self {
            Extended::Finite(q) => Extended::Finite(q / BigInt::from(k)),
            Extended::Infinite => Extended::Infinite,
        }
    }

    pub fn mul_int(&self, k: usize) -> Self {
        match self {
            Extended::Finite(q) => Extended::Finite(q * BigInt::from(k)),
            Extended::Infinite => Extended::Infinite,
        }
    }

    /// Exact `self / other`, undefined when `other` is zero or either side is infinite.
    pub fn ratio(&self, other: &Self) -> Option<Rational> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) if !b.is_zero() => Some(a / b),
            _ => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Extended::Finite(q) => !q.is_negative(),
            Extended::Infinite => true,
        }
    }
}

impl From<Rational> for Extended {
    fn from(q: Rational) -> Self {
        Extended::Finite(q)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
            (Extended::Infinite, _) => Ordering::Greater,
            (_, Extended::Infinite) => Ordering::Less,
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &Extended {
    type Output = Extended;
    fn add(self, rhs: &Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl Add for Extended {
    type Output = Extended;
    fn add(self, rhs: Extended) -> Extended {
        &self + &rhs
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => f.write_str(&format_rational(q)),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&int(6)), "6");
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(Extended::Infinite.to_string(), "inf");
    }

    #[test]
    fn parses_tokens() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("+4"), Some(int(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(Extended::parse("inf"), Some(Extended::Infinite));
    }

    #[test]
    fn infinity_dominates() {
        let one = Extended::from_int(1);
        assert!(Extended::Infinite > one);
        assert_eq!(&one + &Extended::Infinite, Extended::Infinite);
        assert_eq!(one.ratio(&Extended::Infinite), None);
        assert_eq!(one.ratio(&Extended::zero()), None);
    }
}

//! Exact non-negative rationals.
//!
//! Gupta bounds have small values but large reduced terms (the denominator of
//! `A(840)` already needs 53 bits and the numerator 65), so numerator and
//! denominator are unbounded.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::NAT_MAX;
use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den >= 1`. Displays and serializes as
/// `"num/den"`, or as the bare integer when `den == 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Rational(Ratio<BigUint>);

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Format("zero denominator".into()));
        }
        Ok(Rational(Ratio::new(num.into(), den.into())))
    }

    pub fn integer(n: u64) -> Self {
        Rational(Ratio::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Rational::integer(1)
    }

    pub fn num(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn den(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as a `u64`, if it is an integer in range.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.num().to_u64()
        } else {
            None
        }
    }

    /// `⌊self⌋`, narrowed to the natural range.
    pub fn floor(&self) -> Result<u64> {
        (self.num() / self.den())
            .to_u64()
            .filter(|&v| v <= NAT_MAX)
            .ok_or(Error::Overflow("rational floor"))
    }

    /// `self · a/b`. Panics if `b == 0`.
    pub fn scale(&self, a: u64, b: u64) -> Self {
        assert!(b != 0, "zero denominator");
        Rational(&self.0 * Ratio::new(BigUint::from(a), BigUint::from(b)))
    }

    pub fn half(&self) -> Self {
        self.scale(1, 2)
    }

    /// Exact comparison against an integer.
    pub fn cmp_integer(&self, n: u64) -> Ordering {
        self.num().cmp(&(self.den() * n))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational(Ratio::zero())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "{}/{}", self.num(), self.den())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("invalid rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigUint = n.parse().map_err(|_| bad())?;
        let den: BigUint = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational(Ratio::new(num, den)))
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

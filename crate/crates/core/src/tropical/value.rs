use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// An element of `T_min = Q ∪ {∞}`.
///
/// The derived order puts every finite value below `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalValue {
    Finite(BigRational),
    Infinity,
}

impl TropicalValue {
    /// The tropical multiplicative unit `0`.
    pub fn zero() -> Self {
        TropicalValue::Finite(BigRational::zero())
    }

    pub fn int(value: i64) -> Self {
        TropicalValue::Finite(crate::rat(value))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropicalValue::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropicalValue::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            TropicalValue::Finite(v) => Some(v),
            TropicalValue::Infinity => None,
        }
    }

    /// Tropical addition, `min`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical multiplication, `+`, with `∞` absorbing.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (TropicalValue::Finite(a), TropicalValue::Finite(b)) => TropicalValue::Finite(a + b),
            _ => TropicalValue::Infinity,
        }
    }

    /// `self ⊙ c` for a finite scalar `c`.
    pub fn shift(&self, c: &BigRational) -> Self {
        match self {
            TropicalValue::Finite(a) => TropicalValue::Finite(a + c),
            TropicalValue::Infinity => TropicalValue::Infinity,
        }
    }

    /// The ordinary negation of a finite value; `None` for `∞`.
    pub fn neg_finite(&self) -> Option<Self> {
        self.finite().map(|v| TropicalValue::Finite(-v))
    }
}

impl From<BigRational> for TropicalValue {
    fn from(value: BigRational) -> Self {
        TropicalValue::Finite(value)
    }
}

impl From<i64> for TropicalValue {
    fn from(value: i64) -> Self {
        TropicalValue::int(value)
    }
}

/// Formats a rational as `p` or `p/q`.
pub(crate) fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let t = text.trim();
    BigRational::from_str(t).map_err(|_| Error::Parse(format!("`{t}` is not a rational number")))
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Finite(v) => f.write_str(&format_rational(v)),
            TropicalValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for TropicalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" | "+inf" | "infinity" => Ok(TropicalValue::Infinity),
            other => parse_rational(other).map(TropicalValue::Finite),
        }
    }
}

//! Exact rational scalar used across the crate.
//!
//! `Frac` wraps an arbitrary-precision rational and serializes as the string
//! `"p/q"` (or `"p"` for integers). Float syntax is rejected on parse, which
//! is what makes the CLI refuse inexact input.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Frac(pub BigRational);

impl Frac {
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Self {
        Frac(BigRational::new(num.into(), den.into()))
    }

    pub fn int<N: Into<BigInt>>(n: N) -> Self {
        Frac(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Frac(BigRational::zero())
    }

    pub fn one() -> Self {
        Frac(BigRational::one())
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

    pub fn abs(&self) -> Self {
        Frac(self.0.abs())
    }

    /// Fractional part in `[0, 1)`, i.e. the value mod 1.
    pub fn mod_one(&self) -> Self {
        let f = self.0.floor();
        Frac(&self.0 - f)
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal {0:?} (expected \"p/q\" or \"p\")")]
pub struct ParseFracError(pub String);

impl FromStr for Frac {
    type Err = ParseFracError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        // Reject float syntax outright; only integer and p/q forms are exact.
        if t.contains(['.', 'e', 'E']) {
            return Err(ParseFracError(s.to_string()));
        }
        BigRational::from_str(t)
            .map(Frac)
            .map_err(|_| ParseFracError(s.to_string()))
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! frac_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Frac {
            type Output = Frac;
            fn $method(self, rhs: &Frac) -> Frac {
                Frac(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Frac {
            type Output = Frac;
            fn $method(self, rhs: Frac) -> Frac {
                Frac(self.0 $op rhs.0)
            }
        }
    };
}

frac_binop!(Add, add, +);
frac_binop!(Sub, sub, -);
frac_binop!(Mul, mul, *);
frac_binop!(Div, div, /);

impl AddAssign<&Frac> for Frac {
    fn add_assign(&mut self, rhs: &Frac) {
        self.0 += &rhs.0;
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac(-&self.0)
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["3/10", "-7/2", "4", "0", "-12"] {
            let f: Frac = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn floats_rejected() {
        assert!("0.5".parse::<Frac>().is_err());
        assert!("1e3".parse::<Frac>().is_err());
        assert!("1.0/2".parse::<Frac>().is_err());
    }

    #[test]
    fn mod_one_wraps_negatives() {
        let f: Frac = "-1/4".parse().unwrap();
        assert_eq!(f.mod_one(), Frac::new(3, 4));
        let g: Frac = "9/4".parse().unwrap();
        assert_eq!(g.mod_one(), Frac::new(1, 4));
    }
}

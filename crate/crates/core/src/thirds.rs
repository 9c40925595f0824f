//! Rationals with denominator dividing 3, the only numbers degrees are made of.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{GlsmError, Result};

/// The rational number `n/3`, stored as `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Thirds(pub i64);

impl Thirds {
    pub const ZERO: Thirds = Thirds(0);

    pub fn int(n: i64) -> Self {
        Thirds(3 * n)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 3 == 0
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(3)
    }

    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(3)
    }

    /// Three times the fractional part, in `0..3`.
    pub fn frac3(self) -> i64 {
        self.0.rem_euclid(3)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 3.0
    }

    pub fn to_ratio(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(3))
    }

    pub fn from_ratio(r: &BigRational) -> Result<Self> {
        let scaled = r * BigRational::from_integer(BigInt::from(3));
        if !scaled.is_integer() {
            return Err(GlsmError::BadRational(format!("{r} is not in (1/3)Z")));
        }
        scaled
            .to_integer()
            .to_i64()
            .map(Thirds)
            .ok_or_else(|| GlsmError::BadRational(r.to_string()))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_ratio(&parse_rational(s)?)
    }
}

impl fmt::Display for Thirds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 3)
        } else {
            write!(f, "{}/3", self.0)
        }
    }
}

impl Add for Thirds {
    type Output = Thirds;
    fn add(self, o: Thirds) -> Thirds {
        Thirds(self.0 + o.0)
    }
}

impl Sub for Thirds {
    type Output = Thirds;
    fn sub(self, o: Thirds) -> Thirds {
        Thirds(self.0 - o.0)
    }
}

impl Neg for Thirds {
    type Output = Thirds;
    fn neg(self) -> Thirds {
        Thirds(-self.0)
    }
}

impl Mul<i64> for Thirds {
    type Output = Thirds;
    fn mul(self, k: i64) -> Thirds {
        Thirds(self.0 * k)
    }
}

/// Parses `"-1/3"`, `"2"`, `"4/6"`; the unicode minus sign is accepted too.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || GlsmError::BadRational(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical string form of a rational: `"n"` or `"n/d"` in lowest terms.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Floor of a rational as a machine integer.
pub fn floor_i64(r: &BigRational) -> i64 {
    r.floor().to_integer().to_i64().expect("floor out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_ceil_frac() {
        assert_eq!(Thirds(-4).floor(), -2);
        assert_eq!(Thirds(-4).ceil(), -1);
        assert_eq!(Thirds(-4).frac3(), 2);
        assert_eq!(Thirds(5).floor(), 1);
        assert_eq!(Thirds(5).ceil(), 2);
        assert_eq!(Thirds(6).ceil(), 2);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Thirds::parse("-1/3").unwrap(), Thirds(-1));
        assert_eq!(Thirds::parse("\u{2212}2/6").unwrap(), Thirds(-1));
        assert_eq!(Thirds::parse("2").unwrap(), Thirds(6));
        assert!(Thirds::parse("1/2").is_err());
        assert_eq!(Thirds(-4).to_string(), "-4/3");
        assert_eq!(Thirds(6).to_string(), "2");
    }
}

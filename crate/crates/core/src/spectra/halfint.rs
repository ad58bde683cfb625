use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_doubled(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Exact conversion; fails unless `2x` is an integer.
    pub fn from_f64(x: f64) -> Result<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > (1u64 << 52) as f64 {
            return Err(Error::QuantumNumber(format!("{x} is neither an integer nor a half-integer")));
        }
        Ok(HalfInt(twice as i64))
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// `self − other` as an integer, if it is one.
    pub fn integer_difference(self, other: HalfInt) -> Option<i64> {
        let d = self.0 - other.0;
        (d % 2 == 0).then_some(d / 2)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;

    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Add<i64> for HalfInt {
    type Output = HalfInt;

    fn add(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 + 2 * rhs)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;

    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1/2`, `1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let bad = || Error::QuantumNumber(format!("cannot read `{s}` as a half-integer"));
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt(num)),
                _ => Err(bad()),
            };
        }
        let x: f64 = s.parse().map_err(|_| Error::QuantumNumber(format!("cannot read `{s}` as a half-integer")))?;
        HalfInt::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for twice in -7..=7 {
            let h = HalfInt::from_doubled(twice);
            assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
            assert_eq!(HalfInt::from_f64(h.value()).unwrap(), h);
        }
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(3));
        assert!("0.25".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn arithmetic() {
        let half = HalfInt::HALF;
        assert_eq!((half + 1).to_string(), "3/2");
        assert_eq!((-half).abs(), half);
        assert_eq!(HalfInt::from_int(2).integer_difference(half), None);
        assert_eq!(HalfInt::from_doubled(5).integer_difference(half), Some(2));
    }
}

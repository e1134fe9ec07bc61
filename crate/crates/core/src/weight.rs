//! Exact positive arc weights.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An exact rational weight. Arc weights are strictly positive; sums of
/// weights (costs) may be zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(Ratio<i64>);

impl Weight {
    pub const ZERO: Weight = Weight(Ratio::new_raw(0, 1));
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Weight(Ratio::new(numer, denom))
    }

    pub fn integer(value: i64) -> Self {
        Weight(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Ratio::zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Integers print bare, fractions as `n/d`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Weight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer: i64 = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
        let denom: i64 = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
        if denom == 0 {
            return Err("zero denominator".into());
        }
        Ok(Weight::new(numer, denom))
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |acc, w| acc + w)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |acc, w| acc + *w)
    }
}

impl From<i64> for Weight {
    fn from(value: i64) -> Self {
        Weight::integer(value)
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!("3".parse::<Weight>().unwrap(), Weight::integer(3));
        assert_eq!("6/4".parse::<Weight>().unwrap(), Weight::new(3, 2));
        assert_eq!(Weight::new(3, 2).to_string(), "3/2");
        assert_eq!(Weight::integer(7).to_string(), "7");
        assert!("1/0".parse::<Weight>().is_err());
        assert!("x".parse::<Weight>().is_err());
    }

    #[test]
    fn sums_exactly() {
        let total: Weight = [Weight::new(1, 3), Weight::new(1, 3), Weight::new(1, 3)]
            .iter()
            .sum();
        assert_eq!(total, Weight::ONE);
    }
}

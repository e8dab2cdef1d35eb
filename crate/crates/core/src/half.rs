//! Exact half-integer arithmetic for quantum numbers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A number of the form `k/2`, stored as its doubled integer value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Half(i32);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    pub const fn from_twice(twice: i32) -> Self {
        Half(twice)
    }

    pub const fn integer(value: i32) -> Self {
        Half(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        Half(self.0.abs())
    }

    /// `x (x + 1)`, the squared angular-momentum eigenvalue in units of ħ².
    pub fn casimir(self) -> f64 {
        let x = self.value();
        x * (x + 1.0)
    }

    /// Values `self, self + 1, ..., upper` (empty when `upper < self`).
    pub fn range_to(self, upper: Half) -> impl Iterator<Item = Half> {
        let lo = self.0;
        let hi = upper.0;
        (0..)
            .map(move |k| Half(lo + 2 * k))
            .take_while(move |h| h.0 <= hi)
    }
}

impl From<i32> for Half {
    fn from(v: i32) -> Self {
        Half::integer(v)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfError(pub String);

impl fmt::Display for ParseHalfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a half-integer: `{}`", self.0)
    }
}

impl std::error::Error for ParseHalfError {}

impl FromStr for Half {
    type Err = ParseHalfError;

    /// Accepts `k`, `k/2`, `k.0` and `k.5` forms, with an optional sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseHalfError(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| err())?;
            return match den.trim() {
                "1" => num.checked_mul(2).map(Half).ok_or_else(err),
                "2" => Ok(Half(num)),
                _ => Err(err()),
            };
        }
        if let Ok(v) = t.parse::<i32>() {
            return v.checked_mul(2).map(Half).ok_or_else(err);
        }
        let v: f64 = t.parse().map_err(|_| err())?;
        let twice = v * 2.0;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
            return Err(err());
        }
        Ok(Half(twice as i32))
    }
}

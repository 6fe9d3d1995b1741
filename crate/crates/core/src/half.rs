//! Half-integers, stored as twice their value.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    pub const fn from_int(n: i64) -> Half {
        Half(2 * n)
    }

    /// The half-integer `n / 2`.
    pub const fn from_twice(n: i64) -> Half {
        Half(n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    /// Smallest integer not below the value.
    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(2)
    }

    /// `(-1)^{2r}`.
    pub fn sign(self) -> i64 {
        if self.is_integer() {
            1
        } else {
            -1
        }
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

impl From<i64> for Half {
    fn from(n: i64) -> Half {
        Half::from_int(n)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(n) => write!(f, "{}", n),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl fmt::Debug for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfError(String);

impl FromStr for Half {
    type Err = ParseHalfError;
    fn from_str(s: &str) -> Result<Half, ParseHalfError> {
        let err = || ParseHalfError(s.to_string());
        let t = s.trim();
        if let Some(num) = t.strip_suffix("/2") {
            let n: i64 = num.trim().parse().map_err(|_| err())?;
            if n % 2 == 0 {
                return Err(err());
            }
            return Ok(Half(n));
        }
        let n: i64 = t.parse().map_err(|_| err())?;
        Ok(Half::from_int(n))
    }
}

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact exponent `alpha = num/den` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GalExponent {
    num: u32,
    den: u32,
}

impl GalExponent {
    pub const HALF: GalExponent = GalExponent { num: 1, den: 2 };
    pub const THIRD: GalExponent = GalExponent { num: 1, den: 3 };
    pub const ONE: GalExponent = GalExponent { num: 1, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::domain("exponent must be a positive rational"));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        if num > den {
            return Err(Error::domain(format!("exponent {num}/{den} exceeds 1")));
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `2 alpha` when it is an integer.
    pub fn doubled_integer(&self) -> Option<u32> {
        (2 * self.num % self.den == 0).then(|| 2 * self.num / self.den)
    }
}

impl Default for GalExponent {
    fn default() -> Self {
        Self::HALF
    }
}

impl fmt::Display for GalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for GalExponent {
    type Err = Error;

    /// Accepts `p/q` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::domain(format!("cannot parse exponent `{s}`; expected p/q"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim().parse().map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Self::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

impl TryFrom<String> for GalExponent {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GalExponent> for String {
    fn from(a: GalExponent) -> String {
        a.to_string()
    }
}

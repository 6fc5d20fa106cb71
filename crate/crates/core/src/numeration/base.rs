use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational base `p/q` with `p > q > 1` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBase", into = "RawBase")]
pub struct Base {
    p: u32,
    q: u32,
}

#[derive(Serialize, Deserialize)]
struct RawBase {
    p: u32,
    q: u32,
}

impl TryFrom<RawBase> for Base {
    type Error = Error;

    fn try_from(raw: RawBase) -> Result<Base> {
        Base::new(raw.p, raw.q)
    }
}

impl From<Base> for RawBase {
    fn from(b: Base) -> RawBase {
        RawBase { p: b.p, q: b.q }
    }
}

impl Base {
    pub fn new(p: u32, q: u32) -> Result<Base> {
        let err = |reason| Error::InvalidBase { p: p.into(), q: q.into(), reason };
        if q <= 1 {
            return Err(err("q must be greater than 1"));
        }
        if p <= q {
            return Err(err("p must be greater than q"));
        }
        if p.gcd(&q) != 1 {
            return Err(err("p and q must be coprime"));
        }
        Ok(Base { p, q })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Base {
    type Err = Error;

    /// Parses `"p/q"`.
    fn from_str(s: &str) -> Result<Base> {
        let malformed = || Error::Malformed { what: "base", text: s.to_string() };
        let (p, q) = s.trim().split_once('/').ok_or_else(malformed)?;
        let p = p.trim().parse().map_err(|_| malformed())?;
        let q = q.trim().parse().map_err(|_| malformed())?;
        Base::new(p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_invariants() {
        assert!(Base::new(3, 2).is_ok());
        assert!(Base::new(7, 4).is_ok());
        assert!(Base::new(2, 3).is_err());
        assert!(Base::new(3, 1).is_err());
        assert!(Base::new(4, 2).is_err());
        assert!(Base::new(3, 3).is_err());
    }

    #[test]
    fn parses_slash_form() {
        assert_eq!("5/3".parse::<Base>().unwrap(), Base::new(5, 3).unwrap());
        assert!("5".parse::<Base>().is_err());
        assert!("6/3".parse::<Base>().is_err());
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::Base;
use crate::error::{Error, Result};

/// A non-negative rational of the form `num / q^kexp`.
///
/// Always normalized: either `kexp == 0` or `q` does not divide `num`, and
/// zero is stored as `0 / q^0`. The denominator base `q` travels with the
/// value so that it can be printed and compared on its own; mixing values
/// with different `q` is a logic error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QkNumber {
    num: BigUint,
    kexp: u32,
    q: u32,
}

impl QkNumber {
    /// Builds `num / q^kexp`, normalizing it.
    pub fn new(num: BigUint, kexp: u32, q: u32) -> QkNumber {
        assert!(q > 1, "q must exceed 1");
        let mut num = num;
        let mut kexp = kexp;
        if num.is_zero() {
            kexp = 0;
        } else {
            let qb = BigUint::from(q);
            while kexp > 0 {
                let (quot, rem) = num.div_rem(&qb);
                if !rem.is_zero() {
                    break;
                }
                num = quot;
                kexp -= 1;
            }
        }
        QkNumber { num, kexp, q }
    }

    pub fn zero(q: u32) -> QkNumber {
        QkNumber { num: BigUint::zero(), kexp: 0, q }
    }

    pub fn from_integer(n: impl Into<BigUint>, q: u32) -> QkNumber {
        QkNumber::new(n.into(), 0, q)
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn kexp(&self) -> u32 {
        self.kexp
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.kexp == 0
    }

    /// `q^kexp`.
    pub fn denominator(&self) -> BigUint {
        Pow::pow(BigUint::from(self.q), self.kexp)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num.clone()), BigInt::from(self.denominator()))
    }

    /// Converts a rational back onto the grid; `None` when negative or when the
    /// reduced denominator is not a power of `q`.
    pub fn from_rational(r: &BigRational, q: u32) -> Option<QkNumber> {
        if r.is_negative() {
            return None;
        }
        let num = r.numer().to_biguint()?;
        let mut den = r.denom().to_biguint()?;
        let qb = BigUint::from(q);
        let mut k = 0u32;
        while !den.is_one() {
            let (quot, rem) = den.div_rem(&qb);
            if !rem.is_zero() {
                return None;
            }
            den = quot;
            k += 1;
        }
        Some(QkNumber::new(num, k, q))
    }

    /// Multiplies by the integer `n`.
    pub fn scale(&self, n: &BigUint) -> QkNumber {
        QkNumber::new(&self.num * n, self.kexp, self.q)
    }

    /// `self * (p/q)^i`.
    pub fn mul_pow_base(&self, base: Base, i: u32) -> QkNumber {
        self.check_q(base);
        let p_i: BigUint = Pow::pow(BigUint::from(base.p()), i);
        QkNumber::new(&self.num * p_i, self.kexp + i, self.q)
    }

    /// `self / (p/q)^i`, if that quotient lies on the `1/q^k` grid.
    pub fn div_pow_base(&self, base: Base, i: u32) -> Option<QkNumber> {
        self.check_q(base);
        let p_i: BigUint = Pow::pow(BigUint::from(base.p()), i);
        let (quot, rem) = self.num.div_rem(&p_i);
        if !rem.is_zero() {
            return None;
        }
        Some(if self.kexp >= i {
            QkNumber::new(quot, self.kexp - i, self.q)
        } else {
            let lift: BigUint = Pow::pow(BigUint::from(self.q), i - self.kexp);
            QkNumber::new(quot * lift, 0, self.q)
        })
    }

    /// Checked subtraction; `None` when the result would be negative.
    pub fn checked_sub(&self, other: &QkNumber) -> Option<QkNumber> {
        debug_assert_eq!(self.q, other.q);
        let k = self.kexp.max(other.kexp);
        let a = self.lift_to(k);
        let b = other.lift_to(k);
        if a < b {
            None
        } else {
            Some(QkNumber::new(a - b, k, self.q))
        }
    }

    /// The numerator over `q^k` for some `k >= kexp`.
    pub(crate) fn lift_to(&self, k: u32) -> BigUint {
        debug_assert!(k >= self.kexp);
        let f: BigUint = Pow::pow(BigUint::from(self.q), k - self.kexp);
        &self.num * f
    }

    /// Parses `"m"`, `"m/D"` where `D` is a power of `q`, or `"m/q^k"`.
    pub fn parse(s: &str, base: Base) -> Result<QkNumber> {
        let malformed = || Error::Malformed { what: "value", text: s.to_string() };
        let s = s.trim();
        let q = base.q();
        match s.split_once('/') {
            None => {
                let n: BigUint = s.parse().map_err(|_| malformed())?;
                Ok(QkNumber::from_integer(n, q))
            }
            Some((m, d)) => {
                let m: BigUint = m.trim().parse().map_err(|_| malformed())?;
                let d = d.trim();
                if let Some(k) = d.strip_prefix("q^") {
                    let k: u32 = k.trim().parse().map_err(|_| malformed())?;
                    return Ok(QkNumber::new(m, k, q));
                }
                let d: BigUint = d.parse().map_err(|_| malformed())?;
                if d.is_zero() {
                    return Err(malformed());
                }
                let r = BigRational::new(BigInt::from(m), BigInt::from(d));
                QkNumber::from_rational(&r, q)
                    .ok_or_else(|| Error::InvalidArgument(format!("{s} does not have a power of {q} as denominator")))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    fn check_q(&self, base: Base) {
        debug_assert_eq!(self.q, base.q(), "value and base disagree on q");
    }
}

impl fmt::Display for QkNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kexp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

impl fmt::Debug for QkNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}^{}", self.num, self.q, self.kexp)
    }
}

impl Ord for QkNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.q, other.q);
        let k = self.kexp.max(other.kexp);
        self.lift_to(k).cmp(&other.lift_to(k))
    }
}

impl PartialOrd for QkNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &QkNumber {
    type Output = QkNumber;

    fn add(self, rhs: &QkNumber) -> QkNumber {
        debug_assert_eq!(self.q, rhs.q);
        let k = self.kexp.max(rhs.kexp);
        QkNumber::new(self.lift_to(k) + rhs.lift_to(k), k, self.q)
    }
}

impl Add for QkNumber {
    type Output = QkNumber;

    fn add(self, rhs: QkNumber) -> QkNumber {
        &self + &rhs
    }
}

impl Mul for &QkNumber {
    type Output = QkNumber;

    fn mul(self, rhs: &QkNumber) -> QkNumber {
        debug_assert_eq!(self.q, rhs.q);
        QkNumber::new(&self.num * &rhs.num, self.kexp + rhs.kexp, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b32() -> Base {
        Base::new(3, 2).unwrap()
    }

    #[test]
    fn normalizes() {
        let x = QkNumber::new(8u32.into(), 2, 2);
        assert_eq!(x.num(), &BigUint::from(2u32));
        assert_eq!(x.kexp(), 0);
        let z = QkNumber::new(0u32.into(), 5, 2);
        assert_eq!(z.kexp(), 0);
        assert_eq!(z, QkNumber::zero(2));
    }

    #[test]
    fn parses_and_prints() {
        let b = b32();
        let x = QkNumber::parse("7/4", b).unwrap();
        assert_eq!((x.num().clone(), x.kexp()), (BigUint::from(7u32), 2));
        assert_eq!(x.to_string(), "7/4");
        assert_eq!(QkNumber::parse("7/q^2", b).unwrap(), x);
        assert_eq!(QkNumber::parse("6/4", b).unwrap().to_string(), "3/2");
        assert!(QkNumber::parse("1/3", b).is_err());
        assert!(QkNumber::parse("x", b).is_err());
    }

    #[test]
    fn arithmetic() {
        let b = b32();
        let half = QkNumber::parse("1/2", b).unwrap();
        let three_q = QkNumber::parse("3/4", b).unwrap();
        assert_eq!((&half + &three_q).to_string(), "5/4");
        assert_eq!((&half * &three_q).to_string(), "3/8");
        assert_eq!(half.mul_pow_base(b, 1).to_string(), "3/4");
        assert_eq!(three_q.div_pow_base(b, 1), Some(half.clone()));
        assert_eq!(half.div_pow_base(b, 1), None);
        assert_eq!(QkNumber::from_integer(3u32, 2).div_pow_base(b, 1).unwrap().to_string(), "2");
        assert!(half < three_q);
        assert_eq!(three_q.checked_sub(&half).unwrap().to_string(), "1/4");
        assert_eq!(half.checked_sub(&three_q), None);
    }
}

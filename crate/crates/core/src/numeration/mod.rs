//! Exact arithmetic on the value set `N_{p/q}` of rational base numeration.
//!
//! A word `a_k ... a_0` over `A_p = {0, ..., p-1}` evaluates to
//! `sum a_i / q * (p/q)^i`. Every such value has a power of `q` as denominator,
//! which is what [`QkNumber`] stores.

mod base;
mod qk;
mod word;

pub use base::Base;
pub use qk::QkNumber;
pub use word::{TupleWord, Word};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Value of a word; leading zeros are allowed.
pub fn evaluate(w: &Word) -> QkNumber {
    let base = w.base();
    let (p, q) = (BigUint::from(base.p()), BigUint::from(base.q()));
    // N(u a) = p N(u) + a q^|u|, value = N / q^|u|
    let mut n = BigUint::zero();
    let mut q_pow = BigUint::one();
    for &a in w.digits() {
        n = n * &p + &q_pow * a;
        q_pow *= &q;
    }
    QkNumber::new(n, w.len() as u32, base.q())
}

/// The representation of `x` (no leading zero), or `None` when `x` is not in
/// `N_{p/q}`.
///
/// Digits are produced right to left and each one is forced: the last digit
/// `a` of any expansion satisfies `q x = p x' + a` with `x'` on the grid,
/// which pins `a` modulo `p`. A negative `x'` means no expansion exists.
pub fn represent(x: &QkNumber, base: Base) -> Option<Word> {
    assert_eq!(x.q(), base.q(), "value and base disagree on q");
    let p = BigUint::from(base.p());
    let q = BigUint::from(base.q());
    let q_inv_mod_p = mod_inverse(base.q() as u64 % base.p() as u64, base.p() as u64).expect("p and q are coprime");

    let mut digits = Vec::new();
    let mut num = x.num().clone();
    let mut kexp = x.kexp();
    while !num.is_zero() {
        if kexp == 0 {
            // integer m: q m = p m' + a
            let a = ((&num * &q) % &p).to_u32().unwrap();
            num = (&num * &q - a) / &p;
            digits.push(a);
        } else {
            // num / q^k: a q^(k-1) = num (mod p)
            let inv_pow = pow_mod(q_inv_mod_p, (kexp - 1) as u64, base.p() as u64);
            let num_mod = (&num % &p).to_u64().unwrap();
            let a = ((num_mod * inv_pow) % base.p() as u64) as u32;
            let sub = Pow::pow(q.clone(), kexp - 1) * a;
            if num < sub {
                return None;
            }
            let next = QkNumber::new((num - sub) / &p, kexp - 1, base.q());
            num = next.num().clone();
            kexp = next.kexp();
            digits.push(a);
        }
    }
    digits.reverse();
    Some(Word::new(digits, base).expect("digits are reduced modulo p"))
}

pub fn is_member(x: &QkNumber, base: Base) -> bool {
    represent(x, base).is_some()
}

/// Length of the representation of `x`.
pub fn rep_len(x: &QkNumber, base: Base) -> Result<usize> {
    represent(x, base).map(|w| w.len()).ok_or_else(|| not_member(x, base))
}

/// `m_k = (pq)^(k-1)`: every `n / q^k` with `n > m_k` is a member.
pub fn mk_bound(k: u32, base: Base) -> BigUint {
    assert!(k >= 1, "m_k is defined for k >= 1");
    Pow::pow(BigUint::from(base.p()) * base.q(), k - 1)
}

/// Witness pair for `alpha < x - y < beta` with `x, y` in `N_{p/q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceWitness {
    pub k: u32,
    pub h: BigUint,
    pub x: QkNumber,
    pub y: QkNumber,
}

/// Finds the smallest `k >= 1` (then smallest `h`) with `alpha < h/q^k < beta`
/// and returns `x = (m_k + h)/q^k`, `y = m_k/q^k`.
pub fn difference_witness(alpha: &BigRational, beta: &BigRational, base: Base) -> Result<DifferenceWitness> {
    if alpha < &BigRational::zero() || alpha >= beta {
        return Err(Error::InvalidArgument(format!("need 0 <= alpha < beta, got alpha = {alpha}, beta = {beta}")));
    }
    let q = BigInt::from(base.q());
    let mut q_k = BigInt::one();
    let mut k = 0u32;
    loop {
        k += 1;
        q_k *= &q;
        // smallest h with h / q^k > alpha
        let scaled = alpha * BigRational::from_integer(q_k.clone());
        let h: BigInt = scaled.floor().to_integer() + 1;
        if BigRational::new(h.clone(), q_k.clone()) < *beta {
            let h = h.to_biguint().expect("alpha >= 0 makes h positive");
            let m_k = mk_bound(k, base);
            let x = QkNumber::new(&m_k + &h, k, base.q());
            let y = QkNumber::new(m_k, k, base.q());
            return Ok(DifferenceWitness { k, h, x, y });
        }
    }
}

/// Generalized modulo: `num * (q^-1)^kexp mod n`, defined when `gcd(n, q) = 1`.
pub fn mod_value(x: &QkNumber, n: u64, base: Base) -> Result<u64> {
    assert_eq!(x.q(), base.q(), "value and base disagree on q");
    let q_inv = q_inverse(n, base)?;
    let num_mod = (x.num() % n).to_u64().unwrap();
    Ok(num_mod * pow_mod(q_inv, x.kexp() as u64, n) % n)
}

/// The inverse of `q` modulo `n`.
pub fn q_inverse(n: u64, base: Base) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    mod_inverse(base.q() as u64 % n, n).ok_or(Error::NotCoprime { n, q: base.q() })
}

/// `V_{p/q}(x)`: `(p/q)^i` where `rep(x)` ends with `a 0^i`, `a != 0`; `V(0) = 0`.
pub fn v_pq(x: &QkNumber, base: Base) -> Result<QkNumber> {
    let w = represent(x, base).ok_or_else(|| not_member(x, base))?;
    if w.is_empty() {
        return Ok(QkNumber::zero(base.q()));
    }
    let i = trailing_zeros(&w);
    Ok(QkNumber::from_integer(1u32, base.q()).mul_pow_base(base, i))
}

/// `W_{p/q}(x) = V_{p/q}(x) / q`, the value of `1 0^i`.
pub fn w_pq(x: &QkNumber, base: Base) -> Result<QkNumber> {
    let v = v_pq(x, base)?;
    Ok(QkNumber::new(v.num().clone(), v.kexp() + 1, base.q()))
}

fn trailing_zeros(w: &Word) -> u32 {
    w.digits().iter().rev().take_while(|&&d| d == 0).count() as u32
}

pub(crate) fn not_member(x: &QkNumber, base: Base) -> Error {
    Error::NotMember { value: x.to_string(), base }
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(n as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(n as i128) as u64)
}

fn pow_mod(b: u64, mut e: u64, n: u64) -> u64 {
    let n = n as u128;
    let mut acc: u128 = 1 % n;
    let mut b = b as u128 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b32() -> Base {
        Base::new(3, 2).unwrap()
    }

    fn v(s: &str) -> QkNumber {
        QkNumber::parse(s, b32()).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, b32()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&w("2")), v("1"));
        assert_eq!(evaluate(&w("")), v("0"));
        assert_eq!(evaluate(&w("10")), v("3/4"));
        assert_eq!(evaluate(&w("21")), v("2"));
        assert_eq!(evaluate(&w("0021")), v("2"));
    }

    #[test]
    fn represent_examples() {
        assert_eq!(represent(&v("2"), b32()).unwrap().to_string(), "21");
        assert_eq!(represent(&v("0"), b32()).unwrap().to_string(), "");
        assert_eq!(represent(&v("3/4"), b32()).unwrap().to_string(), "10");
        assert_eq!(represent(&v("1/4"), b32()), None);
        assert_eq!(represent(&v("3"), b32()).unwrap().to_string(), "210");
    }

    #[test]
    fn membership() {
        assert!(is_member(&v("1/2"), b32()));
        assert!(!is_member(&v("1/4"), b32()));
        for n in 0..200u32 {
            assert!(is_member(&QkNumber::from_integer(n, 2), b32()));
        }
    }

    #[test]
    fn mk_bound_examples() {
        assert_eq!(mk_bound(1, b32()), BigUint::from(1u32));
        assert_eq!(mk_bound(2, b32()), BigUint::from(6u32));
        for n in 7u32..=507 {
            assert!(is_member(&QkNumber::new(n.into(), 2, 2), b32()), "{n}/4");
        }
    }

    #[test]
    fn difference_witness_examples() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let d = difference_witness(&r(0, 1), &r(1, 1), b32()).unwrap();
        assert_eq!((d.k, d.h.clone()), (1, BigUint::from(1u32)));
        assert_eq!(d.y, v("1/2"));
        assert_eq!(d.x.checked_sub(&d.y).unwrap(), v("1/2"));

        let d = difference_witness(&r(1, 1), &r(2, 1), b32()).unwrap();
        assert_eq!((d.k, d.h.clone()), (1, BigUint::from(3u32)));
        assert_eq!(d.x.checked_sub(&d.y).unwrap(), v("3/2"));
        assert!(is_member(&d.x, b32()) && is_member(&d.y, b32()));

        for base in [b32(), Base::new(5, 2).unwrap(), Base::new(7, 2).unwrap()] {
            let d = difference_witness(&r(2, 5), &r(3, 5), base).unwrap();
            assert_eq!((d.k, d.h.clone()), (1, BigUint::from(1u32)));
        }
        assert!(difference_witness(&r(1, 1), &r(1, 1), b32()).is_err());
    }

    #[test]
    fn mod_value_examples() {
        assert_eq!(mod_value(&v("7"), 5, b32()).unwrap(), 2);
        assert_eq!(mod_value(&v("1/2"), 5, b32()).unwrap(), 3);
        // 8/4 normalizes to 2; the unnormalized reading 8 * 3^2 mod 5 agrees
        assert_eq!(mod_value(&QkNumber::new(8u32.into(), 2, 2), 5, b32()).unwrap(), 2);
        assert_eq!((8 * 3 * 3) % 5, 2);
        assert!(matches!(mod_value(&v("1"), 4, b32()), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn v_and_w_examples() {
        assert_eq!(v_pq(&v("3"), b32()).unwrap(), v("3/2"));
        assert_eq!(v_pq(&v("1"), b32()).unwrap(), v("1"));
        assert_eq!(v_pq(&v("0"), b32()).unwrap(), v("0"));
        assert_eq!(w_pq(&v("3"), b32()).unwrap(), v("3/4"));
        assert_eq!(w_pq(&v("0"), b32()).unwrap(), v("0"));
        assert_eq!(w_pq(&v("1"), b32()).unwrap(), v("1/2"));
        assert!(v_pq(&v("1/4"), b32()).is_err());
    }
}

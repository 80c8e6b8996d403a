//! Exact rational and integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `⌊p / q⌋` with true mathematical flooring for negative operands.
pub fn floor_div(p: i128, q: i128) -> Result<i128> {
    if q == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Integer::div_floor(&p, &q))
}

/// Floor division for call sites where the divisor is known to be nonzero.
#[inline]
pub(crate) fn fdiv(p: i128, q: i128) -> i128 {
    debug_assert!(q != 0);
    Integer::div_floor(&p, &q)
}

/// Integer types usable as exact rational components.
pub(crate) trait Exact: Clone + Integer + Signed + From<i64> {}

impl Exact for i128 {}
impl Exact for BigInt {}

pub(crate) fn widen(q: &Ratio<i128>) -> Rational {
    Rational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i128) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Converts an integral rational to `i128`, failing on fractions and overflow.
pub fn to_i128(x: &Rational) -> Result<i128> {
    if !x.is_integer() {
        return Err(Error::Internal(format!("expected an integer, found {x}")));
    }
    x.to_integer().to_i128().ok_or(Error::Overflow("rational to i128"))
}

pub(crate) fn big_to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow("bigint to i128"))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g = gcd(a, b) >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

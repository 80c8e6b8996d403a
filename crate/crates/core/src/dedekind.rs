//! Sawtooth function, Dedekind-Rademacher sums and Fourier-Dedekind sums.
//!
//! The sawtooth here is `((x)) = x - ⌊x⌋ - 1/2`, which takes the value `-1/2`
//! at integers (the classical Dedekind convention uses 0 there).

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::rational::{int, rat, Exact, Rational};
use crate::{Error, Result};

pub fn sawtooth(x: &Rational) -> Rational {
    x - x.floor() - rat(1, 2)
}

/// `Σ_{k=0}^{c-1} (((shift - c' k)/c)) ((k/c))`.
pub fn dedekind_rademacher_sum(c: u64, cprime: i64, shift: &Rational) -> Rational {
    dr_sum::<BigInt>(c, cprime, shift)
}

/// Integer-residue evaluation: with `shift = p/q`, the k-th term is
/// `(2 (u_k mod v) - v)(2k - c) / (4 v c)` where `u_k = p - c' k q`, `v = q c`.
pub(crate) fn dr_sum<T: Exact>(c: u64, cprime: i64, shift: &Ratio<T>) -> Ratio<T> {
    assert!(c >= 1, "modulus must be positive");
    let c = T::from(c as i64);
    let cp = T::from(cprime);
    let (p, q) = (shift.numer().clone(), shift.denom().clone());
    let v = q.clone() * c.clone();
    let two = T::from(2);
    let mut total = T::zero();
    let mut k = T::zero();
    let mut u = p;
    let step = cp * q;
    while k < c {
        let r = u.mod_floor(&v);
        total = total + (two.clone() * r - v.clone()) * (two.clone() * k.clone() - c.clone());
        u = u - step.clone();
        k = k + T::one();
    }
    Ratio::new(total, T::from(4) * v * c)
}

fn check_coprime(c1: u64, c2: u64) -> Result<()> {
    if c1 < 2 {
        return Err(Error::Internal(format!("c1 = {c1} must be at least 2")));
    }
    if c1.gcd(&c2) != 1 {
        return Err(Error::Internal(format!("gcd({c1}, {c2}) != 1")));
    }
    Ok(())
}

pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// `(1/c1) Σ_{λ^{c1} = 1 ≠ λ} λ^t / ((1 - λ^{c2})(1 - λ))` in floating point.
///
/// Conjugate roots are summed in pairs; the residual imaginary part is
/// checked against [`IMAGINARY_TOLERANCE`].
pub fn fourier_dedekind_numeric(c1: u64, c2: u64, texp: i64) -> Result<f64> {
    check_coprime(c1, c2)?;
    let term = |j: u64| {
        let root = |e: i128| {
            let r = (e * j as i128).rem_euclid(c1 as i128);
            Complex64::from_polar(1.0, TAU * r as f64 / c1 as f64)
        };
        let one = Complex64::new(1.0, 0.0);
        root(texp as i128) / ((one - root(c2 as i128)) * (one - root(1)))
    };
    let mut total = Complex64::new(0.0, 0.0);
    for j in 1..=(c1 - 1) / 2 {
        total += term(j) + term(c1 - j);
    }
    if c1 % 2 == 0 {
        total += term(c1 / 2);
    }
    total /= c1 as f64;
    if total.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::Internal(format!(
            "Fourier-Dedekind sum ({c1}, {c2}, {texp}) has imaginary part {}",
            total.im
        )));
    }
    Ok(total.re)
}

/// The exact side of the finite Fourier identity:
/// `Σ_{k=0}^{c1-1} (((-c2 k - t)/c1)) ((k/c1)) - 1/(4 c1)`.
pub fn fourier_dedekind_exact(c1: u64, c2: u64, texp: i64) -> Rational {
    dedekind_rademacher_sum(c1, c2 as i64, &int(-(texp as i128))) - rat(1, 4 * c1 as i128)
}

pub fn fourier_identity_check(c1: u64, c2: u64, texp: i64, tol: f64) -> bool {
    let Ok(numeric) = fourier_dedekind_numeric(c1, c2, texp) else {
        return false;
    };
    let exact = fourier_dedekind_exact(c1, c2, texp).to_f64().unwrap_or(f64::NAN);
    (numeric - exact).abs() <= tol
}

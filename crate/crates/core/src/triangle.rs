//! Closed-form closure count for the right triangle
//! `{a1 x >= t1, a2 y >= t2, c1 x + c2 y <= t3}` with positive `a`, `c` and
//! coprime `c1, c2`.
//!
//! The count is a quadratic in `t` whose linear and constant coefficients
//! `ν0..ν3` are built from sawtooth values and two Dedekind-Rademacher sums.
//! An independent route assembles the same number from the generating
//! function's residues: the pole at `z = 1` and the two families of
//! nontrivial roots of unity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Zero};

use crate::dedekind::dr_sum;
use crate::rational::{fdiv, to_i128, widen, Exact, Rational};
use crate::simplex::{DilationVector, SimplexSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleSpec {
    pub a1: i64,
    pub a2: i64,
    pub c1: i64,
    pub c2: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleDilation {
    pub t1: i64,
    pub t2: i64,
    pub t3: i64,
}

impl TriangleDilation {
    pub fn new(t1: i64, t2: i64, t3: i64) -> Self {
        TriangleDilation { t1, t2, t3 }
    }

    pub fn negated(&self) -> Self {
        TriangleDilation::new(-self.t1, -self.t2, -self.t3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuCoefficients {
    pub nu0: Rational,
    pub nu1: Rational,
    pub nu2: Rational,
    pub nu3: Rational,
}

impl TriangleSpec {
    pub fn new(a1: i64, a2: i64, c1: i64, c2: i64) -> Result<Self> {
        if [a1, a2, c1, c2].iter().any(|&x| x <= 0) {
            return Err(Error::InvalidTriangle(format!(
                "parameters must be positive, got a=({a1}, {a2}) c=({c1}, {c2})"
            )));
        }
        if c1.gcd(&c2) != 1 {
            return Err(Error::InvalidTriangle(format!(
                "c1 = {c1} and c2 = {c2} are not coprime"
            )));
        }
        Ok(TriangleSpec { a1, a2, c1, c2 })
    }

    /// The same region in `A x <= t` form: rows `(-a1, 0)`, `(0, -a2)`, `(c1, c2)`.
    pub fn simplex_system(&self) -> SimplexSystem {
        SimplexSystem::new(vec![
            vec![-self.a1, 0],
            vec![0, -self.a2],
            vec![self.c1, self.c2],
        ])
        .expect("right triangle is a valid simplex system")
    }

    pub fn dilation_vector(&self, dil: &TriangleDilation) -> DilationVector {
        vec![-dil.t1, -dil.t2, dil.t3].into()
    }

    /// `a1 a2 t3 - a2 c1 t1 - a1 c2 t2`: positive for a full triangle, zero
    /// for a single point, negative when empty.
    pub fn size_functional(&self, dil: &TriangleDilation) -> i128 {
        let w = |x: i64| x as i128;
        w(self.a1) * w(self.a2) * w(dil.t3)
            - w(self.a2) * w(self.c1) * w(dil.t1)
            - w(self.a1) * w(self.c2) * w(dil.t2)
    }

    /// Nonemptiness check; returns whether the triangle is full-dimensional.
    pub fn validate(&self, dil: &TriangleDilation) -> Result<bool> {
        let size = self.size_functional(dil);
        if size < 0 {
            return Err(Error::InvalidDilation(format!(
                "empty triangle for t = ({}, {}, {})",
                dil.t1, dil.t2, dil.t3
            )));
        }
        Ok(size > 0)
    }
}

/// `e_j = (⌊(t_j - 1)/a_j⌋ + 1) c_j`.
pub fn e_value(tj: i64, aj: i64, cj: i64) -> i128 {
    (fdiv(tj as i128 - 1, aj as i128) + 1) * cj as i128
}

/// Inputs small enough that every intermediate fits `Ratio<i128>`.
fn fits_i128(spec: &TriangleSpec, dil: &TriangleDilation) -> bool {
    const LIMIT: i64 = 1 << 10;
    [spec.a1, spec.a2, spec.c1, spec.c2, dil.t1, dil.t2, dil.t3]
        .iter()
        .all(|x| x.abs() <= LIMIT)
}

fn big(q: Ratio<BigInt>) -> Rational {
    q
}

macro_rules! exact {
    ($spec:expr, $dil:expr, $f:ident $(, $arg:expr)*) => {
        if fits_i128($spec, $dil) {
            widen(&$f::<i128>($spec, $dil $(, $arg)*))
        } else {
            big($f::<BigInt>($spec, $dil $(, $arg)*))
        }
    };
}

fn sawtooth_of<T: Exact>(x: &Ratio<T>) -> Ratio<T> {
    x - x.floor() - Ratio::new(T::one(), T::from(2))
}

struct Params<T: Exact> {
    a1: Ratio<T>,
    a2: Ratio<T>,
    c1: Ratio<T>,
    c2: Ratio<T>,
    t1: Ratio<T>,
    t2: Ratio<T>,
    t3: Ratio<T>,
    /// `(((t1 - 1)/a1))`
    s1: Ratio<T>,
    /// `(((t2 - 1)/a2))`
    s2: Ratio<T>,
}

fn q<T: Exact>(x: i64) -> Ratio<T> {
    Ratio::from_integer(T::from(x))
}

fn qr<T: Exact>(p: i64, d: i64) -> Ratio<T> {
    Ratio::new(T::from(p), T::from(d))
}

impl<T: Exact> Params<T> {
    fn new(spec: &TriangleSpec, dil: &TriangleDilation) -> Self {
        Params {
            a1: q(spec.a1),
            a2: q(spec.a2),
            c1: q(spec.c1),
            c2: q(spec.c2),
            t1: q(dil.t1),
            t2: q(dil.t2),
            t3: q(dil.t3),
            s1: sawtooth_of(&qr(dil.t1 - 1, spec.a1)),
            s2: sawtooth_of(&qr(dil.t2 - 1, spec.a2)),
        }
    }

    /// ν0 without the two Dedekind-Rademacher sums.
    fn nu0_common(&self) -> Ratio<T> {
        let Params {
            a1,
            a2,
            c1,
            c2,
            s1,
            s2,
            ..
        } = self;
        let one = q::<T>(1);
        let two = q::<T>(2);
        -&one / (q::<T>(4) * c1) - &one / (q::<T>(4) * c2)
            + &one / (a1 * a2)
            + &one / (&two * a1 * c2)
            + &one / (&two * a2 * c1)
            + &one / (q::<T>(12) * c1 * c2)
            - c1 / (q::<T>(24) * c2)
            - c2 / (q::<T>(24) * c1)
            + c1 / (&two * a1 * a1 * c2)
            + c2 / (&two * a2 * a2 * c1)
            + s1 * (&one / a2 + &one / (&two * c2) + c1 / (a1 * c2))
            + s2 * (&one / a1 + &one / (&two * c1) + c2 / (a2 * c1))
            + c1 / (&two * c2) * s1 * s1
            + c2 / (&two * c1) * s2 * s2
            + s1 * s2
    }

    fn nu3(&self) -> Ratio<T> {
        let Params {
            a1,
            a2,
            c1,
            c2,
            s1,
            s2,
            ..
        } = self;
        let one = q::<T>(1);
        &one / (a1 * c2) + &one / (a2 * c1) + &one / (q::<T>(2) * c1 * c2) + s1 / c2 + s2 / c1
    }
}

fn nu_generic<T: Exact>(spec: &TriangleSpec, dil: &TriangleDilation) -> [Ratio<T>; 4] {
    let p = Params::<T>::new(spec, dil);
    let Params {
        a1,
        a2,
        c1,
        c2,
        t1,
        t2,
        t3,
        s1,
        s2,
    } = &p;
    let one = q::<T>(1);
    let two = q::<T>(2);
    let half = qr::<T>(1, 2);
    let nu1 = -c1 / (a1 * a1 * c2) - c1 / (a1 * c2) * s1 - s2 / a1 - &one / (a1 * a2)
        - &one / (&two * a1 * c2);
    let nu2 = -c2 / (a2 * a2 * c1) - c2 / (a2 * c1) * s2 - s1 / a2 - &one / (a1 * a2)
        - &one / (&two * a2 * c1);
    // (t3 - e2) and (t3 - e1) with e_j written through the sawtooth
    let shift2 = t3 - c2 * (t2 - &one) / a2 + c2 * s2 - c2 * &half;
    let shift1 = t3 - c1 * (t1 - &one) / a1 + c1 * s1 - c1 * &half;
    let nu0 = p.nu0_common()
        + dr_sum(spec.c1 as u64, spec.c2, &shift2)
        + dr_sum(spec.c2 as u64, spec.c1, &shift1);
    [nu0, nu1, nu2, p.nu3()]
}

/// The linear and constant coefficients of the closure count.
pub fn nu_coefficients(spec: &TriangleSpec, dil: &TriangleDilation) -> NuCoefficients {
    let [nu0, nu1, nu2, nu3] = if fits_i128(spec, dil) {
        nu_generic::<i128>(spec, dil).map(|x| widen(&x))
    } else {
        nu_generic::<BigInt>(spec, dil)
    };
    NuCoefficients { nu0, nu1, nu2, nu3 }
}

fn quadratic_generic<T: Exact>(spec: &TriangleSpec, dil: &TriangleDilation) -> Ratio<T> {
    let Params {
        a1,
        a2,
        c1,
        c2,
        t1,
        t2,
        t3,
        ..
    } = Params::<T>::new(spec, dil);
    let two = q::<T>(2);
    &c1 / (&two * &a1 * &a1 * &c2) * &t1 * &t1 + &c2 / (&two * &a2 * &a2 * &c1) * &t2 * &t2
        + &t3 * &t3 / (&two * &c1 * &c2)
        + &t1 * &t2 / (&a1 * &a2)
        - &t1 * &t3 / (&a1 * &c2)
        - &t2 * &t3 / (&a2 * &c1)
}

/// The purely quadratic part of the closure count.
pub fn quadratic_part(spec: &TriangleSpec, dil: &TriangleDilation) -> Rational {
    exact!(spec, dil, quadratic_generic)
}

fn closed_form_generic<T: Exact>(spec: &TriangleSpec, dil: &TriangleDilation) -> Ratio<T> {
    let [nu0, nu1, nu2, nu3] = nu_generic::<T>(spec, dil);
    quadratic_generic::<T>(spec, dil) + nu1 * q::<T>(dil.t1) + nu2 * q::<T>(dil.t2) + nu3 * q::<T>(dil.t3)
        + nu0
}

/// The closed form evaluated at any `t`, without validity checks. On
/// nonempty dilations it is the closure count; it is the formal
/// quasipolynomial elsewhere.
pub fn closed_form_value(spec: &TriangleSpec, dil: &TriangleDilation) -> Rational {
    exact!(spec, dil, closed_form_generic)
}

pub fn count_closure_triangle(spec: &TriangleSpec, dil: &TriangleDilation) -> Result<i128> {
    spec.validate(dil)?;
    let value = closed_form_value(spec, dil);
    if !value.is_integer() {
        return Err(Error::Internal(format!(
            "closed form produced non-integer {value} for {spec:?} {dil:?}"
        )));
    }
    to_i128(&value)
}

/// Interior count through reciprocity: `L°(t) = (-1)^2 L(-t)`, with the
/// closure evaluated as a formal quasipolynomial at `-t`.
pub fn count_interior_triangle(spec: &TriangleSpec, dil: &TriangleDilation) -> Result<i128> {
    if !spec.validate(dil)? {
        return Ok(0);
    }
    to_i128(&closed_form_value(spec, &dil.negated()))
}

fn residue_z1_generic<T: Exact>(spec: &TriangleSpec, dil: &TriangleDilation) -> Ratio<T> {
    let e = e_value(dil.t1, spec.a1, spec.c1) + e_value(dil.t2, spec.a2, spec.c2) - dil.t3 as i128;
    let e = Ratio::from_integer(T::from(i64::try_from(e).expect("exponent fits in i64")));
    let c1 = q::<T>(spec.c1);
    let c2 = q::<T>(spec.c2);
    let one = q::<T>(1);
    -(&e * &e) / (q::<T>(2) * &c1 * &c2)
        + qr::<T>(1, 2) * &e * (&one / &c1 + &one / &c2 + &one / (&c1 * &c2))
        - qr::<T>(1, 4) * (&one + &one / &c1 + &one / &c2)
        - qr::<T>(1, 12) * (&c1 / &c2 + &c2 / &c1 + &one / (&c1 * &c2))
}

/// Residue at `z = 1` of `z^(e1+e2-t3-1) / ((1-z^c1)(1-z^c2)(1-z))`.
pub fn residue_z1(spec: &TriangleSpec, dil: &TriangleDilation) -> Rational {
    exact!(spec, dil, residue_z1_generic)
}

fn root_sums_generic<T: Exact>(spec: &TriangleSpec, dil: &TriangleDilation) -> [Ratio<T>; 2] {
    let e1 = e_value(dil.t1, spec.a1, spec.c1);
    let e2 = e_value(dil.t2, spec.a2, spec.c2);
    let t3 = dil.t3 as i128;
    let shift = |x: i128| Ratio::from_integer(T::from(i64::try_from(x).expect("shift fits in i64")));
    let lambda = -dr_sum(spec.c1 as u64, spec.c2, &shift(t3 - e2)) + qr::<T>(1, 4 * spec.c1);
    let mu = -dr_sum(spec.c2 as u64, spec.c1, &shift(t3 - e1)) + qr::<T>(1, 4 * spec.c2);
    [lambda, mu]
}

/// Exact sums of the residues over the nontrivial `c1`-th and `c2`-th roots of
/// unity, as Dedekind-Rademacher sums.
pub fn root_residue_sums(spec: &TriangleSpec, dil: &TriangleDilation) -> (Rational, Rational) {
    let [lambda, mu] = if fits_i128(spec, dil) {
        root_sums_generic::<i128>(spec, dil).map(|x| widen(&x))
    } else {
        root_sums_generic::<BigInt>(spec, dil)
    };
    (lambda, mu)
}

/// `-Res(z=1) - Σ_λ Res - Σ_μ Res`, the count by the residue theorem.
pub fn residue_assembly(spec: &TriangleSpec, dil: &TriangleDilation) -> Rational {
    let (lambda, mu) = root_residue_sums(spec, dil);
    -residue_z1(spec, dil) - lambda - mu
}

impl NuCoefficients {
    pub fn is_zero(&self) -> bool {
        self.nu0.is_zero() && self.nu1.is_zero() && self.nu2.is_zero() && self.nu3.is_zero()
    }
}

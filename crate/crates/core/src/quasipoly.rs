//! Multivariate quasipolynomials stored as one polynomial per residue class.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{fdiv, format_rational, int, lcm_u64, Rational};
use crate::recursion::signed_range_sum;
use crate::simplex::solve;
use crate::{Error, Result};

/// Polynomial with rational coefficients keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: Rational) {
        assert_eq!(exponents.len(), self.nvars, "exponent arity");
        let entry = self.terms.entry(exponents).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: &[i64]) -> Rational {
        assert_eq!(t.len(), self.nvars, "evaluation arity");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut mono = BigInt::one();
            for (&x, &k) in t.iter().zip(e) {
                mono *= BigInt::from(x).pow(k);
            }
            acc += c * Rational::from_integer(mono);
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { format!("t{v}") } else { format!("t{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&c))?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A function on `Z^m` that is polynomial on every residue class modulo the
/// period vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    periods: Vec<u64>,
    degree: u32,
    table: Vec<Polynomial>,
}

impl Quasipolynomial {
    pub fn new(periods: Vec<u64>, degree: u32, table: Vec<Polynomial>) -> Result<Self> {
        let m = periods.len();
        if periods.contains(&0) {
            return Err(Error::Internal("periods must be positive".into()));
        }
        let classes = class_count(&periods)?;
        if table.len() != classes {
            return Err(Error::Internal(format!(
                "table has {} entries, expected {classes}",
                table.len()
            )));
        }
        for p in &table {
            if p.nvars() != m {
                return Err(Error::Arity {
                    expected: m,
                    got: p.nvars(),
                });
            }
            if p.total_degree().unwrap_or(0) > degree {
                return Err(Error::Internal(format!(
                    "polynomial {p} exceeds degree bound {degree}"
                )));
            }
        }
        Ok(Quasipolynomial {
            periods,
            degree,
            table,
        })
    }

    pub fn zero(nvars: usize) -> Self {
        Quasipolynomial {
            periods: vec![1; nvars],
            degree: 0,
            table: vec![Polynomial::zero(nvars)],
        }
    }

    /// A polynomial viewed as a quasipolynomial with all periods 1.
    pub fn from_polynomial(p: Polynomial) -> Self {
        Quasipolynomial {
            periods: vec![1; p.nvars()],
            degree: p.total_degree().unwrap_or(0),
            table: vec![p],
        }
    }

    pub fn nvars(&self) -> usize {
        self.periods.len()
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn table(&self) -> &[Polynomial] {
        &self.table
    }

    /// Polynomial attached to the class of `t`.
    pub fn class_polynomial(&self, t: &[i64]) -> Result<&Polynomial> {
        self.check_arity(t)?;
        Ok(&self.table[self.class_index(t)])
    }

    /// Residue vector of each table entry, in table order.
    pub fn residues(&self) -> Vec<Vec<u64>> {
        (0..self.table.len())
            .map(|idx| residue_of(idx, &self.periods))
            .collect()
    }

    pub fn evaluate(&self, t: &[i64]) -> Result<Rational> {
        Ok(self.class_polynomial(t)?.eval(t))
    }

    fn check_arity(&self, t: &[i64]) -> Result<()> {
        if t.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: t.len(),
            });
        }
        Ok(())
    }

    fn class_index(&self, t: &[i64]) -> usize {
        t.iter().zip(&self.periods).fold(0usize, |idx, (&x, &p)| {
            idx * p as usize + x.rem_euclid(p as i64) as usize
        })
    }
}

impl fmt::Display for Quasipolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, p) in self.residues().iter().zip(&self.table) {
            let r: Vec<String> = r.iter().map(u64::to_string).collect();
            writeln!(f, "[{}] {}", r.join(","), p)?;
        }
        Ok(())
    }
}

fn class_count(periods: &[u64]) -> Result<usize> {
    periods
        .iter()
        .try_fold(1usize, |acc, &p| acc.checked_mul(p as usize))
        .ok_or(Error::Overflow("residue class count"))
}

fn residue_of(mut idx: usize, periods: &[u64]) -> Vec<u64> {
    let mut r = vec![0; periods.len()];
    for (slot, &p) in r.iter_mut().zip(periods).rev() {
        *slot = (idx % p as usize) as u64;
        idx /= p as usize;
    }
    r
}

/// Fits a quasipolynomial with the given periods and degree bound to a black
/// box, one tensor grid of `(degree + 1)^m` samples per residue class, and
/// confirms the fit on extra samples outside the grid.
#[derive(Debug, Clone)]
pub struct Interpolator {
    periods: Vec<u64>,
    degree: u32,
    start: Vec<i64>,
}

impl Interpolator {
    pub fn new(periods: Vec<u64>, degree: u32) -> Self {
        let start = vec![0; periods.len()];
        Interpolator {
            periods,
            degree,
            start,
        }
    }

    /// Lowest coordinate used for sampling; nodes of each class are the
    /// first `degree + 1` values `>= start` in that class.
    pub fn start(mut self, start: Vec<i64>) -> Self {
        assert_eq!(start.len(), self.periods.len(), "start arity");
        self.start = start;
        self
    }

    fn not_quasi(&self, detail: String) -> Error {
        Error::NotQuasipolynomial {
            periods: self.periods.clone(),
            degree: self.degree,
            detail,
        }
    }

    pub fn interpolate<F>(&self, mut counter: F) -> Result<Quasipolynomial>
    where
        F: FnMut(&[i64]) -> Result<Rational>,
    {
        let m = self.periods.len();
        if self.periods.contains(&0) {
            return Err(Error::Internal("periods must be positive".into()));
        }
        let classes = class_count(&self.periods)?;
        let k = self.degree as usize + 1;
        let grid = k
            .checked_pow(m as u32)
            .ok_or(Error::Overflow("interpolation grid"))?;

        let mut table = Vec::with_capacity(classes);
        for idx in 0..classes {
            let residue = residue_of(idx, &self.periods);
            let base: Vec<i64> = residue
                .iter()
                .zip(&self.periods)
                .zip(&self.start)
                .map(|((&r, &p), &s)| s + (r as i64 - s).rem_euclid(p as i64))
                .collect();
            let node = |axis: usize, j: i64| base[axis] + self.periods[axis] as i64 * j;

            let mut values = Vec::with_capacity(grid);
            let mut point = vec![0i64; m];
            for flat in 0..grid {
                let mut rem = flat;
                for axis in (0..m).rev() {
                    point[axis] = node(axis, (rem % k) as i64);
                    rem /= k;
                }
                values.push(counter(&point)?);
            }

            // Separable inverse Vandermonde, one axis at a time.
            for axis in 0..m {
                let nodes: Vec<i64> = (0..k as i64).map(|j| node(axis, j)).collect();
                let inv = inverse_vandermonde(&nodes)?;
                let stride = k.pow((m - 1 - axis) as u32);
                let mut next = values.clone();
                for flat in 0..grid {
                    let e = (flat / stride) % k;
                    let origin = flat - e * stride;
                    next[flat] = (0..k)
                        .map(|j| &inv[e][j] * &values[origin + j * stride])
                        .sum();
                }
                values = next;
            }

            let mut poly = Polynomial::zero(m);
            for (flat, c) in values.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; m];
                let mut rem = flat;
                for axis in (0..m).rev() {
                    e[axis] = (rem % k) as u32;
                    rem /= k;
                }
                poly.add_term(e, c);
            }
            if let Some(deg) = poly.total_degree().filter(|&d| d > self.degree) {
                return Err(self.not_quasi(format!(
                    "class {residue:?} needs total degree {deg}"
                )));
            }

            // holdout: just past the grid and just before it, on the diagonal
            for j in [k as i64, k as i64 + 1, -1] {
                let p: Vec<i64> = (0..m).map(|axis| node(axis, j)).collect();
                let expected = counter(&p)?;
                let got = poly.eval(&p);
                if expected != got {
                    return Err(self.not_quasi(format!(
                        "holdout {p:?}: counter gives {expected}, fit gives {got}"
                    )));
                }
            }
            table.push(poly);
        }
        Quasipolynomial::new(self.periods.clone(), self.degree, table)
    }
}

/// Convenience wrapper: sample from the origin.
pub fn interpolate<F>(counter: F, periods: Vec<u64>, degree: u32) -> Result<Quasipolynomial>
where
    F: FnMut(&[i64]) -> Result<Rational>,
{
    Interpolator::new(periods, degree).interpolate(counter)
}

/// `inv[e][j]`: coefficient of `x^e` contributed by the value at node `j`.
fn inverse_vandermonde(nodes: &[i64]) -> Result<Vec<Vec<Rational>>> {
    let k = nodes.len();
    let v: Vec<Vec<Rational>> = nodes
        .iter()
        .map(|&x| (0..k as u32).map(|e| Rational::from_integer(BigInt::from(x).pow(e))).collect())
        .collect();
    let mut inv = vec![vec![Rational::zero(); k]; k];
    for j in 0..k {
        let rhs: Vec<Rational> = (0..k).map(|i| int(i128::from(i == j))).collect();
        let col = solve(v.clone(), rhs)?;
        for (e, c) in col.into_iter().enumerate() {
            inv[e][j] = c;
        }
    }
    Ok(inv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumVariant {
    /// `k` from 1 to `⌊(c·t - 1)/d⌋`.
    Q1,
    /// `k` from 0 to `⌊(c·t)/d⌋`.
    Q2,
}

fn check_sum_args(q: &Quasipolynomial, a: &[i64], c: &[i64], d: i64) -> Result<()> {
    let m = q.nvars();
    if a.len() != m {
        return Err(Error::Arity {
            expected: m,
            got: a.len(),
        });
    }
    if c.len() != m + 1 {
        return Err(Error::Arity {
            expected: m + 1,
            got: c.len(),
        });
    }
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(())
}

/// The sum `Σ_k q(t1 + a1 k, …, tm + am k)` evaluated term by term at
/// `t = (t0, t1, …, tm)`, with the signed convention for reversed limits.
pub fn lemma1_direct(
    q: &Quasipolynomial,
    a: &[i64],
    c: &[i64],
    d: i64,
    variant: SumVariant,
    t: &[i64],
) -> Result<Rational> {
    check_sum_args(q, a, c, d)?;
    if t.len() != c.len() {
        return Err(Error::Arity {
            expected: c.len(),
            got: t.len(),
        });
    }
    let ct: i128 = c.iter().zip(t).map(|(&c, &x)| c as i128 * x as i128).sum();
    let (lo, hi) = match variant {
        SumVariant::Q1 => (1, fdiv(ct - 1, d as i128)),
        SumVariant::Q2 => (0, fdiv(ct, d as i128)),
    };
    let mut arg = vec![0i64; a.len()];
    let mut failure = None;
    let total = signed_range_sum(lo, hi, |k| {
        for ((slot, &x), &ai) in arg.iter_mut().zip(&t[1..]).zip(a) {
            *slot = x + ai * k as i64;
        }
        match q.evaluate(&arg) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                Rational::zero()
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Quasipolynomial in `(t0, t1, …, tm)` equal to the summed family for every
/// integer argument. Periods: `|d| p` in `t0` and `lcm(P_i, |d| p)` in `t_i`,
/// where `p = lcm(P)`; degree `deg q + 1`.
pub fn lemma1_sum(
    q: &Quasipolynomial,
    a: &[i64],
    c: &[i64],
    d: i64,
    variant: SumVariant,
) -> Result<Quasipolynomial> {
    check_sum_args(q, a, c, d)?;
    let p = q.periods().iter().fold(1u64, |acc, &x| lcm_u64(acc, x));
    let dp = d.unsigned_abs() * p;
    let periods: Vec<u64> = std::iter::once(dp)
        .chain(q.periods().iter().map(|&pi| lcm_u64(pi, dp)))
        .collect();
    interpolate(
        |t| lemma1_direct(q, a, c, d, variant, t),
        periods,
        q.degree() + 1,
    )
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = +1/2`.
fn bernoulli_plus(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0 (B_1 = -1/2 convention)
        let s: Rational = (0..m)
            .map(|k| Rational::from_integer(binomial(m as u32 + 1, k as u32)) * &b[k])
            .sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    if n >= 1 {
        b[1] = -b[1].clone();
    }
    b
}

/// Coefficients (constant term first) of `Σ_{k=0}^{N} k^j` as a polynomial in `N`.
pub fn faulhaber(j: u32) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); j as usize + 2];
    if j == 0 {
        coeffs[0] = Rational::one();
        coeffs[1] = Rational::one();
        return coeffs;
    }
    let b = bernoulli_plus(j as usize);
    let scale = Rational::new(BigInt::one(), BigInt::from(j + 1));
    for (i, bi) in b.iter().enumerate() {
        let power = j as usize + 1 - i;
        coeffs[power] += &scale * Rational::from_integer(binomial(j + 1, i as u32)) * bi;
    }
    coeffs
}

pub fn faulhaber_value(j: u32, n: i128) -> Rational {
    faulhaber(j)
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * int(n) + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn half_floor_plus_one() -> Quasipolynomial {
        // ⌊t/2⌋ + 1
        let even = Polynomial::from_terms(1, [(vec![0], int(1)), (vec![1], rat(1, 2))]);
        let odd = Polynomial::from_terms(1, [(vec![0], rat(1, 2)), (vec![1], rat(1, 2))]);
        Quasipolynomial::new(vec![2], 1, vec![even, odd]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let q = half_floor_plus_one();
        assert_eq!(q.evaluate(&[5]).unwrap(), int(3));
        assert_eq!(q.evaluate(&[4]).unwrap(), int(3));
        assert_eq!(q.evaluate(&[-3]).unwrap(), int(-1));
        assert_eq!(Quasipolynomial::zero(3).evaluate(&[1, -2, 9]).unwrap(), int(0));
        assert_eq!(
            q.evaluate(&[1, 2]),
            Err(Error::Arity {
                expected: 1,
                got: 2
            })
        );
    }

    #[test]
    fn interpolate_floor() {
        let q = interpolate(|t| Ok(int(fdiv(t[0] as i128, 2) + 1)), vec![2], 1).unwrap();
        assert_eq!(q, half_floor_plus_one());
    }

    #[test]
    fn interpolate_square() {
        let q = interpolate(|t| Ok(int((t[0] as i128).pow(2))), vec![1], 2).unwrap();
        assert_eq!(q.table(), &[Polynomial::from_terms(1, [(vec![2], int(1))])]);
    }

    #[test]
    fn interpolate_rejects_wrong_period() {
        let err = interpolate(|t| Ok(int(fdiv(t[0] as i128, 3))), vec![2], 1).unwrap_err();
        assert!(matches!(err, Error::NotQuasipolynomial { .. }));
        let err = interpolate(|t| Ok(int((t[0] as i128).pow(3))), vec![1], 2).unwrap_err();
        assert!(matches!(err, Error::NotQuasipolynomial { .. }));
    }

    #[test]
    fn interpolate_two_variables() {
        // ⌊(x + 2y)/3⌋ * x, periods (3, 3), degree 2
        let f = |t: &[i64]| int(fdiv(t[0] as i128 + 2 * t[1] as i128, 3) * t[0] as i128);
        let q = interpolate(|t| Ok(f(t)), vec![3, 3], 2).unwrap();
        for x in -7..8 {
            for y in -7..8 {
                assert_eq!(q.evaluate(&[x, y]).unwrap(), f(&[x, y]));
            }
        }
    }

    #[test]
    fn lemma1_constant_q2() {
        let one = Quasipolynomial::from_polynomial(Polynomial::constant(0, int(1)));
        let q = lemma1_sum(&one, &[], &[1], 2, SumVariant::Q2).unwrap();
        assert_eq!(q, half_floor_plus_one());
    }

    #[test]
    fn lemma1_linear() {
        let q = Quasipolynomial::from_polynomial(Polynomial::from_terms(1, [(vec![1], int(1))]));
        // (t0 + 1) t1 + t0 (t0 + 1) / 2
        let q2 = lemma1_sum(&q, &[1], &[1, 0], 1, SumVariant::Q2).unwrap();
        let want2 = Polynomial::from_terms(
            2,
            [
                (vec![1, 1], int(1)),
                (vec![0, 1], int(1)),
                (vec![2, 0], rat(1, 2)),
                (vec![1, 0], rat(1, 2)),
            ],
        );
        assert_eq!(q2.table(), &[want2]);
        // (t0 - 1) t1 + t0 (t0 - 1) / 2
        let q1 = lemma1_sum(&q, &[1], &[1, 0], 1, SumVariant::Q1).unwrap();
        let want1 = Polynomial::from_terms(
            2,
            [
                (vec![1, 1], int(1)),
                (vec![0, 1], int(-1)),
                (vec![2, 0], rat(1, 2)),
                (vec![1, 0], rat(-1, 2)),
            ],
        );
        assert_eq!(q1.table(), &[want1]);
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber_value(1, 4), int(10));
        assert_eq!(faulhaber(0), vec![int(1), int(1)]);
        assert_eq!(faulhaber_value(2, 3), int(14));
        for j in 0..7u32 {
            for n in -6i128..12 {
                let direct: Rational = signed_range_sum(0, n, |k| int(k.pow(j)));
                assert_eq!(faulhaber_value(j, n), direct, "j={j} n={n}");
            }
        }
    }

    #[test]
    fn display_lists_classes() {
        let s = half_floor_plus_one().to_string();
        assert_eq!(s, "[0] 1/2*t0 + 1\n[1] 1/2*t0 + 1/2\n");
        let p = Polynomial::from_terms(2, [(vec![1, 1], rat(-1, 1)), (vec![0, 1], int(1)), (vec![0, 0], rat(-3, 4))]);
        assert_eq!(p.to_string(), "-t0*t1 + t1 - 3/4");
    }
}

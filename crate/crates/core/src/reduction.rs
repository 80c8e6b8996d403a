//! Unimodular normalization of the first facet and the first-coordinate
//! functional of the opposite vertex.
//!
//! After the change of coordinates `x = U y` the first row of `A U` is
//! `(-a11, 0, …, 0)` with `a11 > 0`, so the first facet reads
//! `y1 >= -t1 / a11`. The vertex `w` cut out by the remaining `n` facets has
//! first coordinate `(c · (t2, …, t_{n+1})) / d` with `d > 0`.

use crate::rational::{ext_gcd, gcd_i128};
use crate::simplex::{determinant, SimplexSystem};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Unimodular change of coordinates, `x = U y`.
    pub u: Vec<Vec<i64>>,
    /// Positive magnitude of the first reduced row; the facet is `a11 y1 >= -t1`.
    pub a11: i64,
    /// Whether `y1 -> -y1` was applied to turn the first facet into a lower bound.
    pub flipped: bool,
    /// First column of rows `2..=n+1` of `A U`.
    pub first_column_tail: Vec<i64>,
    /// Rows `2..=n+1`, columns `2..=n` of `A U`; empty rows when `n == 1`.
    pub b: Vec<Vec<i64>>,
    pub c: Vec<i64>,
    pub d: i64,
}

impl ReductionStep {
    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// The reduced matrix `A U`, reassembled.
    pub fn reduced_rows(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut first = vec![0; n];
        first[0] = -self.a11;
        std::iter::once(first)
            .chain(
                self.first_column_tail
                    .iter()
                    .zip(&self.b)
                    .map(|(&a, rest)| std::iter::once(a).chain(rest.iter().copied()).collect()),
            )
            .collect()
    }

    /// The sub-system obtained by fixing `y1`: matrix `B` with `n` rows.
    pub fn slice_system(&self) -> Result<SimplexSystem> {
        SimplexSystem::new(self.b.clone())
    }

    /// `c · tail` as an exact integer, i.e. `d` times the first coordinate of `w`.
    pub fn functional_numerator(&self, tail: &[i64]) -> i128 {
        self.c
            .iter()
            .zip(tail)
            .map(|(&c, &t)| c as i128 * t as i128)
            .sum()
    }
}

pub fn unimodular_reduce(system: &SimplexSystem) -> Result<ReductionStep> {
    let n = system.dim();
    let mut a: Vec<Vec<i128>> = system
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();

    // Column operations clearing row 0 beyond the first entry.
    for j in 1..n {
        let (x, y) = (a[0][0], a[0][j]);
        if y == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(x, y);
        let (p, q) = (-y / g, x / g);
        // [[s, p], [t, q]] has determinant (s x + t y) / g = 1.
        for m in [&mut a, &mut u] {
            for row in m.iter_mut() {
                let (c0, cj) = (row[0], row[j]);
                row[0] = s * c0 + t * cj;
                row[j] = p * c0 + q * cj;
            }
        }
    }

    let flipped = a[0][0] > 0;
    if flipped {
        for m in [&mut a, &mut u] {
            for row in m.iter_mut() {
                row[0] = -row[0];
            }
        }
    }
    debug_assert!(a[0][0] < 0 && a[0][1..].iter().all(|&x| x == 0));

    // Cramer's rule on rows 1..=n: the first coordinate of the solution is
    // sum_j t_j C_{j,0} / det(M), with C the cofactors of column 0.
    let m: Vec<Vec<i128>> = a[1..].to_vec();
    let mut d = determinant(m.clone())?;
    let mut c: Vec<i128> = (0..n)
        .map(|row| {
            let minor: Vec<Vec<i128>> = m
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != row)
                .map(|(_, r)| r[1..].to_vec())
                .collect();
            let sign = if row % 2 == 0 { 1 } else { -1 };
            determinant(minor).map(|v| sign * v)
        })
        .collect::<Result<_>>()?;
    if d == 0 {
        return Err(Error::Internal("reduced subsystem is singular".into()));
    }
    if d < 0 {
        d = -d;
        c.iter_mut().for_each(|x| *x = -*x);
    }
    let g = c.iter().fold(d, |g, &x| gcd_i128(g, x));
    d /= g;
    c.iter_mut().for_each(|x| *x /= g);

    let narrow = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("unimodular reduction"));
    Ok(ReductionStep {
        u: u.into_iter()
            .map(|r| r.into_iter().map(narrow).collect())
            .collect::<Result<_>>()?,
        a11: narrow(-a[0][0])?,
        flipped,
        first_column_tail: a[1..].iter().map(|r| narrow(r[0])).collect::<Result<_>>()?,
        b: a[1..]
            .iter()
            .map(|r| r[1..].iter().map(|&x| narrow(x)).collect())
            .collect::<Result<_>>()?,
        c: c.into_iter().map(narrow).collect::<Result<_>>()?,
        d: narrow(d)?,
    })
}

/// The `(c, d)` pair with `w1 = (c · (t2, …, t_{n+1})) / d` and `d > 0`.
pub fn first_coordinate_functional(step: &ReductionStep) -> (Vec<i64>, i64) {
    (step.c.clone(), step.d)
}

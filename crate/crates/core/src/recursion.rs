//! Dimension-stripping lattice-point counter.
//!
//! The first coordinate ranges over the integers between the first facet and
//! the opposite vertex `w`; each slice is a vector-dilated simplex one
//! dimension lower, with matrix `B` and dilation `t_i - a_i1 m`. Sums whose
//! lower limit exceeds the upper limit follow the signed convention of
//! [`signed_range_sum`], which makes the counts defined for every integer
//! `t` and turns the reciprocity law into an algebraic identity.

use std::ops::{AddAssign, Neg};

use num_traits::Zero;

use crate::rational::fdiv;
use crate::reduction::{unimodular_reduce, ReductionStep};
use crate::simplex::{DilationVector, SimplexSystem};
use crate::Result;

/// `Σ_{k=a}^{b} f(k)` for `a <= b`, `0` for `a = b + 1`, and
/// `-Σ_{k=b+1}^{a-1} f(k)` for `a >= b + 2`.
pub fn signed_range_sum<T, F>(a: i128, b: i128, mut f: F) -> T
where
    T: Zero + AddAssign + Neg<Output = T>,
    F: FnMut(i128) -> T,
{
    let mut acc = T::zero();
    if a <= b {
        for k in a..=b {
            acc += f(k);
        }
        acc
    } else {
        for k in b + 1..a {
            acc += f(k);
        }
        -acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Interior,
    Closure,
}

#[derive(Debug, Clone)]
enum Level {
    /// `-lower.1 x <= t[lower.0]` and `upper.1 x <= t[upper.0]`, both coefficients positive.
    Interval { lower: (usize, i128), upper: (usize, i128) },
    Slice(ReductionStep),
}

/// Counter for one simplex system; the reduction chain depends only on `A`
/// and is computed once.
#[derive(Debug, Clone)]
pub struct Counter {
    system: SimplexSystem,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityReport {
    /// `L°(-t)` through the formal recursion.
    pub interior_at_negated: i128,
    /// `(-1)^n L(t)`.
    pub signed_closure: i128,
}

impl ReciprocityReport {
    pub fn holds(&self) -> bool {
        self.interior_at_negated == self.signed_closure
    }
}

impl Counter {
    pub fn new(system: SimplexSystem) -> Result<Self> {
        let mut levels = Vec::with_capacity(system.dim());
        let mut current = system.clone();
        while current.dim() > 1 {
            let step = unimodular_reduce(&current)?;
            let next = step.slice_system()?;
            levels.push(Level::Slice(step));
            current = next;
        }
        let r0 = current.rows()[0][0] as i128;
        let r1 = current.rows()[1][0] as i128;
        // a valid 1-D system has one row of each sign
        let (lower, upper) = if r0 < 0 { ((0, -r0), (1, r1)) } else { ((1, -r1), (0, r0)) };
        levels.push(Level::Interval { lower, upper });
        Ok(Counter { system, levels })
    }

    pub fn system(&self) -> &SimplexSystem {
        &self.system
    }

    /// Number of recursion levels; always equal to the dimension.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn reductions(&self) -> impl Iterator<Item = &ReductionStep> {
        self.levels.iter().filter_map(|l| match l {
            Level::Slice(s) => Some(s),
            Level::Interval { .. } => None,
        })
    }

    /// The recursion's value for any integer `t`.
    pub fn formal(&self, t: &DilationVector, mode: Mode) -> Result<i128> {
        self.system.check_dilation(t)?;
        let t: Vec<i128> = t.as_slice().iter().map(|&x| x as i128).collect();
        Ok(self.eval(0, &t, mode))
    }

    pub fn formal_interior(&self, t: &DilationVector) -> Result<i128> {
        self.formal(t, Mode::Interior)
    }

    pub fn formal_closure(&self, t: &DilationVector) -> Result<i128> {
        self.formal(t, Mode::Closure)
    }

    /// Lattice points in `{x : A x <= t}`; the geometric count whenever the
    /// region is nonempty, the formal quasipolynomial value otherwise.
    pub fn count_closure(&self, t: &DilationVector) -> Result<i128> {
        self.formal_closure(t)
    }

    /// Lattice points in `{x : A x < t}`. A nonempty region that is a single
    /// point has no interior and yields 0; elsewhere this is the recursion's
    /// value (geometric for full-dimensional regions, formal for empty ones).
    pub fn count_interior(&self, t: &DilationVector) -> Result<i128> {
        if self.system.size_functional(t)? == 0 {
            return Ok(0);
        }
        self.formal_interior(t)
    }

    pub fn reciprocity(&self, t: &DilationVector) -> Result<ReciprocityReport> {
        let closure = self.formal_closure(t)?;
        let sign = if self.system.dim() % 2 == 0 { 1 } else { -1 };
        Ok(ReciprocityReport {
            interior_at_negated: self.formal_interior(&-t)?,
            signed_closure: sign * closure,
        })
    }

    fn eval(&self, depth: usize, t: &[i128], mode: Mode) -> i128 {
        match &self.levels[depth] {
            Level::Interval { lower, upper } => {
                let (tl, al) = (-t[lower.0], lower.1);
                let (tu, au) = (t[upper.0], upper.1);
                match mode {
                    Mode::Interior => fdiv(tu - 1, au) - fdiv(tl, al),
                    Mode::Closure => fdiv(tu, au) - fdiv(tl - 1, al),
                }
            }
            Level::Slice(step) => {
                let g = step.a11 as i128;
                let d = step.d as i128;
                let tail = &t[1..];
                let ct: i128 = step
                    .c
                    .iter()
                    .zip(tail)
                    .map(|(&c, &x)| c as i128 * x)
                    .sum();
                let (lo, hi) = match mode {
                    Mode::Interior => (fdiv(-t[0], g) + 1, fdiv(ct - 1, d)),
                    Mode::Closure => (fdiv(-t[0] - 1, g) + 1, fdiv(ct, d)),
                };
                let mut slice = vec![0i128; tail.len()];
                signed_range_sum(lo, hi, |m| {
                    for ((s, &x), &a) in slice.iter_mut().zip(tail).zip(&step.first_column_tail) {
                        *s = x - a as i128 * m;
                    }
                    self.eval(depth + 1, &slice, mode)
                })
            }
        }
    }
}

pub fn count_interior(system: &SimplexSystem, t: &DilationVector) -> Result<i128> {
    Counter::new(system.clone())?.count_interior(t)
}

pub fn count_closure(system: &SimplexSystem, t: &DilationVector) -> Result<i128> {
    Counter::new(system.clone())?.count_closure(t)
}

/// `L°(-t) = (-1)^n L(t)`, both sides through the formal recursion.
pub fn reciprocity_check(system: &SimplexSystem, t: &DilationVector) -> Result<bool> {
    Ok(Counter::new(system.clone())?.reciprocity(t)?.holds())
}

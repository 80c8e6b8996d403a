//! The simplex data model: `{x : A x <= t}` with one row of `A` per facet.

use std::fmt;
use std::ops::Neg;

use num_traits::{Signed, Zero};

use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Integer dilation vector, one entry per facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DilationVector(pub Vec<i64>);

impl DilationVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DilationVector(entries)
    }

    /// `s · b`, recovering the classical single-factor dilation.
    pub fn scaled(reference: &[i64], s: i64) -> Self {
        DilationVector(reference.iter().map(|b| b * s).collect())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for DilationVector {
    fn from(v: Vec<i64>) -> Self {
        DilationVector(v)
    }
}

impl Neg for &DilationVector {
    type Output = DilationVector;

    fn neg(self) -> DilationVector {
        DilationVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for DilationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `n + 1` facet normals in `n` dimensions plus a reference right-hand side.
///
/// Construction enforces that deleting any single row leaves a nonsingular
/// `n × n` matrix and that `{x : A x <= 0} = {0}`. Both follow from the
/// signed maximal minors `λ_i = (-1)^i det(A without row i)`: they span the
/// left kernel of `A`, and the system is a bounded simplex shape exactly when
/// all of them are nonzero with a common sign. They are stored normalized to
/// be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSystem {
    dim: usize,
    rows: Vec<Vec<i64>>,
    reference: Vec<i64>,
    dependence: Vec<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateVertex {
    /// Index of the facet left out of the equality system.
    pub omitted_facet: usize,
    pub point: Vec<Rational>,
    /// Whether the point also satisfies the omitted inequality.
    pub actual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub nonempty: bool,
    pub bounded: bool,
    pub full_dimensional: bool,
    pub vertices: Option<Vec<Vec<Rational>>>,
}

impl ValidityReport {
    /// Nonempty and bounded, the condition under which counts are defined.
    pub fn is_valid(&self) -> bool {
        self.nonempty && self.bounded
    }
}

impl SimplexSystem {
    /// Builds a system with a zero reference vector.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let len = rows.len();
        Self::with_reference(rows, vec![0; len])
    }

    pub fn with_reference(rows: Vec<Vec<i64>>, reference: Vec<i64>) -> Result<Self> {
        let m = rows.len();
        if m < 2 {
            return Err(Error::MalformedSystem(format!(
                "need at least 2 rows, got {m}"
            )));
        }
        let dim = m - 1;
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::MalformedSystem(format!(
                "row {i} has {} entries, expected {dim}",
                r.len()
            )));
        }
        if reference.len() != m {
            return Err(Error::MalformedSystem(format!(
                "reference vector has length {}, expected {m}",
                reference.len()
            )));
        }

        let mut dependence = Vec::with_capacity(m);
        for i in 0..m {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.iter().map(|&x| x as i128).collect())
                .collect();
            let det = determinant(minor)?;
            if det == 0 {
                return Err(Error::MalformedSystem(format!(
                    "deleting row {i} leaves a singular matrix"
                )));
            }
            dependence.push(if i % 2 == 0 { det } else { -det });
        }
        let sign = dependence[0].signum();
        if dependence.iter().any(|l| l.signum() != sign) {
            return Err(Error::MalformedSystem(
                "recession cone {x : Ax <= 0} is nontrivial (region is unbounded)".into(),
            ));
        }
        if sign < 0 {
            dependence.iter_mut().for_each(|l| *l = -*l);
        }

        Ok(SimplexSystem {
            dim,
            rows,
            reference,
            dependence,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn reference(&self) -> &[i64] {
        &self.reference
    }

    /// Positive weights `λ` with `λᵀ A = 0`.
    pub fn dependence(&self) -> &[i128] {
        &self.dependence
    }

    pub fn check_dilation(&self, t: &DilationVector) -> Result<()> {
        if t.len() != self.rows.len() {
            return Err(Error::DilationLength {
                expected: self.rows.len(),
                got: t.len(),
            });
        }
        Ok(())
    }

    /// `λ · t`. The region is nonempty iff this is `>= 0` and full-dimensional
    /// iff it is `> 0`; it is proportional to the dilation's linear size.
    pub fn size_functional(&self, t: &DilationVector) -> Result<i128> {
        self.check_dilation(t)?;
        Ok(self
            .dependence
            .iter()
            .zip(t.as_slice())
            .map(|(l, &x)| l * x as i128)
            .sum())
    }

    /// The `n + 1` solutions of the square systems obtained by deleting one
    /// row, each flagged by whether it satisfies the deleted inequality.
    pub fn vertices(&self, t: &DilationVector) -> Result<Vec<CandidateVertex>> {
        self.check_dilation(t)?;
        let t = t.as_slice();
        (0..self.rows.len())
            .map(|omit| {
                let (mat, rhs): (Vec<Vec<Rational>>, Vec<Rational>) = self
                    .rows
                    .iter()
                    .zip(t)
                    .enumerate()
                    .filter(|(j, _)| *j != omit)
                    .map(|(_, (r, &ti))| {
                        (r.iter().map(|&x| int(x as i128)).collect(), int(ti as i128))
                    })
                    .unzip();
                let point = solve(mat, rhs)?;
                let lhs: Rational = self.rows[omit]
                    .iter()
                    .zip(&point)
                    .map(|(&a, x)| x * int(a as i128))
                    .sum();
                Ok(CandidateVertex {
                    omitted_facet: omit,
                    actual: lhs <= int(t[omit] as i128),
                    point,
                })
            })
            .collect()
    }

    pub fn validate_dilation(&self, t: &DilationVector) -> Result<ValidityReport> {
        let size = self.size_functional(t)?;
        let nonempty = size >= 0;
        let vertices = if nonempty {
            Some(self.vertices(t)?.into_iter().map(|v| v.point).collect())
        } else {
            None
        };
        Ok(ValidityReport {
            nonempty,
            bounded: true,
            full_dimensional: size > 0,
            vertices,
        })
    }

    /// Exact membership test `A m <= t` (or `<` when `strict`).
    pub fn contains(&self, point: &[i64], t: &DilationVector, strict: bool) -> bool {
        self.rows.iter().zip(t.as_slice()).all(|(row, &ti)| {
            let lhs: i128 = row
                .iter()
                .zip(point)
                .map(|(&a, &x)| a as i128 * x as i128)
                .sum();
            if strict {
                lhs < ti as i128
            } else {
                lhs <= ti as i128
            }
        })
    }

    /// The system in coordinates `x = U y`, i.e. with matrix `A U`.
    pub fn transformed(&self, u: &[Vec<i64>]) -> Result<SimplexSystem> {
        if u.len() != self.dim || u.iter().any(|r| r.len() != self.dim) {
            return Err(Error::MalformedSystem(format!(
                "transformation must be {0}x{0}",
                self.dim
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..self.dim)
                    .map(|j| {
                        let v: i128 = (0..self.dim).map(|k| r[k] as i128 * u[k][j] as i128).sum();
                        i64::try_from(v).map_err(|_| Error::Overflow("A·U"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplexSystem::with_reference(rows, self.reference.clone())
    }
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn determinant(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                    .ok_or(Error::Overflow("determinant"))?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Gaussian elimination over the rationals for a nonsingular square system.
pub(crate) fn solve(mut mat: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = mat.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !mat[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular linear system".into()))?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = mat[col][col].clone();
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let f = &mat[r][col] / &p;
            for c in col..n {
                let sub = &f * &mat[col][c];
                mat[r][c] -= sub;
            }
            let sub = &f * &rhs[col];
            rhs[r] -= sub;
        }
    }
    Ok((0..n).map(|i| &rhs[i] / &mat[i][i]).collect())
}

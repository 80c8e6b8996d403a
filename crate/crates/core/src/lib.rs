//! Exact lattice-point counting for vector-dilated rational simplices.
//!
//! A simplex is described by an integer matrix `A` with `n + 1` rows and `n`
//! columns; every integer vector `t` of length `n + 1` selects the region
//! `{x : A x <= t}`, in which each facet is translated independently. The
//! crate counts lattice points in the closure and interior of such regions
//! by a dimension-stripping recursion, checks the reciprocity law
//! `L°(-t) = (-1)^n L(t)`, fits multivariate quasipolynomials to count
//! functions, evaluates a closed form for right triangles built from
//! Dedekind-Rademacher sums, and counts lattice points in arbitrary rational
//! polygons.
//!
//! Every quantity is exact: integers are machine integers with checked
//! bounds, everything fractional is a [`Rational`].

pub mod dedekind;
pub mod error;
pub mod oracle;
pub mod polygon;
pub mod quasipoly;
pub mod rational;
pub mod recursion;
pub mod reduction;
pub mod simplex;
pub mod triangle;

pub use error::{Error, Result};
pub use polygon::{PolygonSpec, Point};
pub use quasipoly::{Polynomial, Quasipolynomial, SumVariant};
pub use rational::{floor_div, Rational};
pub use recursion::{Counter, Mode};
pub use reduction::ReductionStep;
pub use simplex::{CandidateVertex, DilationVector, SimplexSystem, ValidityReport};
pub use triangle::{NuCoefficients, TriangleDilation, TriangleSpec};

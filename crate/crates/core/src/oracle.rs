//! Brute-force lattice-point enumeration over exact bounding boxes.
//!
//! These counts are the reference for the recursion, the triangle closed form
//! and the polygon decomposition.

use num_traits::{Signed, Zero};

use crate::polygon::{PolygonSpec, Point};
use crate::rational::{big_to_i128, ceil, floor, int, Rational};
use crate::simplex::{DilationVector, SimplexSystem};
use crate::{Error, Result};

pub const DEFAULT_CELL_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForce {
    pub cell_budget: u128,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

pub fn count_closure_bruteforce(system: &SimplexSystem, t: &DilationVector) -> Result<u64> {
    BruteForce::default().count_closure(system, t)
}

pub fn count_interior_bruteforce(system: &SimplexSystem, t: &DilationVector) -> Result<u64> {
    BruteForce::default().count_interior(system, t)
}

pub fn count_polygon_bruteforce(poly: &PolygonSpec) -> Result<(u64, u64)> {
    BruteForce::default().count_polygon(poly)
}

impl BruteForce {
    pub fn new(cell_budget: u128) -> Self {
        BruteForce { cell_budget }
    }

    pub fn count_closure(&self, system: &SimplexSystem, t: &DilationVector) -> Result<u64> {
        self.count(system, t, false)
    }

    pub fn count_interior(&self, system: &SimplexSystem, t: &DilationVector) -> Result<u64> {
        self.count(system, t, true)
    }

    /// Integer box `[lo, hi]` per coordinate around the vertex set.
    pub fn simplex_box(
        &self,
        system: &SimplexSystem,
        t: &DilationVector,
    ) -> Result<Vec<(i64, i64)>> {
        let report = system.validate_dilation(t)?;
        let vertices = report
            .vertices
            .filter(|_| report.nonempty)
            .ok_or_else(|| Error::InvalidDilation(format!("{t} gives an empty region")))?;
        let bounds = (0..system.dim())
            .map(|j| {
                let lo = vertices.iter().map(|v| floor(&v[j])).min().unwrap();
                let hi = vertices.iter().map(|v| ceil(&v[j])).max().unwrap();
                Ok((narrow(big_to_i128(&lo)?)?, narrow(big_to_i128(&hi)?)?))
            })
            .collect::<Result<Vec<_>>>()?;
        self.check_budget(&bounds)?;
        Ok(bounds)
    }

    fn count(&self, system: &SimplexSystem, t: &DilationVector, strict: bool) -> Result<u64> {
        let bounds = self.simplex_box(system, t)?;
        let mut point: Vec<i64> = bounds.iter().map(|b| b.0).collect();
        let mut total = 0u64;
        loop {
            if system.contains(&point, t, strict) {
                total += 1;
            }
            if !advance(&mut point, &bounds) {
                return Ok(total);
            }
        }
    }

    /// `(closure, interior)` lattice counts of a simple polygon.
    pub fn count_polygon(&self, poly: &PolygonSpec) -> Result<(u64, u64)> {
        let vs = poly.vertices();
        let xlo = vs.iter().map(|p| floor(&p.x)).min().unwrap();
        let xhi = vs.iter().map(|p| ceil(&p.x)).max().unwrap();
        let ylo = vs.iter().map(|p| floor(&p.y)).min().unwrap();
        let yhi = vs.iter().map(|p| ceil(&p.y)).max().unwrap();
        let bounds = vec![
            (narrow(big_to_i128(&xlo)?)?, narrow(big_to_i128(&xhi)?)?),
            (narrow(big_to_i128(&ylo)?)?, narrow(big_to_i128(&yhi)?)?),
        ];
        self.check_budget(&bounds)?;
        let (mut closure, mut interior) = (0u64, 0u64);
        for x in bounds[0].0..=bounds[0].1 {
            for y in bounds[1].0..=bounds[1].1 {
                let p = Point::new(int(x as i128), int(y as i128));
                match locate(vs, &p) {
                    Location::Inside => {
                        closure += 1;
                        interior += 1;
                    }
                    Location::Boundary => closure += 1,
                    Location::Outside => {}
                }
            }
        }
        Ok((closure, interior))
    }

    fn check_budget(&self, bounds: &[(i64, i64)]) -> Result<()> {
        let cells = bounds.iter().try_fold(1u128, |acc, &(lo, hi)| {
            acc.checked_mul((hi as i128 - lo as i128 + 1) as u128)
        });
        match cells {
            Some(c) if c <= self.cell_budget => Ok(()),
            Some(c) => Err(Error::BudgetExceeded {
                cells: c,
                budget: self.cell_budget,
            }),
            None => Err(Error::BudgetExceeded {
                cells: u128::MAX,
                budget: self.cell_budget,
            }),
        }
    }
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("bounding box"))
}

fn advance(point: &mut [i64], bounds: &[(i64, i64)]) -> bool {
    for (x, &(lo, hi)) in point.iter_mut().zip(bounds) {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    cross(a, b, p).is_zero()
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Exact point location by boundary test plus horizontal ray parity.
pub fn locate(vertices: &[Point], p: &Point) -> Location {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the crossing, compared without division
            let lhs = (&p.x - &a.x) * (&b.y - &a.y);
            let rhs = (&b.x - &a.x) * (&p.y - &a.y);
            let crosses = if (&b.y - &a.y).is_positive() { lhs < rhs } else { lhs > rhs };
            if crosses {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

//! Lattice points in simple rational polygons.
//!
//! Every non-vertical edge contributes, with sign `+1` when it runs leftwards
//! (an upper edge of a counterclockwise polygon) and `-1` otherwise, the
//! lattice points of the half-open trapezoid
//! `{xa <= X < xb, Y0 <= Y < h(X)}` between the edge and a horizontal
//! baseline `Y0` below the polygon. Each trapezoid is an axis-aligned
//! rectangle plus a right triangle whose legs are axis-parallel; the
//! triangle is counted with the closed form from [`crate::triangle`] after
//! reflecting `X -> -X` when the edge rises.
//!
//! The signed sum counts a lattice point exactly when the point displaced
//! infinitesimally upward (and a little less to the right) lies inside the
//! polygon. That is the right answer off the boundary; boundary points are
//! classified edge by edge and vertex by vertex and added back.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{big_to_i128, ceil, floor, int, Rational};
use crate::triangle::{count_closure_triangle, TriangleDilation, TriangleSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x as i128), int(y as i128))
    }

    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

/// A simple polygon, stored counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonSpec {
    vertices: Vec<Point>,
}

fn cross(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    cross(&b.sub(a), &c.sub(a))
}

fn within_box(p: &Point, a: &Point, b: &Point) -> bool {
    p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 != o2 && o3 != o4 && !o1.is_zero() && !o2.is_zero() && !o3.is_zero() && !o4.is_zero() {
        return true;
    }
    (o1.is_zero() && within_box(c, a, b))
        || (o2.is_zero() && within_box(d, a, b))
        || (o3.is_zero() && within_box(a, c, d))
        || (o4.is_zero() && within_box(b, c, d))
        || (o1 != o2 && o3 != o4)
}

impl PolygonSpec {
    /// Validates simplicity; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("need at least 3 vertices, got {n}")));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon(format!("vertex {i} repeats its successor")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
                let (c, d) = (&vertices[j], &vertices[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // consecutive edges may only share their common vertex
                    let (shared, far_1, far_2) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    if orient(far_1, shared, far_2).is_zero() {
                        let back = far_1.sub(shared);
                        let fwd = far_2.sub(shared);
                        if (&back.0 * &fwd.0 + &back.1 * &fwd.1).is_positive() {
                            return Err(Error::InvalidPolygon(format!(
                                "edges {i} and {j} overlap"
                            )));
                        }
                    }
                } else if segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidPolygon(format!("edges {i} and {j} intersect")));
                }
            }
        }
        let twice_area = shoelace(&vertices);
        if twice_area.is_zero() {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if twice_area.is_negative() {
            vertices.reverse();
        }
        Ok(PolygonSpec { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> Rational {
        shoelace(&self.vertices) / int(2)
    }

    pub fn is_lattice_polygon(&self) -> bool {
        self.vertices.iter().all(Point::is_lattice)
    }

    /// Applies `(x, y) -> (m00 x + m01 y + dx, m10 x + m11 y + dy)`.
    pub fn map(&self, m: [[i64; 2]; 2], shift: (i64, i64)) -> Result<PolygonSpec> {
        let r = |v: i64| int(v as i128);
        PolygonSpec::new(
            self.vertices
                .iter()
                .map(|p| {
                    Point::new(
                        r(m[0][0]) * &p.x + r(m[0][1]) * &p.y + r(shift.0),
                        r(m[1][0]) * &p.x + r(m[1][1]) * &p.y + r(shift.1),
                    )
                })
                .collect(),
        )
    }
}

fn shoelace(vs: &[Point]) -> Rational {
    let n = vs.len();
    (0..n)
        .map(|i| {
            let (p, q) = (&vs[i], &vs[(i + 1) % n]);
            &p.x * &q.y - &q.x * &p.y
        })
        .sum()
}

/// Primitive integer direction `(dx, dy)` of `q - p`, with `gcd = 1`.
fn primitive_direction(p: &Point, q: &Point) -> (BigInt, BigInt) {
    let (dx, dy) = q.sub(p);
    let l = dx.denom().lcm(dy.denom());
    let ix = dx.numer() * (&l / dx.denom());
    let iy = dy.numer() * (&l / dy.denom());
    let g = ix.gcd(&iy);
    (ix / &g, iy / &g)
}

/// Integer points on the segment `[p, q]`, or `[p, q)` when `half_open`.
pub fn segment_lattice_count(p: &Point, q: &Point, half_open: bool) -> u64 {
    assert!(p != q, "degenerate segment");
    let (dx, dy) = primitive_direction(p, q);
    // normal (alpha, beta): alpha X + beta Y = k on the line
    let (alpha, beta) = (dy.clone(), -dx.clone());
    let k = Rational::from_integer(alpha.clone()) * &p.x + Rational::from_integer(beta.clone()) * &p.y;
    if !k.is_integer() {
        return 0;
    }
    let k = k.to_integer();
    // particular solution via Bezout: alpha s + beta t = 1
    let e = alpha.extended_gcd(&beta);
    let sign = if e.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
    let (x0, y0) = (&k * &e.x * &sign, &k * &e.y * &sign);
    // general solution (x0 + dx j, y0 + dy j); constrain along a nonzero axis
    let (origin, step, lo, hi) = if !dx.is_zero() {
        (x0, dx, p.x.clone().min(q.x.clone()), p.x.clone().max(q.x.clone()))
    } else {
        (y0, dy, p.y.clone().min(q.y.clone()), p.y.clone().max(q.y.clone()))
    };
    let step = Rational::from_integer(step.abs());
    let origin = Rational::from_integer(origin);
    let jlo = ceil(&((lo - &origin) / &step));
    let jhi = floor(&((hi - &origin) / &step));
    let mut count: BigInt = (jhi - jlo + BigInt::one()).max(BigInt::zero());
    if half_open && q.is_lattice() {
        count -= 1;
    }
    count.to_u64().expect("segment count fits in u64")
}

/// Lattice points on the polygon boundary.
pub fn boundary_count(poly: &PolygonSpec) -> u64 {
    poly.edges().map(|(p, q)| segment_lattice_count(p, q, true)).sum()
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("polygon coordinates"))
}

/// `den · v >= num` for integers `v` exactly when `v >= bound` (or `> bound`).
fn lower_bound(bound: &Rational, strict: bool) -> Result<(i64, i64)> {
    let a = to_i64(bound.denom())?;
    let t = to_i64(bound.numer())?;
    Ok(if strict { (a, t + 1) } else { (a, t) })
}

/// Lattice points of `{xa <= X < xb, ylow <= Y < h(X)}` below a
/// non-horizontal, non-vertical edge, counted with the triangle closed form.
fn triangle_under(left: &Point, right: &Point) -> Result<i128> {
    let (dx, dy) = primitive_direction(left, right);
    debug_assert!(dx.is_positive() && !dy.is_zero());
    // strictly below the line: dx Y - dy X < dx y0 - dy x0
    let k = Rational::from_integer(dx.clone()) * &left.y - Rational::from_integer(dy.clone()) * &left.x;
    let t3 = to_i64(&(ceil(&k) - 1))?;
    let c2 = to_i64(&dx)?;
    let falling = dy.is_negative();
    let (spec, dil) = if falling {
        // X >= xa, Y >= yb, |dy| X + dx Y <= t3
        let (a1, t1) = lower_bound(&left.x, false)?;
        let (a2, t2) = lower_bound(&right.y, false)?;
        let c1 = to_i64(&-dy)?;
        (TriangleSpec::new(a1, a2, c1, c2)?, TriangleDilation::new(t1, t2, t3))
    } else {
        // X' = -X > -xb, Y >= ya, dy X' + dx Y <= t3
        let (a1, t1) = lower_bound(&-right.x.clone(), true)?;
        let (a2, t2) = lower_bound(&left.y, false)?;
        let c1 = to_i64(&dy)?;
        (TriangleSpec::new(a1, a2, c1, c2)?, TriangleDilation::new(t1, t2, t3))
    };
    match spec.validate(&dil) {
        Ok(_) => count_closure_triangle(&spec, &dil),
        Err(Error::InvalidDilation(_)) => Ok(0),
        Err(e) => Err(e),
    }
}

/// The signed sum over edge trapezoids.
fn trapezoid_sum(poly: &PolygonSpec) -> Result<i128> {
    let ymin = poly.vertices.iter().map(|p| floor(&p.y)).min().unwrap();
    let base = big_to_i128(&ymin)? - 1;
    let mut total = 0i128;
    for (p, q) in poly.edges() {
        if p.x == q.x {
            continue;
        }
        let (left, right, sign) = if p.x < q.x { (p, q, -1) } else { (q, p, 1) };
        let columns = big_to_i128(&(ceil(&right.x) - ceil(&left.x)))?;
        let low = left.y.clone().min(right.y.clone());
        let rows = big_to_i128(&ceil(&low))? - base;
        let mut piece = columns * rows;
        if left.y != right.y {
            piece += triangle_under(left, right)?;
        }
        total += sign * piece;
    }
    Ok(total)
}

/// Whether the direction `(ε, 1)` points into the polygon at vertex `i`.
fn vertex_opens_upward(poly: &PolygonSpec, i: usize) -> bool {
    let n = poly.vertices.len();
    let v = &poly.vertices[i];
    let out = poly.vertices[(i + 1) % n].sub(v);
    let back = poly.vertices[(i + n - 1) % n].sub(v);
    // a direction steeper than every non-vertical edge direction at v
    let steep = [&out, &back]
        .iter()
        .filter(|d| !d.0.is_zero())
        .map(|d| (&d.1 / &d.0).abs())
        .fold(Rational::zero(), |m, s| if s > m { s } else { m })
        + int(1);
    let up = (Rational::one(), steep);
    let turn = cross(&out, &back);
    let after_out = cross(&out, &up).is_positive();
    let before_back = cross(&up, &back).is_positive();
    if turn.is_positive() {
        after_out && before_back
    } else if turn.is_negative() {
        after_out || before_back
    } else {
        // straight vertex: interior lies to the left of the outgoing edge
        after_out
    }
}

/// Whether the direction `(ε, 1)` points into the polygon from the interior
/// of edge `p -> q`.
fn edge_opens_upward(p: &Point, q: &Point) -> bool {
    if p.x == q.x {
        q.y < p.y
    } else {
        q.x > p.x
    }
}

fn lattice_points_inside_edge(p: &Point, q: &Point) -> u64 {
    let closed = segment_lattice_count(p, q, false);
    closed - u64::from(p.is_lattice()) - u64::from(q.is_lattice())
}

pub fn count_closure_polygon(poly: &PolygonSpec) -> Result<u64> {
    let mut total = trapezoid_sum(poly)?;
    for (p, q) in poly.edges() {
        if !edge_opens_upward(p, q) {
            total += lattice_points_inside_edge(p, q) as i128;
        }
    }
    for (i, v) in poly.vertices.iter().enumerate() {
        if v.is_lattice() && !vertex_opens_upward(poly, i) {
            total += 1;
        }
    }
    u64::try_from(total).map_err(|_| Error::Internal(format!("negative polygon count {total}")))
}

pub fn count_interior_polygon(poly: &PolygonSpec) -> Result<u64> {
    let closure = count_closure_polygon(poly)?;
    closure
        .checked_sub(boundary_count(poly))
        .ok_or_else(|| Error::Internal("boundary exceeds closure".into()))
}

/// Pick's relation `A = I + B/2 - 1` for lattice polygons.
pub fn picks_check(poly: &PolygonSpec) -> Result<bool> {
    if !poly.is_lattice_polygon() {
        return Err(Error::InvalidPolygon("Pick's theorem needs integer vertices".into()));
    }
    let interior = count_interior_polygon(poly)?;
    let boundary = boundary_count(poly);
    let rhs = int(interior as i128) + Rational::new(BigInt::from(boundary), BigInt::from(2)) - int(1);
    Ok(poly.area() == rhs)
}

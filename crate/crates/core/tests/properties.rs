use latticecount::oracle::{count_closure_bruteforce, count_interior_bruteforce, count_polygon_bruteforce};
use latticecount::polygon::{boundary_count, count_closure_polygon, count_interior_polygon};
use latticecount::quasipoly::{interpolate, Interpolator};
use latticecount::rational::{int, rat};
use latticecount::recursion::Counter;
use latticecount::triangle::{count_closure_triangle, residue_assembly};
use latticecount::{
    DilationVector, Point, PolygonSpec, Polynomial, Quasipolynomial, SimplexSystem,
    TriangleDilation, TriangleSpec,
};
use proptest::prelude::*;

fn system_and_dilation() -> impl Strategy<Value = (SimplexSystem, DilationVector)> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(prop::collection::vec(-4i64..=4, n), n + 1),
                prop::collection::vec(-12i64..=12, n + 1),
            )
        })
        .prop_filter_map("invalid or empty", |(rows, t)| {
            let system = SimplexSystem::new(rows).ok()?;
            let t = DilationVector::new(t);
            system.validate_dilation(&t).ok()?.nonempty.then_some((system, t))
        })
}

fn rational_polygon() -> impl Strategy<Value = PolygonSpec> {
    prop::collection::vec(((-24i128..=24, 1i128..=4), (-24i128..=24, 1i128..=4)), 3..=8)
        .prop_filter_map("not simple", |raw| {
            let mut pts: Vec<(f64, f64, Point)> = raw
                .into_iter()
                .map(|((xn, xd), (yn, yd))| {
                    // keep |coordinate| <= 6
                    let (xn, yn) = (xn.clamp(-6 * xd, 6 * xd), yn.clamp(-6 * yd, 6 * yd));
                    (xn as f64 / xd as f64, yn as f64 / yd as f64, Point::new(rat(xn, xd), rat(yn, yd)))
                })
                .collect();
            let k = pts.len() as f64;
            let cx = pts.iter().map(|p| p.0).sum::<f64>() / k;
            let cy = pts.iter().map(|p| p.1).sum::<f64>() / k;
            pts.sort_by(|p, q| (p.1 - cy).atan2(p.0 - cx).total_cmp(&(q.1 - cy).atan2(q.0 - cx)));
            PolygonSpec::new(pts.into_iter().map(|p| p.2).collect()).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interior_never_exceeds_closure((system, t) in system_and_dilation()) {
        let counter = Counter::new(system).unwrap();
        prop_assert!(counter.count_interior(&t).unwrap() <= counter.count_closure(&t).unwrap());
    }

    #[test]
    fn counts_are_monotone_in_each_coordinate((system, t) in system_and_dilation(), i in 0usize..4) {
        let i = i % t.len();
        let mut bigger = t.0.clone();
        bigger[i] += 1;
        let bigger = DilationVector::new(bigger);
        let counter = Counter::new(system).unwrap();
        prop_assert!(counter.count_closure(&bigger).unwrap() >= counter.count_closure(&t).unwrap());
        prop_assert!(counter.count_interior(&bigger).unwrap() >= counter.count_interior(&t).unwrap());
    }

    #[test]
    fn recursion_matches_oracle((system, t) in system_and_dilation()) {
        let counter = Counter::new(system.clone()).unwrap();
        prop_assert_eq!(counter.count_closure(&t).unwrap(), count_closure_bruteforce(&system, &t).unwrap() as i128);
        prop_assert_eq!(counter.count_interior(&t).unwrap(), count_interior_bruteforce(&system, &t).unwrap() as i128);
        prop_assert_eq!(counter.depth(), system.dim());
    }

    #[test]
    fn actual_vertices_satisfy_the_system((system, t) in system_and_dilation()) {
        let vertices = system.vertices(&t).unwrap();
        prop_assert!(vertices.iter().any(|v| v.actual));
        for v in vertices.iter().filter(|v| v.actual) {
            for (row, &ti) in system.rows().iter().zip(t.as_slice()) {
                let lhs: latticecount::Rational = row.iter().zip(&v.point).map(|(&a, x)| int(a as i128) * x).sum();
                prop_assert!(lhs <= int(ti as i128));
            }
        }
    }

    #[test]
    fn interpolation_inverts_evaluation(
        periods in prop::collection::vec(1u64..=3, 1..=2),
        degree in 0u32..=2,
        seed in prop::collection::vec(-20i128..=20, 64),
    ) {
        let nvars = periods.len();
        let classes: u64 = periods.iter().product();
        let mut coeffs = seed.into_iter().cycle();
        let table: Vec<Polynomial> = (0..classes)
            .map(|_| {
                let mut p = Polynomial::zero(nvars);
                for total in 0..=degree {
                    for first in 0..=total {
                        let exps = if nvars == 1 { vec![total] } else { vec![first, total - first] };
                        if nvars == 1 && first > 0 {
                            continue;
                        }
                        p.add_term(exps, rat(coeffs.next().unwrap(), 3));
                    }
                }
                p
            })
            .collect();
        let q = Quasipolynomial::new(periods.clone(), degree, table).unwrap();
        let fitted = interpolate(|t| q.evaluate(t), periods.clone(), degree).unwrap();
        prop_assert_eq!(&fitted, &q);
        let shifted = Interpolator::new(periods, degree).start(vec![-7; nvars]).interpolate(|t| q.evaluate(t)).unwrap();
        prop_assert_eq!(shifted, q);
    }

    #[test]
    fn triangle_closed_form_matches_residues(
        a1 in 1i64..=8, a2 in 1i64..=8, c1 in 1i64..=9, c2 in 1i64..=9,
        t1 in -30i64..=30, t2 in -30i64..=30, t3 in -30i64..=60,
    ) {
        let Ok(spec) = TriangleSpec::new(a1, a2, c1, c2) else { return Ok(()); };
        let dil = TriangleDilation::new(t1, t2, t3);
        if spec.validate(&dil).is_err() {
            return Ok(());
        }
        let count = count_closure_triangle(&spec, &dil).unwrap();
        prop_assert_eq!(count as u64, count_closure_bruteforce(&spec.simplex_system(), &spec.dilation_vector(&dil)).unwrap());
        prop_assert_eq!(residue_assembly(&spec, &dil), int(count));
    }

    #[test]
    fn polygon_counts_match_oracle(poly in rational_polygon()) {
        let (closure, interior) = count_polygon_bruteforce(&poly).unwrap();
        prop_assert_eq!(count_closure_polygon(&poly).unwrap(), closure);
        prop_assert_eq!(count_interior_polygon(&poly).unwrap(), interior);
    }

    #[test]
    fn polygon_counts_invariant_under_lattice_maps(poly in rational_polygon(), dx in -9i64..=9, dy in -9i64..=9, turns in 0usize..4) {
        let closure = count_closure_polygon(&poly).unwrap();
        let interior = count_interior_polygon(&poly).unwrap();
        let boundary = boundary_count(&poly);
        let mut rotation = [[1, 0], [0, 1]];
        for _ in 0..turns {
            rotation = [[-rotation[1][0], -rotation[1][1]], [rotation[0][0], rotation[0][1]]];
        }
        let moved = poly.map(rotation, (dx, dy)).unwrap();
        prop_assert_eq!(count_closure_polygon(&moved).unwrap(), closure);
        prop_assert_eq!(count_interior_polygon(&moved).unwrap(), interior);
        prop_assert_eq!(boundary_count(&moved), boundary);
        let sheared = poly.map([[1, 1], [0, 1]], (0, 0)).unwrap();
        prop_assert_eq!(count_closure_polygon(&sheared).unwrap(), closure);
    }
}

#[test]
fn standard_triangle_ehrhart_leading_coefficient_is_its_area() {
    let standard = SimplexSystem::new(vec![vec![-1, 0], vec![0, -1], vec![1, 1]]).unwrap();
    let counter = Counter::new(standard).unwrap();
    let q = interpolate(
        |s| Ok(int(counter.count_closure(&DilationVector::scaled(&[0, 0, 1], s[0]))?)),
        vec![1],
        2,
    )
    .unwrap();
    let p = &q.table()[0];
    assert_eq!(p.coefficient(&[2]), rat(1, 2));
    assert_eq!(p.coefficient(&[1]), rat(3, 2));
    assert_eq!(p.coefficient(&[0]), int(1));
}

#[test]
fn rational_triangle_has_period_two_ehrhart_quasipolynomial() {
    // conv{(0,0), (1/2,0), (0,1/2)}: x, y >= 0, 2x + 2y <= s
    let half = SimplexSystem::new(vec![vec![-1, 0], vec![0, -1], vec![2, 2]]).unwrap();
    let counter = Counter::new(half).unwrap();
    let q = interpolate(
        |s| Ok(int(counter.count_closure(&DilationVector::scaled(&[0, 0, 1], s[0]))?)),
        vec![2],
        2,
    )
    .unwrap();
    for s in 0..40i64 {
        let k = (s / 2) as i128;
        assert_eq!(q.evaluate(&[s]).unwrap(), int((k + 1) * (k + 2) / 2));
    }
}
